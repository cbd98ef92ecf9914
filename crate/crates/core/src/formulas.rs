//! Chromatic data of clique unions and the closed-form Ramsey values for
//! trees and forests against them.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("order {order} is below the chromatic surplus {surplus}")]
    SurplusExceedsOrder { order: usize, surplus: usize },
    #[error("no closed form for {0}: only one or two cliques are supported")]
    UnsupportedTarget(CliqueUnion),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no component value supplied for order {0}")]
    MissingComponentValue(usize),
    #[error("clique union needs at least one clique of size >= 2")]
    BadCliqueUnion,
    #[error("forest has no components")]
    EmptyForest,
}

/// `H` as a disjoint union of cliques; sizes kept in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliqueUnion {
    sizes: Vec<usize>,
}

impl CliqueUnion {
    pub fn new(mut sizes: Vec<usize>) -> Result<Self, FormulaError> {
        if sizes.is_empty() || sizes.iter().any(|&s| s < 2) {
            return Err(FormulaError::BadCliqueUnion);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CliqueUnion { sizes })
    }

    pub fn clique(m: usize) -> Self {
        CliqueUnion::new(vec![m]).expect("m >= 2")
    }

    pub fn pair(m: usize, l: usize) -> Self {
        CliqueUnion::new(vec![m, l]).expect("sizes >= 2")
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// The union as a graph; cliques occupy consecutive labels in
    /// descending size order.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::empty(self.order());
        let mut off = 0;
        for &s in &self.sizes {
            for i in off..off + s {
                for j in i + 1..off + s {
                    g.add_edge(i, j);
                }
            }
            off += s;
        }
        g
    }

    pub fn chromatic(&self) -> ChromaticData {
        chromatic_data(self)
    }

    /// Which of the supported shapes this union has.
    pub fn kind(&self) -> Result<TargetKind, FormulaError> {
        match self.sizes[..] {
            [m] => Ok(TargetKind::Clique(m)),
            [m, l] if m == l => Ok(TargetKind::TwoCliques(m)),
            [m, l] => Ok(TargetKind::CliquePair(m, l)),
            _ => Err(FormulaError::UnsupportedTarget(self.clone())),
        }
    }
}

impl fmt::Display for CliqueUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.sizes.len() {
            let s = self.sizes[i];
            let run = self.sizes[i..].iter().take_while(|&&x| x == s).count();
            if !first {
                f.write_str("+")?;
            }
            if run > 1 {
                write!(f, "{run}")?;
            }
            write!(f, "K{s}")?;
            first = false;
            i += run;
        }
        Ok(())
    }
}

/// The clique unions with a closed-form Ramsey value for trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    /// `K_m`
    Clique(usize),
    /// `2K_m`
    TwoCliques(usize),
    /// `K_m ∪ K_l` with `m > l`
    CliquePair(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChromaticData {
    pub chi: usize,
    pub s: usize,
}

/// `χ` is the largest clique; every largest clique needs one vertex in
/// each color class, so the smallest class has as many vertices as there
/// are largest cliques.
pub fn chromatic_data(h: &CliqueUnion) -> ChromaticData {
    let chi = h.sizes[0];
    let s = h.sizes.iter().take_while(|&&x| x == chi).count();
    ChromaticData { chi, s }
}

/// Burr's lower bound `(v(G) - 1)(χ(H) - 1) + s(H)`.
pub fn burr_lower(v_g: usize, h: &CliqueUnion) -> Result<usize, FormulaError> {
    let ChromaticData { chi, s } = chromatic_data(h);
    if v_g < s {
        return Err(FormulaError::SurplusExceedsOrder {
            order: v_g,
            surplus: s,
        });
    }
    Ok((v_g - 1) * (chi - 1) + s)
}

/// A forest given by its tree components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestSpec {
    components: Vec<Tree>,
}

impl ForestSpec {
    pub fn new(components: Vec<Tree>) -> Result<Self, FormulaError> {
        if components.is_empty() {
            return Err(FormulaError::EmptyForest);
        }
        Ok(ForestSpec { components })
    }

    pub fn single(t: Tree) -> Self {
        ForestSpec {
            components: vec![t],
        }
    }

    pub fn components(&self) -> &[Tree] {
        &self.components
    }

    /// `k_i`: number of components of each order, keyed by order.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut k = BTreeMap::new();
        for t in &self.components {
            *k.entry(t.order()).or_insert(0) += 1;
        }
        k
    }

    /// The set `I` of component orders, ascending.
    pub fn orders(&self) -> Vec<usize> {
        self.counts().into_keys().collect()
    }

    /// `n(F)`, the largest component order.
    pub fn max_order(&self) -> usize {
        self.components.iter().map(Tree::order).max().unwrap()
    }

    pub fn order(&self) -> usize {
        self.components.iter().map(Tree::order).sum()
    }

    /// Disjoint union of the components in their listed order.
    pub fn graph(&self) -> Graph {
        self.components
            .iter()
            .skip(1)
            .fold(self.components[0].graph().clone(), |g, t| {
                g.disjoint_union(t.graph())
            })
    }

    /// Vertex offset of each component inside [`ForestSpec::graph`].
    pub fn offsets(&self) -> Vec<usize> {
        self.components
            .iter()
            .scan(0, |acc, t| {
                let o = *acc;
                *acc += t.order();
                Some(o)
            })
            .collect()
    }

    /// `Σ_{i >= j} i·k_i`: vertices in components of order at least `j`.
    pub fn tail_mass(&self, j: usize) -> usize {
        self.components
            .iter()
            .map(Tree::order)
            .filter(|&o| o >= j)
            .sum()
    }
}

/// The lower bound `p` together with the largest maximizing order `j_0`.
pub fn gj_lower_p(f: &ForestSpec, h: &CliqueUnion) -> (usize, usize) {
    let ChromaticData { chi, s } = chromatic_data(h);
    let mut best = (0, 0);
    for j in f.orders() {
        let val = (j - 1) * (chi - 2) + f.tail_mass(j);
        if val >= best.0 {
            best = (val, j);
        }
    }
    (best.0 + s - 1, best.1)
}

/// The disjoint-union upper bound from per-order component values:
/// `max_j { value(j) + Σ_{i >= j} i·k_i - j }`.
pub fn union_upper(
    f: &ForestSpec,
    ramsey_of_component: impl Fn(usize) -> Option<usize>,
) -> Result<usize, FormulaError> {
    f.orders()
        .into_iter()
        .map(|j| {
            let r = ramsey_of_component(j).ok_or(FormulaError::MissingComponentValue(j))?;
            Ok(r + f.tail_mass(j) - j)
        })
        .try_fold(0, |acc, v: Result<usize, _>| Ok(acc.max(v?)))
}

/// `β = R - (v(F) - 1)(χ - 1) - s`; zero exactly when the component is good.
pub fn beta(value: usize, v_f: usize, h: &CliqueUnion) -> i64 {
    let ChromaticData { chi, s } = chromatic_data(h);
    value as i64 - ((v_f as i64 - 1) * (chi as i64 - 1) + s as i64)
}

fn check_component(order: usize, h: &CliqueUnion) -> Result<TargetKind, FormulaError> {
    let kind = h.kind()?;
    let s = chromatic_data(h).s;
    if order < s {
        return Err(FormulaError::SurplusExceedsOrder { order, surplus: s });
    }
    if !matches!(kind, TargetKind::Clique(_)) && order < 3 {
        return Err(FormulaError::PreconditionViolated(format!(
            "tree of order {order} against {h}: two-clique targets need order >= 3"
        )));
    }
    Ok(kind)
}

/// `R(T_n, H)` for a single tree on `n` vertices.
pub fn tree_value(n: usize, h: &CliqueUnion) -> Result<usize, FormulaError> {
    let v = match check_component(n, h)? {
        TargetKind::Clique(m) => (n - 1) * (m - 1) + 1,
        TargetKind::TwoCliques(m) => (n - 1) * (m - 1) + 2,
        TargetKind::CliquePair(m, _) => (n - 1) * (m - 1) + 1,
    };
    Ok(v)
}

/// The Ramsey number of a forest against a one- or two-clique union.
pub fn ramsey_value(f: &ForestSpec, h: &CliqueUnion) -> Result<usize, FormulaError> {
    for t in f.components() {
        check_component(t.order(), h)?;
    }
    if let [t] = f.components() {
        return tree_value(t.order(), h);
    }
    Ok(gj_lower_p(f, h).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest(orders: &[usize]) -> ForestSpec {
        ForestSpec::new(orders.iter().map(|&n| Tree::path(n)).collect()).unwrap()
    }

    /// Smallest color class over all proper colorings with the fewest colors.
    fn brute_surplus(h: &CliqueUnion) -> (usize, usize) {
        let g = h.graph();
        let n = g.order();
        for k in 1..=n {
            let mut best = None;
            let total = k.pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let col: Vec<usize> = (0..n)
                    .map(|_| {
                        let x = c % k;
                        c /= k;
                        x
                    })
                    .collect();
                if g.edges().iter().any(|&(a, b)| col[a] == col[b]) {
                    continue;
                }
                let mut sizes = vec![0; k];
                for &x in &col {
                    sizes[x] += 1;
                }
                if sizes.contains(&0) {
                    continue;
                }
                let m = *sizes.iter().min().unwrap();
                best = Some(best.map_or(m, |b: usize| b.min(m)));
            }
            if let Some(s) = best {
                return (k, s);
            }
        }
        unreachable!()
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(
            chromatic_data(&CliqueUnion::pair(3, 2)),
            ChromaticData { chi: 3, s: 1 }
        );
        let two_k2 = CliqueUnion::new(vec![2, 2]).unwrap();
        assert_eq!(chromatic_data(&two_k2), ChromaticData { chi: 2, s: 2 });
        assert_eq!(brute_surplus(&two_k2), (2, 2));
        let three_k4 = CliqueUnion::new(vec![4, 4, 4]).unwrap();
        assert_eq!(chromatic_data(&three_k4), ChromaticData { chi: 4, s: 3 });
        assert_eq!(brute_surplus(&three_k4), (4, 3));
    }

    #[test]
    fn chromatic_matches_brute_force() {
        for sizes in [vec![2], vec![3], vec![3, 2], vec![3, 3], vec![2, 2, 2], vec![4, 2], vec![3, 3, 2]] {
            let h = CliqueUnion::new(sizes).unwrap();
            let d = chromatic_data(&h);
            assert_eq!(brute_surplus(&h), (d.chi, d.s), "{h}");
        }
    }

    #[test]
    fn burr_examples() {
        assert_eq!(burr_lower(5, &CliqueUnion::clique(3)), Ok(9));
        let two_k2 = CliqueUnion::new(vec![2, 2]).unwrap();
        assert_eq!(burr_lower(3, &two_k2), Ok(4));
        assert_eq!(
            burr_lower(1, &two_k2),
            Err(FormulaError::SurplusExceedsOrder { order: 1, surplus: 2 })
        );
    }

    #[test]
    fn ramsey_value_examples() {
        let two_k2 = CliqueUnion::new(vec![2, 2]).unwrap();
        assert_eq!(ramsey_value(&forest(&[4]), &two_k2), Ok(5));
        assert_eq!(ramsey_value(&forest(&[5]), &CliqueUnion::pair(3, 2)), Ok(9));
        assert_eq!(ramsey_value(&forest(&[3, 4]), &CliqueUnion::clique(3)), Ok(9));
        assert!(matches!(
            ramsey_value(&forest(&[4]), &CliqueUnion::new(vec![2, 2, 2]).unwrap()),
            Err(FormulaError::UnsupportedTarget(_))
        ));
        assert!(matches!(
            ramsey_value(&forest(&[2, 4]), &two_k2),
            Err(FormulaError::PreconditionViolated(_))
        ));
        // K_m ∪ K_m goes through the 2K_m formula
        assert_eq!(ramsey_value(&forest(&[4]), &CliqueUnion::pair(3, 3)), Ok(3 * 2 + 2));
    }

    #[test]
    fn gj_examples() {
        let k3 = CliqueUnion::clique(3);
        assert_eq!(gj_lower_p(&forest(&[3, 4]), &k3), (9, 3));
        assert_eq!(gj_lower_p(&forest(&[3, 3]), &k3), (8, 3));
        assert_eq!(gj_lower_p(&forest(&[4]), &k3), (7, 4));
    }

    #[test]
    fn gj_picks_largest_maximizer() {
        // j = 2: 1*2 + 2 + 4 = 8; j = 4: 3*2 + 4 = 10
        assert_eq!(gj_lower_p(&forest(&[2, 4]), &CliqueUnion::clique(4)), (10, 4));
        // tie against K_3: j = 2 gives 1 + 6, j = 4 gives 3 + 4
        assert_eq!(gj_lower_p(&forest(&[2, 4]), &CliqueUnion::clique(3)), (7, 4));
        assert_eq!(gj_lower_p(&forest(&[3, 4]), &CliqueUnion::clique(2)), (7, 3));
    }

    #[test]
    fn union_upper_examples() {
        let f = forest(&[3, 4]);
        let vals = |j| match j {
            3 => Some(5),
            4 => Some(7),
            _ => None,
        };
        assert_eq!(union_upper(&f, vals), Ok(9));
        assert_eq!(union_upper(&forest(&[3, 3]), |_| Some(5)), Ok(8));
        assert_eq!(union_upper(&forest(&[6]), |_| Some(11)), Ok(11));
        assert_eq!(
            union_upper(&f, |j| (j == 3).then_some(5)),
            Err(FormulaError::MissingComponentValue(4))
        );
    }

    #[test]
    fn beta_examples() {
        let k3 = CliqueUnion::clique(3);
        let two_k2 = CliqueUnion::new(vec![2, 2]).unwrap();
        assert_eq!(beta(7, 4, &k3), 0);
        for n in 2..10 {
            assert_eq!(beta(n + 2, n, &two_k2), 1);
        }
        assert_eq!(beta(4, 3, &two_k2), 0);
    }

    #[test]
    fn display_and_kind() {
        assert_eq!(CliqueUnion::new(vec![2, 3]).unwrap().to_string(), "K3+K2");
        assert_eq!(CliqueUnion::new(vec![4, 4]).unwrap().to_string(), "2K4");
        assert_eq!(CliqueUnion::pair(3, 3).kind(), Ok(TargetKind::TwoCliques(3)));
        assert_eq!(CliqueUnion::pair(4, 2).kind(), Ok(TargetKind::CliquePair(4, 2)));
        assert!(CliqueUnion::new(vec![1]).is_err());
        assert!(CliqueUnion::new(vec![]).is_err());
    }
}
