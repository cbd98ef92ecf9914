//! Block colorings behind the lower bounds, and their certification.
//!
//! Both constructions split the vertices into blocks, color every edge
//! inside a block red and every edge between blocks blue. Blocks are laid
//! out in descending size with consecutive labels.

use std::fmt::Write as _;

use thiserror::Error;

use crate::formulas::{chromatic_data, gj_lower_p, CliqueUnion, ChromaticData, FormulaError, ForestSpec};
use crate::graph::{Color, Embedding, TwoColoring, MAX_FAST_ORDER};
use crate::search::{embed_red_forest, find_blue_cliques};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("construction needs {0} vertices, more than the supported 64")]
    TooLarge(usize),
}

/// Red cliques on the given blocks, blue between them. Empty blocks are
/// dropped; the rest are sorted by descending size.
pub fn block_coloring(blocks: &[usize]) -> Result<TwoColoring, ConstructionError> {
    let blocks = normalize(blocks);
    let n: usize = blocks.iter().sum();
    if n > MAX_FAST_ORDER {
        return Err(ConstructionError::TooLarge(n));
    }
    let mut owner = Vec::with_capacity(n);
    for (b, &size) in blocks.iter().enumerate() {
        owner.extend(std::iter::repeat_n(b, size));
    }
    Ok(TwoColoring::from_fn(n, |i, j| {
        if owner[i] == owner[j] {
            Color::Red
        } else {
            Color::Blue
        }
    }))
}

fn normalize(blocks: &[usize]) -> Vec<usize> {
    let mut b: Vec<usize> = blocks.iter().copied().filter(|&s| s > 0).collect();
    b.sort_by(|x, y| y.cmp(x));
    b
}

/// Blocks of the connected-graph construction: `χ - 1` blocks of
/// `v(G) - 1` vertices and one block of `s - 1`.
pub fn burr_blocks(v_g: usize, h: &CliqueUnion) -> Result<Vec<usize>, ConstructionError> {
    let ChromaticData { chi, s } = chromatic_data(h);
    if v_g < s {
        return Err(FormulaError::SurplusExceedsOrder {
            order: v_g,
            surplus: s,
        }
        .into());
    }
    let mut blocks = vec![v_g - 1; chi - 1];
    blocks.push(s - 1);
    Ok(normalize(&blocks))
}

pub fn burr_coloring(v_g: usize, h: &CliqueUnion) -> Result<TwoColoring, ConstructionError> {
    block_coloring(&burr_blocks(v_g, h)?)
}

/// Blocks of the forest construction read off the maximizing order `j_0`:
/// `χ - 2` blocks of `j_0 - 1`, one block holding all but one vertex of the
/// components of order `>= j_0`, and one block of `s - 1`.
pub fn gj_blocks(f: &ForestSpec, h: &CliqueUnion) -> Result<Vec<usize>, ConstructionError> {
    let ChromaticData { chi, s } = chromatic_data(h);
    if let Some(t) = f.components().iter().find(|t| t.order() < s) {
        return Err(FormulaError::SurplusExceedsOrder {
            order: t.order(),
            surplus: s,
        }
        .into());
    }
    let (_, j0) = gj_lower_p(f, h);
    let mut blocks = vec![f.tail_mass(j0) - 1];
    blocks.extend(std::iter::repeat_n(j0 - 1, chi - 2));
    blocks.push(s - 1);
    Ok(normalize(&blocks))
}

pub fn gj_coloring(f: &ForestSpec, h: &CliqueUnion) -> Result<TwoColoring, ConstructionError> {
    block_coloring(&gj_blocks(f, h)?)
}

/// Human-readable layout of a block coloring.
pub fn block_summary(blocks: &[usize]) -> String {
    let mut s = String::new();
    let mut start = 0;
    for (i, &size) in blocks.iter().enumerate() {
        let _ = writeln!(
            s,
            "block {i}: vertices {start}..{} ({size}), red K_{size}",
            start + size - 1
        );
        start += size;
    }
    let _ = writeln!(s, "all {} edges between blocks blue", cross_edges(blocks));
    s
}

fn cross_edges(blocks: &[usize]) -> usize {
    let n: usize = blocks.iter().sum();
    let inside: usize = blocks.iter().map(|&b| b * b.saturating_sub(1) / 2).sum();
    n * n.saturating_sub(1) / 2 - inside
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertMethod {
    /// Both absences established by complete backtracking on this coloring.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalReport {
    pub coloring: TwoColoring,
    /// A red copy of the forest, when one was found.
    pub red: Option<Embedding>,
    /// A blue copy of the clique union, when one was found.
    pub blue: Option<Embedding>,
    pub certified: bool,
    pub method: CertMethod,
}

impl ExtremalReport {
    pub fn no_red(&self) -> bool {
        self.red.is_none()
    }

    pub fn no_blue(&self) -> bool {
        self.blue.is_none()
    }

    pub fn to_text(&self) -> String {
        let yes_no = |b: bool| if b { "confirmed" } else { "FAILED" };
        format!(
            "order: {}\nno red forest: {}\nno blue target: {}\ncertified: {}\n",
            self.coloring.order(),
            yes_no(self.no_red()),
            yes_no(self.no_blue()),
            self.certified
        )
    }
}

/// Certifies that `c` has neither a red `f` nor a blue `h`.
pub fn verify_extremal(c: &TwoColoring, f: &ForestSpec, h: &CliqueUnion) -> ExtremalReport {
    let (red, blue) = rayon::join(|| embed_red_forest(c, f), || find_blue_cliques(c, h));
    ExtremalReport {
        coloring: c.clone(),
        certified: red.is_none() && blue.is_none(),
        red,
        blue,
        method: CertMethod::Exhaustive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::color_subgraph;
    use crate::tree::Tree;

    fn forest(orders: &[usize]) -> ForestSpec {
        ForestSpec::new(orders.iter().map(|&n| Tree::path(n)).collect()).unwrap()
    }

    #[test]
    fn burr_examples() {
        let two_k2 = CliqueUnion::new(vec![2, 2]).unwrap();
        let c = burr_coloring(3, &two_k2).unwrap();
        assert_eq!(c.order(), 3);
        assert_eq!(c.to_rb_string(), "RBB");
        assert!(verify_extremal(&c, &forest(&[3]), &two_k2).certified);

        let c = burr_coloring(3, &CliqueUnion::clique(3)).unwrap();
        assert_eq!(c.order(), 4);
        assert_eq!(burr_blocks(3, &CliqueUnion::clique(3)).unwrap(), vec![2, 2]);
        assert!(verify_extremal(&c, &forest(&[3]), &CliqueUnion::clique(3)).certified);

        let c = burr_coloring(2, &CliqueUnion::clique(2)).unwrap();
        assert_eq!(c.order(), 1);

        assert!(matches!(
            burr_coloring(1, &two_k2),
            Err(ConstructionError::Formula(FormulaError::SurplusExceedsOrder { .. }))
        ));
    }

    #[test]
    fn gj_examples() {
        let k3 = CliqueUnion::clique(3);
        assert_eq!(gj_blocks(&forest(&[3, 4]), &k3).unwrap(), vec![6, 2]);
        let c = gj_coloring(&forest(&[3, 4]), &k3).unwrap();
        assert_eq!(c.order(), 8);
        assert!(verify_extremal(&c, &forest(&[3, 4]), &k3).certified);

        assert_eq!(gj_blocks(&forest(&[3, 3]), &k3).unwrap(), vec![5, 2]);
        assert!(verify_extremal(&gj_coloring(&forest(&[3, 3]), &k3).unwrap(), &forest(&[3, 3]), &k3).certified);
    }

    #[test]
    fn gj_reduces_to_burr() {
        for n in 1..7 {
            for sizes in [vec![2], vec![3], vec![3, 2], vec![3, 3], vec![4, 4, 2]] {
                let h = CliqueUnion::new(sizes).unwrap();
                if n < h.chromatic().s {
                    continue;
                }
                let f = ForestSpec::single(Tree::star(n));
                assert_eq!(gj_blocks(&f, &h).unwrap(), burr_blocks(n, &h).unwrap());
            }
        }
    }

    #[test]
    fn burr_structure() {
        for n in 2..7 {
            for sizes in [vec![2], vec![3], vec![3, 2], vec![2, 2], vec![4, 4]] {
                let h = CliqueUnion::new(sizes).unwrap();
                if n < h.chromatic().s {
                    continue;
                }
                let c = burr_coloring(n, &h).unwrap();
                let red = color_subgraph(&c, Color::Red);
                assert!(red.components().iter().all(|comp| comp.len() < n));
            }
        }
    }

    #[test]
    fn uncertified_coloring_is_reported() {
        let c = TwoColoring::uniform(5, Color::Red);
        let r = verify_extremal(&c, &forest(&[3]), &CliqueUnion::clique(2));
        assert!(!r.certified);
        assert!(r.red.is_some());
        assert!(r.to_text().contains("no red forest: FAILED"));
    }

    #[test]
    fn summary_lists_blocks() {
        let s = block_summary(&[6, 2]);
        assert!(s.contains("block 0: vertices 0..5 (6)"));
        assert!(s.contains("block 1: vertices 6..7 (2)"));
        assert!(s.contains("12 edges between blocks"));
    }
}
