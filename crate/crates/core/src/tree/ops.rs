use std::fmt;

use super::{Tree, TreeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    Stretch,
    Expand,
}

/// One rewriting step.
///
/// For a Stretch, `anchor` is the leaf `a` that receives the new vertex;
/// for an Expand it is the vertex `u`. In both cases `deleted` is the leaf
/// `b` that is removed, and the new vertex reuses the label `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OpStep {
    pub kind: OpKind,
    pub anchor: usize,
    pub deleted: usize,
}

impl OpStep {
    pub fn stretch(a: usize, b: usize) -> Self {
        OpStep {
            kind: OpKind::Stretch,
            anchor: a,
            deleted: b,
        }
    }

    pub fn expand(u: usize, b: usize) -> Self {
        OpStep {
            kind: OpKind::Expand,
            anchor: u,
            deleted: b,
        }
    }

    /// Label carried by the vertex the step adds.
    pub fn added(&self) -> usize {
        self.deleted
    }

    pub fn apply(&self, t: &Tree) -> Result<Tree, TreeError> {
        match self.kind {
            OpKind::Stretch => stretch(t, self.anchor, self.deleted),
            OpKind::Expand => expand(t, self.anchor, self.deleted),
        }
    }

    pub fn relabeled(&self, map: &[usize]) -> OpStep {
        OpStep {
            kind: self.kind,
            anchor: map[self.anchor],
            deleted: map[self.deleted],
        }
    }
}

impl fmt::Display for OpStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            OpKind::Stretch => 'S',
            OpKind::Expand => 'E',
        };
        write!(f, "{k} {} {}", self.anchor, self.deleted)
    }
}

/// An ordered list of steps; serialized one step per line.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Plan {
    pub steps: Vec<OpStep>,
}

impl Plan {
    pub fn new(steps: Vec<OpStep>) -> Self {
        Plan { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn only(&self, kind: OpKind) -> bool {
        self.steps.iter().all(|s| s.kind == kind)
    }

    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }

    pub fn parse(text: &str) -> Result<Plan, String> {
        let mut steps = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<_> = line.split_whitespace().collect();
            let bad = || format!("line {}: malformed step {line:?}", i + 1);
            let [k, a, b] = parts[..] else {
                return Err(bad());
            };
            let a = a.parse().map_err(|_| bad())?;
            let b = b.parse().map_err(|_| bad())?;
            steps.push(match k {
                "S" => OpStep::stretch(a, b),
                "E" => OpStep::expand(a, b),
                _ => return Err(bad()),
            });
        }
        Ok(Plan { steps })
    }
}

fn check_vertex(t: &Tree, v: usize) -> Result<(), TreeError> {
    if v >= t.order() {
        Err(TreeError::VertexOutOfRange(v))
    } else {
        Ok(())
    }
}

/// Moves leaf `b` so that it hangs from leaf `a`.
pub fn stretch(t: &Tree, a: usize, b: usize) -> Result<Tree, TreeError> {
    let n = t.order();
    if n < 3 {
        return Err(TreeError::TooSmall {
            op: "stretch",
            n,
            min: 3,
        });
    }
    check_vertex(t, a)?;
    check_vertex(t, b)?;
    if a == b {
        return Err(TreeError::SameVertex(a));
    }
    for v in [a, b] {
        if !t.is_leaf(v) {
            return Err(TreeError::NotALeaf(v));
        }
    }
    Ok(rewire(t, b, a))
}

/// Moves a leaf `b` outside `N[u]` so that it hangs from `u`, where `u`
/// has degree `2..=n-2`, one non-leaf neighbor and otherwise leaves.
pub fn expand(t: &Tree, u: usize, b: usize) -> Result<Tree, TreeError> {
    let n = t.order();
    if n < 4 {
        return Err(TreeError::TooSmall {
            op: "expand",
            n,
            min: 4,
        });
    }
    check_vertex(t, u)?;
    check_vertex(t, b)?;
    if u == b {
        return Err(TreeError::SameVertex(u));
    }
    let d = t.degree(u);
    if !(2..=n - 2).contains(&d) {
        return Err(TreeError::DegreeOutOfRange { u, d, max: n - 2 });
    }
    let non_leaves = t.neighbors(u).filter(|&z| !t.is_leaf(z)).count();
    if non_leaves != 1 {
        return Err(TreeError::NeighborShapeViolated { u });
    }
    if !t.is_leaf(b) || t.graph().has_edge(u, b) {
        return Err(TreeError::BNotEligible { u, b });
    }
    Ok(rewire(t, b, u))
}

fn rewire(t: &Tree, leaf: usize, new_parent: usize) -> Tree {
    let old = t.neighbors(leaf).next().expect("leaf has a neighbor");
    let mut out = t.clone();
    let g = out.raw_mut();
    g.remove_edge(leaf, old);
    g.add_edge(leaf, new_parent);
    debug_assert!(g.is_connected() && g.edge_count() + 1 == g.order());
    out
}

/// Replays `p` on `t`, reporting the first step whose precondition fails.
pub fn apply_plan(t: &Tree, p: &Plan) -> Result<Tree, TreeError> {
    let mut cur = t.clone();
    for (index, step) in p.steps.iter().enumerate() {
        cur = step.apply(&cur).map_err(|cause| TreeError::InvalidStep {
            index,
            cause: Box::new(cause),
        })?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::is_isomorphic;

    #[test]
    fn stretch_examples() {
        let p3 = Tree::path(3);
        let s = stretch(&p3, 0, 2).unwrap();
        assert_eq!(s.edges(), vec![(0, 1), (0, 2)]);
        assert!(is_isomorphic(&s, &p3));

        let star = Tree::star(4);
        let s = stretch(&star, 1, 3).unwrap();
        assert_eq!(s.edges(), vec![(0, 1), (0, 2), (1, 3)]);
        assert!(is_isomorphic(&s, &Tree::path(4)));

        let p4 = Tree::path(4);
        assert!(is_isomorphic(&stretch(&p4, 0, 3).unwrap(), &p4));
    }

    #[test]
    fn stretch_errors() {
        let p4 = Tree::path(4);
        assert_eq!(stretch(&p4, 1, 3), Err(TreeError::NotALeaf(1)));
        assert_eq!(stretch(&p4, 0, 0), Err(TreeError::SameVertex(0)));
        assert!(matches!(
            stretch(&Tree::path(2), 0, 1),
            Err(TreeError::TooSmall { .. })
        ));
        assert_eq!(stretch(&p4, 0, 9), Err(TreeError::VertexOutOfRange(9)));
    }

    #[test]
    fn expand_examples() {
        let p4 = Tree::path(4);
        let e = expand(&p4, 1, 3).unwrap();
        assert!(is_isomorphic(&e, &Tree::star(4)));
        assert_eq!(e.degree(1), 3);

        // u = 0 with leaves 1, 2 and the path 0 - 3 - 4 - 5
        let spider = Tree::from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]).unwrap();
        let e = expand(&spider, 0, 5).unwrap();
        assert_eq!(e.degree(0), 4);

        assert_eq!(expand(&p4, 1, 0), Err(TreeError::BNotEligible { u: 1, b: 0 }));
    }

    #[test]
    fn expand_errors() {
        let p5 = Tree::path(5);
        // 2 has two non-leaf neighbors
        assert_eq!(
            expand(&p5, 2, 4),
            Err(TreeError::NeighborShapeViolated { u: 2 })
        );
        assert!(matches!(
            expand(&p5, 0, 4),
            Err(TreeError::DegreeOutOfRange { d: 1, .. })
        ));
        assert!(matches!(
            expand(&Tree::star(5), 0, 1),
            Err(TreeError::DegreeOutOfRange { d: 4, .. })
        ));
        assert!(matches!(
            expand(&Tree::path(3), 1, 0),
            Err(TreeError::TooSmall { .. })
        ));
        // b not a leaf
        assert_eq!(expand(&p5, 1, 3), Err(TreeError::BNotEligible { u: 1, b: 3 }));
    }

    #[test]
    fn apply_plan_examples() {
        let t = Tree::star(5);
        assert_eq!(apply_plan(&t, &Plan::default()).unwrap(), t);

        let p = Plan::new(vec![OpStep::expand(1, 3)]);
        assert!(is_isomorphic(&apply_plan(&Tree::path(4), &p).unwrap(), &Tree::star(4)));

        let p = Plan::new(vec![OpStep::stretch(0, 2), OpStep::expand(1, 0)]);
        match apply_plan(&Tree::path(3), &p) {
            Err(TreeError::InvalidStep { index: 1, cause }) => {
                assert!(matches!(*cause, TreeError::TooSmall { .. }))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn plan_text_round_trip() {
        let p = Plan::new(vec![OpStep::stretch(0, 4), OpStep::expand(2, 3)]);
        assert_eq!(p.to_text(), "S 0 4\nE 2 3\n");
        assert_eq!(Plan::parse(&p.to_text()).unwrap(), p);
        assert!(Plan::parse("X 1 2").is_err());
        assert!(Plan::parse("S 1").is_err());
    }
}
