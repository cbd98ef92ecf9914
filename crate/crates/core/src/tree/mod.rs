//! Trees and the Stretch/Expand rewriting calculus.
//!
//! Any tree on `n` vertices can be rewritten into any other by a sequence
//! of Stretch and Expand steps; [`plan_between`] produces such a sequence
//! and [`apply_plan`] replays it with every precondition checked.

mod canon;
mod ops;
mod plan;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub use canon::{
    canonical_form, canonical_tree_representatives, from_prufer, is_isomorphic, isomorphism,
    labeled_trees,
};
pub use ops::{apply_plan, expand, stretch, OpKind, OpStep, Plan};
pub use plan::{longest_path, plan_between, plan_from_path, plan_to_path};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("graph on {n} vertices with {edges} edges is not a tree")]
    NotATree { n: usize, edges: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("anchor and deleted vertex coincide ({0})")]
    SameVertex(usize),
    #[error("{op} needs at least {min} vertices, tree has {n}")]
    TooSmall { op: &'static str, n: usize, min: usize },
    #[error("expand at {u}: degree {d} outside [2, {max}]")]
    DegreeOutOfRange { u: usize, d: usize, max: usize },
    #[error("expand at {u}: neighbors must be exactly one non-leaf plus leaves")]
    NeighborShapeViolated { u: usize },
    #[error("expand at {u}: {b} is not a leaf outside N[{u}]")]
    BNotEligible { u: usize, b: usize },
    #[error("trees have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("step {index}: {cause}")]
    InvalidStep { index: usize, cause: Box<TreeError> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A connected acyclic graph on `n >= 1` vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    g: Graph,
}

impl Tree {
    pub fn new(g: Graph) -> Result<Tree, TreeError> {
        let n = g.order();
        let edges = g.edge_count();
        if n == 0 || edges != n - 1 || !g.is_connected() {
            return Err(TreeError::NotATree { n, edges });
        }
        Ok(Tree { g })
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Tree, TreeError> {
        let edges: Vec<_> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(TreeError::VertexOutOfRange(a.max(b)));
        }
        Tree::new(Graph::from_edges(n, edges))
    }

    pub fn parse(text: &str) -> Result<Tree, TreeError> {
        Tree::new(crate::graph::parse_graph(text)?)
    }

    /// `P_n` labeled `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Tree {
        assert!(n >= 1);
        Tree {
            g: Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
        }
    }

    /// `K_{1, n-1}` centered at 0.
    pub fn star(n: usize) -> Tree {
        assert!(n >= 1);
        Tree {
            g: Graph::from_edges(n, (1..n).map(|i| (0, i))),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.g.order()
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn into_graph(self) -> Graph {
        self.g
    }

    pub fn degree(&self, v: usize) -> usize {
        self.g.degree(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.neighbors(v)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.g.degree(v) == 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn is_path(&self) -> bool {
        (0..self.order()).all(|v| self.degree(v) <= 2)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.g.edges()
    }

    /// Tree induced on `keep` (relabeled by position), if it is connected.
    pub fn subtree(&self, keep: &[usize]) -> Option<Tree> {
        Tree::new(self.g.induced(keep)).ok()
    }

    /// Distances from `s`, `usize::MAX` never appears since trees are connected.
    pub fn distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices of the unique `s`-`t` path, starting at `s`.
    pub fn path_between(&self, s: usize, t: usize) -> Vec<usize> {
        let dist = self.distances(t);
        let mut out = vec![s];
        let mut v = s;
        while v != t {
            v = self
                .neighbors(v)
                .find(|&w| dist[w] + 1 == dist[v])
                .expect("tree is connected");
            out.push(v);
        }
        out
    }

    fn raw_mut(&mut self) -> &mut Graph {
        &mut self.g
    }
}

impl std::fmt::Debug for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tree(n={}, edges={:?})", self.order(), self.edges())
    }
}
