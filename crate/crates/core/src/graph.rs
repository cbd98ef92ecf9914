//! Labeled simple graphs, red/blue colorings of complete graphs and embeddings.
//!
//! Vertices are dense labels `0..n`. Adjacency rows are bit masks of
//! `ceil(n / 64)` words; every search routine in this crate works on the
//! single-word fast path and requires `n <= 64`. Larger graphs are still
//! representable (parsing, tree rewriting, canonical forms) through the
//! multi-word rows.

use std::fmt;

use thiserror::Error;

/// A set of vertices of a graph with at most 64 vertices.
pub type Mask = u64;

/// Largest host order handled by colorings and embedding searches.
pub const MAX_FAST_ORDER: usize = 64;

#[inline]
pub const fn bit(v: usize) -> Mask {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Position of the unordered pair `{i, j}` in the flat pair order of `K_n`.
#[inline]
pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(j < n && i != j);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

#[inline]
pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("empty graph document")]
    Empty,
    #[error("line {line}: malformed ({text:?})")]
    Malformed { line: usize, text: String },
    #[error("line {line}: vertex count must be at least 1")]
    ZeroOrder { line: usize },
    #[error("line {line}: label {label} out of range for n = {n}")]
    LabelOutOfRange { line: usize, label: usize, n: usize },
    #[error("line {line}: self-loop at {label}")]
    SelfLoop { line: usize, label: usize },
    #[error("graph order {0} exceeds the supported maximum of 64")]
    TooLarge(usize),
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "edge ({a}, {b}) out of range");
        assert_ne!(a, b, "self-loop at {a}");
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.rows[a * self.words + b / 64] &= !(1 << (b % 64));
        self.rows[b * self.words + a / 64] &= !(1 << (a % 64));
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| bits(word).map(move |b| w * 64 + b))
    }

    /// Single-word adjacency row; requires `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> Mask {
        debug_assert!(self.n <= MAX_FAST_ORDER);
        self.rows[v * self.words]
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| self.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Connected components, each sorted ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Subgraph induced on `keep`, relabeled `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut g = Graph::empty(self.n + other.n);
        for (a, b) in self.edges() {
            g.add_edge(a, b);
        }
        for (a, b) in other.edges() {
            g.add_edge(a + off, b + off);
        }
        g
    }

    /// Canonical edge-list text: the order on the first line, then one
    /// `i j` line per edge with `i < j` in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (a, b) in self.edges() {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Parses the edge-list document: first line `n`, then `a b` per edge.
///
/// Blank lines and `#` comments are skipped; repeated edges are idempotent.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, head) = lines.next().ok_or(GraphError::Empty)?;
    let n: usize = head.parse().map_err(|_| GraphError::Malformed {
        line: first,
        text: head.to_string(),
    })?;
    if n == 0 {
        return Err(GraphError::ZeroOrder { line: first });
    }
    let mut g = Graph::empty(n);
    for (line, l) in lines {
        let malformed = || GraphError::Malformed {
            line,
            text: l.to_string(),
        };
        let mut it = l.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(malformed());
        };
        let a: usize = a.parse().map_err(|_| malformed())?;
        let b: usize = b.parse().map_err(|_| malformed())?;
        for label in [a, b] {
            if label >= n {
                return Err(GraphError::LabelOutOfRange { line, label, n });
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop { line, label: a });
        }
        g.add_edge(a, b);
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "RED",
            Color::Blue => "BLUE",
        })
    }
}

/// A red/blue coloring of the edges of `K_n`, `n <= 64`.
///
/// Stored as red adjacency rows; blue is the complement inside `K_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoColoring {
    n: usize,
    red: Vec<Mask>,
}

impl TwoColoring {
    pub fn uniform(n: usize, color: Color) -> Self {
        assert!(n <= MAX_FAST_ORDER, "coloring order {n} exceeds 64");
        let red = match color {
            Color::Red => (0..n).map(|v| full_mask(n) & !bit(v)).collect(),
            Color::Blue => vec![0; n],
        };
        TwoColoring { n, red }
    }

    /// Builds a coloring by asking `f(i, j)` for every pair `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Color) -> Self {
        let mut c = TwoColoring::uniform(n, Color::Blue);
        for i in 0..n {
            for j in i + 1..n {
                if f(i, j) == Color::Red {
                    c.set(i, j, Color::Red);
                }
            }
        }
        c
    }

    /// Decodes the enumeration index: bit `k` is pair `k`, `1` meaning RED.
    /// Requires `C(n, 2) <= 64`.
    pub fn from_index(n: usize, index: u64) -> Self {
        debug_assert!(choose2(n) <= 64);
        let mut red = vec![0; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if index >> k & 1 == 1 {
                    red[i] |= bit(j);
                    red[j] |= bit(i);
                }
                k += 1;
            }
        }
        TwoColoring { n, red }
    }

    /// Builds a coloring from pair-order bit words (bit `k` of the stream is
    /// pair `k`, `1` meaning RED).
    pub fn from_pair_bits(n: usize, words: &[u64]) -> Self {
        assert!(n <= MAX_FAST_ORDER);
        let mut red = vec![0; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if words[k / 64] >> (k % 64) & 1 == 1 {
                    red[i] |= bit(j);
                    red[j] |= bit(i);
                }
                k += 1;
            }
        }
        TwoColoring { n, red }
    }

    /// Enumeration index of this coloring; requires `C(n, 2) <= 64`.
    pub fn index(&self) -> u64 {
        let mut idx = 0u64;
        let mut k = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.red[i] >> j & 1 == 1 {
                    idx |= 1 << k;
                }
                k += 1;
            }
        }
        idx
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color(&self, i: usize, j: usize) -> Color {
        debug_assert!(i != j);
        if self.red[i] >> j & 1 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    }

    pub fn set(&mut self, i: usize, j: usize, color: Color) {
        assert!(i != j && i < self.n && j < self.n);
        match color {
            Color::Red => {
                self.red[i] |= bit(j);
                self.red[j] |= bit(i);
            }
            Color::Blue => {
                self.red[i] &= !bit(j);
                self.red[j] &= !bit(i);
            }
        }
    }

    /// Neighbors of `v` joined to it by an edge of `color`.
    #[inline]
    pub fn row(&self, v: usize, color: Color) -> Mask {
        match color {
            Color::Red => self.red[v],
            Color::Blue => full_mask(self.n) & !self.red[v] & !bit(v),
        }
    }

    /// Adjacency rows of one color class.
    pub fn rows(&self, color: Color) -> Vec<Mask> {
        (0..self.n).map(|v| self.row(v, color)).collect()
    }

    pub fn all_vertices(&self) -> Mask {
        full_mask(self.n)
    }

    /// `C(n, 2)` characters over `{R, B}` in pair order.
    pub fn to_rb_string(&self) -> String {
        let mut s = String::with_capacity(choose2(self.n));
        for i in 0..self.n {
            for j in i + 1..self.n {
                s.push(match self.color(i, j) {
                    Color::Red => 'R',
                    Color::Blue => 'B',
                });
            }
        }
        s
    }

    /// Recolors by a vertex permutation: the result colors `{p(i), p(j)}`
    /// like this coloring colors `{i, j}`.
    pub fn permuted(&self, perm: &[usize]) -> TwoColoring {
        let mut c = TwoColoring::uniform(self.n, Color::Blue);
        for i in 0..self.n {
            for j in bits(self.red[i]).filter(|&j| j > i) {
                c.set(perm[i], perm[j], Color::Red);
            }
        }
        c
    }
}

impl fmt::Debug for TwoColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoColoring({}, {})", self.n, self.to_rb_string())
    }
}

/// Spanning subgraph of `K_N` formed by the edges of one color.
pub fn color_subgraph(c: &TwoColoring, which: Color) -> Graph {
    let mut g = Graph::empty(c.order());
    for i in 0..c.order() {
        for j in bits(c.row(i, which)).filter(|&j| j > i) {
            g.add_edge(i, j);
        }
    }
    g
}

/// Map from pattern vertices to host vertices, indexed by pattern vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding { map }
    }

    pub fn image(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.iter().copied()
    }
}

/// True iff `e` is total and injective on the pattern and carries every
/// pattern edge to a host edge.
pub fn verify_embedding(pattern: &Graph, host: &Graph, e: &Embedding) -> bool {
    if e.map.len() != pattern.order() {
        return false;
    }
    let mut seen = vec![false; host.order()];
    for &h in &e.map {
        if h >= host.order() || seen[h] {
            return false;
        }
        seen[h] = true;
    }
    pattern
        .edges()
        .into_iter()
        .all(|(a, b)| host.has_edge(e.map[a], e.map[b]))
}
