//! Complete searches on bit-mask hosts: pattern embedding by backtracking
//! and vertex-disjoint cliques by branch and bound.
//!
//! Hosts are given as adjacency rows plus a mask of usable vertices, so the
//! same routines serve whole colorings and the sub-hosts that the
//! extractors carve out of them.

use crate::formulas::{CliqueUnion, ForestSpec};
use crate::graph::{bit, bits, Color, Embedding, Graph, Mask, TwoColoring};
use crate::witness::Witness;

/// A pattern prepared for repeated embedding searches.
///
/// Vertices are visited component by component, largest first, each in
/// BFS order from a root of maximum degree (lowest label on ties).
#[derive(Debug, Clone)]
pub struct Pattern {
    order: Vec<usize>,
    /// pattern vertices adjacent to `order[i]` that appear before it
    back: Vec<Vec<usize>>,
    degree: Vec<u32>,
}

impl Pattern {
    pub fn new(p: &Graph) -> Self {
        let mut comps = p.components();
        comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let mut pos = vec![usize::MAX; p.order()];
        let mut order = Vec::with_capacity(p.order());
        for comp in comps {
            let root = *comp
                .iter()
                .max_by_key(|&&v| (p.degree(v), std::cmp::Reverse(v)))
                .unwrap();
            let start = order.len();
            pos[root] = order.len();
            order.push(root);
            let mut i = start;
            while i < order.len() {
                let v = order[i];
                i += 1;
                for w in p.neighbors(v) {
                    if pos[w] == usize::MAX {
                        pos[w] = order.len();
                        order.push(w);
                    }
                }
            }
        }
        let back = order
            .iter()
            .map(|&v| p.neighbors(v).filter(|&w| pos[w] < pos[v]).collect())
            .collect();
        let degree = (0..p.order()).map(|v| p.degree(v) as u32).collect();
        Pattern {
            order,
            back,
            degree,
        }
    }

    pub fn order(&self) -> usize {
        self.order.len()
    }

    /// Embeds the pattern into the host rows restricted to `allowed`.
    pub fn embed_in(&self, rows: &[Mask], allowed: Mask) -> Option<Vec<usize>> {
        if self.order() > allowed.count_ones() as usize {
            return None;
        }
        let host_degree = rows.iter().map(|&r| (r & allowed).count_ones()).collect();
        let mut s = EmbedSearch {
            pat: self,
            rows,
            host_degree,
            map: vec![usize::MAX; self.order()],
        };
        s.run(0, allowed).then_some(s.map)
    }
}

struct EmbedSearch<'a> {
    pat: &'a Pattern,
    rows: &'a [Mask],
    host_degree: Vec<u32>,
    map: Vec<usize>,
}

impl EmbedSearch<'_> {
    fn run(&mut self, i: usize, free: Mask) -> bool {
        if i == self.pat.order.len() {
            return true;
        }
        if (free.count_ones() as usize) < self.pat.order.len() - i {
            return false;
        }
        let v = self.pat.order[i];
        let mut cand = free;
        for &w in &self.pat.back[i] {
            cand &= self.rows[self.map[w]];
        }
        let need = self.pat.degree[v];
        for h in bits(cand) {
            if self.host_degree[h] < need {
                continue;
            }
            self.map[v] = h;
            if self.run(i + 1, free & !bit(h)) {
                return true;
            }
        }
        false
    }
}

/// Embeds `pattern` into the host restricted to `allowed`, returning the
/// vertex map, or `None` when no embedding exists.
pub fn embed(pattern: &Graph, rows: &[Mask], allowed: Mask) -> Option<Vec<usize>> {
    Pattern::new(pattern).embed_in(rows, allowed)
}

/// Vertex-disjoint cliques with the given sizes (any order) inside
/// `allowed`. The result lists the cliques in the order of `sizes`.
pub fn disjoint_cliques(rows: &[Mask], allowed: Mask, sizes: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut idx: Vec<usize> = (0..sizes.len()).collect();
    idx.sort_by_key(|&i| std::cmp::Reverse(sizes[i]));
    let sorted: Vec<usize> = idx.iter().map(|&i| sizes[i]).collect();
    let mut found = vec![Vec::new(); sizes.len()];
    let mut cur = Vec::new();
    if cliques_rec(rows, allowed, &sorted, 0, 0, &mut cur, &mut found) {
        let mut out = vec![Vec::new(); sizes.len()];
        for (k, &i) in idx.iter().enumerate() {
            out[i] = std::mem::take(&mut found[k]);
        }
        Some(out)
    } else {
        None
    }
}

/// Vertices with label `>= v`.
#[inline]
fn at_least(v: usize) -> Mask {
    u64::MAX.checked_shl(v as u32).unwrap_or(0)
}

fn cliques_rec(
    rows: &[Mask],
    free: Mask,
    sizes: &[usize],
    k: usize,
    min_start: usize,
    cur: &mut Vec<usize>,
    found: &mut [Vec<usize>],
) -> bool {
    if k == sizes.len() {
        return true;
    }
    if (free.count_ones() as usize) < sizes[k..].iter().sum::<usize>() {
        return false;
    }
    // equal-size cliques are taken with increasing least vertex
    let floor = if k > 0 && sizes[k] == sizes[k - 1] {
        min_start
    } else {
        0
    };
    for x in bits(free & at_least(floor)) {
        cur.clear();
        cur.push(x);
        let cand = free & rows[x] & at_least(x + 1);
        if grow(rows, free, sizes, k, x, cand, cur, found) {
            return true;
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn grow(
    rows: &[Mask],
    free: Mask,
    sizes: &[usize],
    k: usize,
    start: usize,
    cand: Mask,
    cur: &mut Vec<usize>,
    found: &mut [Vec<usize>],
) -> bool {
    if cur.len() == sizes[k] {
        let used: Mask = cur.iter().fold(0, |m, &v| m | bit(v));
        found[k] = cur.clone();
        let mut next = Vec::new();
        return cliques_rec(rows, free & !used, sizes, k + 1, start + 1, &mut next, found);
    }
    if cur.len() + (cand.count_ones() as usize) < sizes[k] {
        return false;
    }
    for y in bits(cand) {
        cur.push(y);
        let next = cand & rows[y] & at_least(y + 1);
        if grow(rows, free, sizes, k, start, next, cur, found) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Outcome of a search or extraction on a sub-host: a red map of the red
/// pattern, or the blue cliques in the target's size order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Found {
    Red(Vec<usize>),
    Blue(Vec<Vec<usize>>),
}

/// Red `pattern` first, then blue cliques of `sizes`, both inside `allowed`.
pub fn search_in(c: &TwoColoring, allowed: Mask, pattern: &Graph, sizes: &[usize]) -> Option<Found> {
    let red = c.rows(Color::Red);
    if let Some(map) = embed(pattern, &red, allowed) {
        return Some(Found::Red(map));
    }
    let blue = c.rows(Color::Blue);
    disjoint_cliques(&blue, allowed, sizes).map(Found::Blue)
}

/// A red embedding of every component of `f`, vertex-disjoint.
pub fn embed_red_forest(c: &TwoColoring, f: &ForestSpec) -> Option<Embedding> {
    embed(&f.graph(), &c.rows(Color::Red), c.all_vertices()).map(Embedding::new)
}

/// Vertex-disjoint blue cliques realizing `h`.
pub fn find_blue_cliques(c: &TwoColoring, h: &CliqueUnion) -> Option<Embedding> {
    disjoint_cliques(&c.rows(Color::Blue), c.all_vertices(), h.sizes())
        .map(|cl| Embedding::new(cl.concat()))
}

/// Ground-truth oracle: a red `f` if one exists, else a blue `h`.
pub fn search_witness(c: &TwoColoring, f: &ForestSpec, h: &CliqueUnion) -> Option<Witness> {
    search_pair(c, &f.graph(), h)
}

/// As [`search_witness`] for an arbitrary red pattern graph.
pub fn search_pair(c: &TwoColoring, red_pattern: &Graph, h: &CliqueUnion) -> Option<Witness> {
    match search_in(c, c.all_vertices(), red_pattern, h.sizes())? {
        Found::Red(map) => Some(Witness::new(
            Color::Red,
            map,
            vec!["oracle: red pattern found by backtracking".into()],
        )),
        Found::Blue(cl) => Some(Witness::new(
            Color::Blue,
            cl.concat(),
            vec!["oracle: no red pattern; blue cliques found by branch and bound".into()],
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{color_subgraph, full_mask, verify_embedding};
    use crate::tree::Tree;

    fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for h in 0..n {
                if !cur.contains(&h) {
                    cur.push(h);
                    rec(k, n, cur, out);
                    cur.pop();
                }
            }
        }
        rec(k, n, &mut cur, &mut out);
        out
    }

    fn brute_embeds(p: &Graph, host: &Graph) -> bool {
        injections(p.order(), host.order())
            .into_iter()
            .any(|m| verify_embedding(p, host, &Embedding::new(m)))
    }

    #[test]
    fn oracle_examples() {
        let p3 = ForestSpec::single(Tree::path(3));
        let two_k2 = CliqueUnion::new(vec![2, 2]).unwrap();
        let red = TwoColoring::uniform(4, Color::Red);
        let blue = TwoColoring::uniform(4, Color::Blue);
        assert!(embed_red_forest(&red, &p3).is_some());
        assert!(embed_red_forest(&blue, &p3).is_none());
        assert!(find_blue_cliques(&blue, &two_k2).is_some());
        assert!(find_blue_cliques(&red, &CliqueUnion::clique(2)).is_none());
        assert_eq!(search_witness(&red, &p3, &two_k2).unwrap().side, Color::Red);
        assert_eq!(search_witness(&blue, &p3, &two_k2).unwrap().side, Color::Blue);
    }

    #[test]
    fn bipartite_blue_has_no_triangle() {
        // red K_2 + red K_6, blue K_{2,6} between them
        let c = TwoColoring::from_fn(8, |i, j| {
            if (i < 6) == (j < 6) {
                Color::Red
            } else {
                Color::Blue
            }
        });
        assert!(find_blue_cliques(&c, &CliqueUnion::clique(3)).is_none());
        assert!(find_blue_cliques(&c, &CliqueUnion::new(vec![2, 2]).unwrap()).is_some());
    }

    #[test]
    fn embedding_matches_brute_force() {
        // all colorings of K_5 against a few small patterns
        let patterns = [
            Graph::from_edges(3, [(0, 1), (1, 2)]),
            Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]),
            Graph::from_edges(4, [(0, 1), (2, 3)]),
            Graph::complete(3),
        ];
        for idx in (0..1u64 << 10).step_by(7) {
            let c = TwoColoring::from_index(5, idx);
            let host = color_subgraph(&c, Color::Red);
            for p in &patterns {
                let got = embed(p, &c.rows(Color::Red), full_mask(5));
                assert_eq!(got.is_some(), brute_embeds(p, &host), "{c:?} {p:?}");
                if let Some(m) = got {
                    assert!(verify_embedding(p, &host, &Embedding::new(m)));
                }
            }
        }
    }

    #[test]
    fn cliques_match_brute_force() {
        let targets = [vec![2, 2], vec![3], vec![3, 2], vec![2, 2, 2]];
        for idx in (0..1u64 << 15).step_by(97) {
            let c = TwoColoring::from_index(6, idx);
            let host = color_subgraph(&c, Color::Blue);
            for sizes in &targets {
                let h = CliqueUnion::new(sizes.clone()).unwrap();
                let got = find_blue_cliques(&c, &h);
                assert_eq!(got.is_some(), brute_embeds(&h.graph(), &host));
                if let Some(e) = got {
                    assert!(verify_embedding(&h.graph(), &host, &e));
                }
            }
        }
    }

    #[test]
    fn restricted_hosts() {
        let c = TwoColoring::uniform(6, Color::Red);
        let allowed = bit(1) | bit(3) | bit(5);
        let m = embed(&Graph::complete(3), &c.rows(Color::Red), allowed).unwrap();
        let mut m2 = m.clone();
        m2.sort();
        assert_eq!(m2, vec![1, 3, 5]);
        assert!(embed(&Graph::complete(4), &c.rows(Color::Red), allowed).is_none());
    }
}
