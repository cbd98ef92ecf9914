//! AHU-style canonical encodings rooted at the tree's center(s).

use std::collections::BTreeMap;

use super::Tree;

/// Centers of the tree (one or two vertices), by repeated leaf peeling.
fn centers(t: &Tree) -> Vec<usize> {
    let n = t.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for w in t.neighbors(v) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Encoding of every subtree when rooted at `root`, plus parent pointers.
fn rooted_codes(t: &Tree, root: usize) -> (Vec<String>, Vec<usize>) {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut code = vec![String::new(); n];
    for &v in order.iter().rev() {
        let mut kids: Vec<&str> = t
            .neighbors(v)
            .filter(|&w| w != parent[v])
            .map(|w| code[w].as_str())
            .collect();
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(|k| k.len()).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(k);
        }
        s.push(')');
        code[v] = s;
    }
    (code, parent)
}

/// A string equal for two trees exactly when they are isomorphic.
pub fn canonical_form(t: &Tree) -> String {
    centers(t)
        .into_iter()
        .map(|c| rooted_codes(t, c).0.swap_remove(c))
        .min()
        .expect("non-empty tree has a center")
}

pub fn is_isomorphic(a: &Tree, b: &Tree) -> bool {
    a.order() == b.order() && canonical_form(a) == canonical_form(b)
}

/// An isomorphism `a -> b` as a vertex map indexed by `a`'s vertices.
pub fn isomorphism(a: &Tree, b: &Tree) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let ca = centers(a)[0];
    let (code_a, par_a) = rooted_codes(a, ca);
    for cb in centers(b) {
        let (code_b, par_b) = rooted_codes(b, cb);
        if code_a[ca] != code_b[cb] {
            continue;
        }
        let mut map = vec![usize::MAX; a.order()];
        let mut stack = vec![(ca, cb)];
        while let Some((x, y)) = stack.pop() {
            map[x] = y;
            let mut kx: Vec<usize> = a.neighbors(x).filter(|&w| w != par_a[x]).collect();
            let mut ky: Vec<usize> = b.neighbors(y).filter(|&w| w != par_b[y]).collect();
            kx.sort_by(|&p, &q| code_a[p].cmp(&code_a[q]));
            ky.sort_by(|&p, &q| code_b[p].cmp(&code_b[q]));
            stack.extend(kx.into_iter().zip(ky));
        }
        return Some(map);
    }
    None
}

/// Decodes a Prüfer sequence over `0..seq.len() + 2`.
pub fn from_prufer(seq: &[usize]) -> Tree {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    for &s in seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, edges).expect("Prüfer decoding yields a tree")
}

/// All `n^(n-2)` labeled trees on `0..n`, in Prüfer-sequence order.
pub fn labeled_trees(n: usize) -> Box<dyn Iterator<Item = Tree>> {
    match n {
        0 => Box::new(std::iter::empty()),
        1 => Box::new(std::iter::once(Tree::path(1))),
        2 => Box::new(std::iter::once(Tree::path(2))),
        _ => {
            let len = n - 2;
            let total = n.pow(len as u32);
            Box::new((0..total).map(move |mut k| {
                let mut seq = vec![0; len];
                for s in seq.iter_mut().rev() {
                    *s = k % n;
                    k /= n;
                }
                from_prufer(&seq)
            }))
        }
    }
}

/// One representative per isomorphism class of trees on `n` vertices,
/// ordered by canonical form.
pub fn canonical_tree_representatives(n: usize) -> Vec<Tree> {
    let mut classes: BTreeMap<String, Tree> = BTreeMap::new();
    for t in labeled_trees(n) {
        classes.entry(canonical_form(&t)).or_insert(t);
    }
    classes.into_values().collect()
}
