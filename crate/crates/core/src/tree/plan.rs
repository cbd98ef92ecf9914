//! Planners: tree to path by Stretches, path to tree by layered
//! Expands and Stretches, and their composition.

use super::{apply_plan, OpStep, Plan, Tree, TreeError};

/// The lexicographically least vertex sequence among all longest paths.
pub fn longest_path(t: &Tree) -> Vec<usize> {
    let n = t.order();
    if n == 1 {
        return vec![0];
    }
    // double BFS for the diameter
    let d0 = t.distances(0);
    let far = (0..n).max_by_key(|&v| (d0[v], std::cmp::Reverse(v))).unwrap();
    let diameter = *t.distances(far).iter().max().unwrap();

    let mut best: Option<Vec<usize>> = None;
    for s in t.leaves() {
        let ds = t.distances(s);
        for e in (0..n).filter(|&e| ds[e] == diameter) {
            let p = t.path_between(s, e);
            if best.as_ref().is_none_or(|b| p < *b) {
                best = Some(p);
            }
        }
    }
    best.expect("a tree with two or more vertices has a diametral pair of leaves")
}

/// Stretches `t` into a path: repeatedly hang the largest off-path leaf
/// from the current end of a fixed longest path.
pub fn plan_to_path(t: &Tree) -> Plan {
    if t.order() < 3 {
        return Plan::default();
    }
    let path = longest_path(t);
    let mut on_path = vec![false; t.order()];
    for &v in &path {
        on_path[v] = true;
    }
    let mut cur = t.clone();
    let mut end = path[0];
    let mut steps = Vec::new();
    while let Some(b) = (0..cur.order())
        .rev()
        .find(|&v| !on_path[v] && cur.is_leaf(v))
    {
        let step = OpStep::stretch(end, b);
        cur = step.apply(&cur).expect("path end and off-path leaf are distinct leaves");
        steps.push(step);
        on_path[b] = true;
        end = b;
    }
    debug_assert!(cur.is_path());
    Plan::new(steps)
}

/// Incremental builder that consumes the reservoir tail of the canonical
/// path and records every step it emits.
struct Builder<'a> {
    target: &'a Tree,
    cur: Tree,
    label: Vec<usize>,
    next_free: usize,
    reservoir_floor: usize,
    steps: Vec<OpStep>,
}

impl Builder<'_> {
    fn emit(&mut self, step: OpStep) -> usize {
        self.cur = step.apply(&self.cur).unwrap_or_else(|e| {
            panic!("planner emitted an invalid step {step}: {e}");
        });
        self.steps.push(step);
        step.added()
    }

    fn take_reservoir(&mut self) -> usize {
        assert!(self.next_free > self.reservoir_floor, "reservoir exhausted");
        let b = self.next_free;
        self.next_free -= 1;
        b
    }

    fn stretch_to(&mut self, at: usize, new: usize) {
        let b = self.take_reservoir();
        self.label[new] = self.emit(OpStep::stretch(self.label[at], b));
    }

    fn expand_to(&mut self, at: usize, new: usize) {
        let b = self.take_reservoir();
        self.label[new] = self.emit(OpStep::expand(self.label[at], b));
    }

    /// Attaches the whole off-path subtree hanging from path vertex `u`:
    /// its first layer by Expands at `u`, each deeper layer by one Stretch
    /// per non-leaf vertex followed by Expands for the remaining children.
    fn attach_branch(&mut self, u: usize, on_path: &[bool]) {
        let t = self.target;
        let mut layer: Vec<(usize, usize)> = t
            .neighbors(u)
            .filter(|&y| !on_path[y])
            .map(|y| (y, u))
            .collect();
        for &(y, _) in &layer {
            self.expand_to(u, y);
        }
        while !layer.is_empty() {
            let kids: Vec<Vec<usize>> = layer
                .iter()
                .map(|&(w, parent)| t.neighbors(w).filter(|&c| c != parent).collect())
                .collect();
            for (&(w, _), ks) in layer.iter().zip(&kids) {
                if let Some(&first) = ks.first() {
                    self.stretch_to(w, first);
                }
            }
            for (&(w, _), ks) in layer.iter().zip(&kids) {
                for &c in ks.iter().skip(1) {
                    self.expand_to(w, c);
                }
            }
            layer = layer
                .iter()
                .zip(&kids)
                .flat_map(|(&(w, _), ks)| ks.iter().map(move |&c| (c, w)))
                .collect();
        }
    }
}

/// A plan taking the canonical path `0 - 1 - ... - (n-1)` to a tree
/// isomorphic to `target`.
///
/// With `v = p_0, ..., w` the longest path of `target` and `u_1 = p_i` its
/// first vertex of degree above two, the canonical path is read as
/// `p_{i+1}, u_1, p_{i-1}, ..., v` followed by a reservoir tail whose far
/// end is deleted by every step. Branches are attached at each `u_k` layer
/// by layer; the segments between branch vertices are grown by Stretches
/// at the current path end.
pub fn plan_from_path(target: &Tree) -> Plan {
    let n = target.order();
    if n < 3 || target.is_path() {
        return Plan::default();
    }
    let path = longest_path(target);
    let mut on_path = vec![false; n];
    for &v in &path {
        on_path[v] = true;
    }
    let first = (1..path.len() - 1)
        .find(|&i| target.degree(path[i]) > 2)
        .expect("a non-path tree branches on its longest path");

    let mut label = vec![usize::MAX; n];
    label[path[first + 1]] = 0;
    for (k, &p) in path[..=first].iter().rev().enumerate() {
        label[p] = k + 1;
    }
    let mut b = Builder {
        target,
        cur: Tree::path(n),
        label,
        next_free: n - 1,
        reservoir_floor: first + 1,
        steps: Vec::new(),
    };

    b.attach_branch(path[first], &on_path);
    for q in first + 1..path.len() - 1 {
        b.stretch_to(path[q], path[q + 1]);
        if target.degree(path[q]) > 2 {
            b.attach_branch(path[q], &on_path);
        }
    }
    debug_assert_eq!(b.next_free, b.reservoir_floor);
    debug_assert!(super::is_isomorphic(&b.cur, target));
    Plan::new(b.steps)
}

/// `plan_to_path(src)` followed by `plan_from_path(dst)` relabeled onto
/// the path that the first half produces.
pub fn plan_between(src: &Tree, dst: &Tree) -> Result<Plan, TreeError> {
    if src.order() != dst.order() {
        return Err(TreeError::OrderMismatch(src.order(), dst.order()));
    }
    let n = src.order();
    if n < 3 {
        return Ok(Plan::default());
    }
    let mut plan = plan_to_path(src);
    let line = apply_plan(src, &plan)?;
    let ends = line.leaves();
    let chain = line.path_between(ends[0], ends[1]);
    plan.steps
        .extend(plan_from_path(dst).steps.iter().map(|s| s.relabeled(&chain)));
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{canonical_tree_representatives, is_isomorphic, OpKind};

    fn spider_112() -> Tree {
        // center 0 with legs of length 1, 1, 2
        Tree::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap()
    }

    fn double_star() -> Tree {
        Tree::from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap()
    }

    #[test]
    fn longest_path_is_least() {
        assert_eq!(longest_path(&Tree::star(4)), vec![1, 0, 2]);
        assert_eq!(longest_path(&Tree::path(4)), vec![0, 1, 2, 3]);
        assert_eq!(longest_path(&spider_112()), vec![1, 0, 3, 4]);
    }

    #[test]
    fn plan_to_path_examples() {
        assert!(plan_to_path(&Tree::path(6)).is_empty());
        assert_eq!(plan_to_path(&Tree::star(4)).len(), 1);
        assert_eq!(plan_to_path(&spider_112()).len(), 1);
        let p = plan_to_path(&Tree::star(6));
        assert_eq!(p.len(), 3);
        assert!(p.only(OpKind::Stretch));
        assert_eq!(apply_plan(&Tree::star(6), &p).unwrap().leaves().len(), 2);
    }

    #[test]
    fn plan_from_path_examples() {
        assert!(plan_from_path(&Tree::path(5)).is_empty());
        let p = plan_from_path(&Tree::star(4));
        assert_eq!(p.steps, vec![OpStep::expand(1, 3)]);

        let ds = double_star();
        let p = plan_from_path(&ds);
        assert!(is_isomorphic(&apply_plan(&Tree::path(6), &p).unwrap(), &ds));
    }

    #[test]
    fn plan_between_examples() {
        assert!(plan_between(&Tree::path(5), &Tree::path(5)).unwrap().is_empty());
        let p = plan_between(&Tree::path(4), &Tree::star(4)).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.steps[0].kind, OpKind::Expand);
        let p = plan_between(&Tree::star(5), &Tree::path(5)).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.only(OpKind::Stretch));
        assert_eq!(
            plan_between(&Tree::path(4), &Tree::path(5)),
            Err(TreeError::OrderMismatch(4, 5))
        );
    }

    #[test]
    fn degenerate_orders() {
        for n in 1..=3 {
            let t = Tree::path(n);
            assert!(plan_to_path(&t).is_empty());
            assert!(plan_from_path(&t).is_empty());
            assert!(plan_between(&t, &t).unwrap().is_empty());
        }
    }

    #[test]
    fn expand_degrees_in_range() {
        for n in 4..=8 {
            for dst in canonical_tree_representatives(n) {
                let mut cur = Tree::path(n);
                for s in plan_from_path(&dst).steps {
                    if s.kind == OpKind::Expand {
                        let d = cur.degree(s.anchor);
                        assert!((2..=n - 2).contains(&d));
                    }
                    cur = s.apply(&cur).unwrap();
                }
            }
        }
    }
}
