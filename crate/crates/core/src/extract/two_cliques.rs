use super::{lift, mask_of, size, with, without, Ctx, ExtractError};
use crate::graph::Mask;
use crate::search::Found;
use crate::tree::{expand, isomorphism, plan_from_path, stretch, Tree};

impl Ctx<'_> {
    /// Red `P_n` or blue `2K_m` inside `host`.
    pub(super) fn path_2km(&mut self, host: Mask, n: usize, m: usize) -> Result<Found, ExtractError> {
        let p = Tree::path(n);
        let found = match m {
            1 => self.two_singletons(host, &p)?,
            2 => self.settle(host, p.graph(), &[2, 2], &format!("P_{n} vs 2K_2 base case"))?,
            _ => self.path_2km_inner(host, &p, m)?,
        };
        Ok(self.checked(host, p.graph(), &[m, m], found))
    }

    /// Blue `K` from the `K_m` argument, then a red `P_{n-1}` or a second
    /// blue `K_m` beside it, then `2K_{m-1}` off the path; a red edge from
    /// a path end to those cliques closes `P_n`, otherwise both ends join
    /// them in blue.
    fn path_2km_inner(&mut self, host: Mask, p: &Tree, m: usize) -> Result<Found, ExtractError> {
        let n = p.order();
        self.note(format!("P_{n} vs 2K_{m} on {} vertices", size(host)));
        let k = match self.nested(|c| c.chvatal(host, p, m))? {
            Found::Blue(mut cl) => cl.remove(0),
            red => return Ok(red),
        };
        let rest = host & !mask_of(&k);
        let q = Tree::path(n - 1);
        let pm = match self.nested(|c| c.chvatal(rest, &q, m))? {
            Found::Red(map) => map,
            Found::Blue(mut cl) => {
                self.note("second blue K_m beside the first");
                return Ok(Found::Blue(vec![k, cl.remove(0)]));
            }
        };
        let (v1, v2) = (pm[0], pm[n - 2]);
        let off = host & !mask_of(&pm);
        let (a1, a2) = match self.nested(|c| c.path_2km(off, n, m - 1))? {
            Found::Blue(mut cl) => {
                let a2 = cl.pop().unwrap();
                (cl.pop().unwrap(), a2)
            }
            red => return Ok(red),
        };
        let both = mask_of(&a1) | mask_of(&a2);
        if let Some(x) = self.red_to(v1, both) {
            self.note(format!("red edge {x}-{v1} extends P_{} at its start", n - 1));
            return Ok(Found::Red(with(x, &pm)));
        }
        if let Some(x) = self.red_to(v2, both) {
            self.note(format!("red edge {v2}-{x} extends P_{} at its end", n - 1));
            let mut map = pm;
            map.push(x);
            return Ok(Found::Red(map));
        }
        self.note(format!("path ends {v1}, {v2} all blue to 2K_{}", m - 1));
        Ok(Found::Blue(vec![with(v1, &a1), with(v2, &a2)]))
    }

    /// Red `t` or blue `2K_m` inside `host`: the path case, carried along
    /// the rewrite plan from the canonical path to `t`.
    pub(super) fn tree_2km(&mut self, host: Mask, t: &Tree, m: usize) -> Result<Found, ExtractError> {
        let n = t.order();
        let found = match m {
            1 => self.two_singletons(host, t)?,
            2 => self.settle(host, t.graph(), &[2, 2], &format!("T_{n} vs 2K_2 base case"))?,
            _ => self.tree_2km_inner(host, t, m)?,
        };
        Ok(self.checked(host, t.graph(), &[m, m], found))
    }

    fn tree_2km_inner(&mut self, host: Mask, t: &Tree, m: usize) -> Result<Found, ExtractError> {
        let n = t.order();
        let plan = plan_from_path(t);
        self.note(format!(
            "T_{n} vs 2K_{m}: {} rewrite steps from P_{n}",
            plan.len()
        ));
        let mut cur = Tree::path(n);
        let mut phi = match self.nested(|c| c.path_2km(host, n, m))? {
            Found::Red(map) => map,
            blue => return Ok(blue),
        };
        for &step in &plan.steps {
            self.note(format!("step {step}"));
            let next = step.apply(&cur)?;
            phi = match self.nested(|c| c.rewrite(host, &cur, step, m, phi))? {
                Found::Red(map) => map,
                blue => return Ok(blue),
            };
            cur = next;
        }
        let iso = isomorphism(t, &cur).expect("the plan ends at a copy of the target");
        Ok(Found::Red(iso.iter().map(|&v| phi[v]).collect()))
    }

    /// Red `T** = stretch(T*, a, b)` or blue `2K_m`, given a red copy `phi`
    /// of `T*` inside `host`.
    pub(super) fn stretch_step(
        &mut self,
        host: Mask,
        ts: &Tree,
        a: usize,
        b: usize,
        m: usize,
        phi: Vec<usize>,
    ) -> Result<Found, ExtractError> {
        let t2 = stretch(ts, a, b)?;
        let found = self.stretch_inner(host, ts, &t2, a, b, m, phi)?;
        Ok(self.checked(host, t2.graph(), &[m, m], found))
    }

    #[allow(clippy::too_many_arguments)]
    fn stretch_inner(
        &mut self,
        host: Mask,
        ts: &Tree,
        t2: &Tree,
        a: usize,
        b: usize,
        m: usize,
        mut phi: Vec<usize>,
    ) -> Result<Found, ExtractError> {
        let n = ts.order();
        if let Some(iso) = isomorphism(t2, ts) {
            self.note("stretch gives an isomorphic tree, red copy reused");
            return Ok(Found::Red(iso.iter().map(|&v| phi[v]).collect()));
        }
        let u = ts.neighbors(a).next().unwrap();
        let c = (0..n)
            .find(|&x| ts.is_leaf(x) && ![a, b, u].contains(&x))
            .expect("a branching tree has a third leaf");
        let v = ts.neighbors(c).next().unwrap();
        if v == u {
            self.note(format!("leaf {c} hangs from {u}, the neighbour of {a}"));
        }
        let q = mask_of(&phi) & !(1 << phi[b]);
        let r = host & !q;
        let (ca, cb) = match self.nested(|x| x.tree_2km(r, t2, m - 1))? {
            Found::Blue(mut cl) => {
                let cb = cl.pop().unwrap();
                (cl.pop().unwrap(), cb)
            }
            red => return Ok(red),
        };
        let (ma, mb) = (mask_of(&ca), mask_of(&cb));
        let fa = phi[a];
        if let Some(x) = self.red_to(fa, ma | mb) {
            self.note(format!("red edge {fa}-{x} completes the stretched tree"));
            phi[b] = x;
            return Ok(Found::Red(phi));
        }
        let f = r & !ma & !mb | 1 << phi[c];
        let (small, keep) = without(t2, &[b, c]);
        match self.nested(|x| x.chvatal(f, &small, m - 1))? {
            Found::Red(psi) => {
                let mut psi = lift(n, &keep, &psi);
                let (pv, pa) = (psi[v], psi[a]);
                let Some(xa) = self.red_to(pv, ma) else {
                    self.note(format!("{pv} all blue to A"));
                    return Ok(Found::Blue(vec![with(pv, &ca), with(fa, &cb)]));
                };
                let Some(xb) = self.red_to(pa, mb) else {
                    self.note(format!("{pa} all blue to B"));
                    return Ok(Found::Blue(vec![with(pa, &cb), with(fa, &ca)]));
                };
                self.note(format!(
                    "red T_{} in F without {b} and {c}, closed by {xa} and {xb}",
                    n - 2
                ));
                psi[c] = xa;
                psi[b] = xb;
                Ok(Found::Red(psi))
            }
            Found::Blue(mut cl) => {
                let cc = cl.remove(0);
                let (fu, fv) = (phi[u], phi[v]);
                let Some(xa) = self.red_to(fu, ma) else {
                    self.note(format!("{fu} all blue to A"));
                    return Ok(Found::Blue(vec![with(fu, &ca), with(fa, &cb)]));
                };
                let Some(xb) = self.red_to(fv, mb) else {
                    self.note(format!("{fv} all blue to B"));
                    return Ok(Found::Blue(vec![with(fv, &cb), with(fa, &ca)]));
                };
                let Some(xc) = self.red_to(xa, mask_of(&cc)) else {
                    self.note(format!("{xa} all blue to C"));
                    return Ok(Found::Blue(vec![with(xa, &cc), with(fa, &cb)]));
                };
                self.note(format!("blue K_{} in F; {a}, {b}, {c} moved to {xa}, {xc}, {xb}", m - 1));
                phi[a] = xa;
                phi[b] = xc;
                phi[c] = xb;
                Ok(Found::Red(phi))
            }
        }
    }

    /// Red `T** = expand(T*, u, b)` or blue `2K_m`, given a red copy `phi`
    /// of `T*` inside `host`.
    pub(super) fn expand_step(
        &mut self,
        host: Mask,
        ts: &Tree,
        u: usize,
        b: usize,
        m: usize,
        phi: Vec<usize>,
    ) -> Result<Found, ExtractError> {
        let t2 = expand(ts, u, b)?;
        let found = self.expand_inner(host, ts, &t2, u, b, m, phi)?;
        Ok(self.checked(host, t2.graph(), &[m, m], found))
    }

    #[allow(clippy::too_many_arguments)]
    fn expand_inner(
        &mut self,
        host: Mask,
        ts: &Tree,
        t2: &Tree,
        u: usize,
        b: usize,
        m: usize,
        mut phi: Vec<usize>,
    ) -> Result<Found, ExtractError> {
        let n = ts.order();
        let z0 = ts
            .neighbors(u)
            .find(|&z| !ts.is_leaf(z))
            .expect("expand anchor has a non-leaf neighbour");
        // z[0] = z_0, z[1..d] the old leaves of u, z[d] = b
        let mut z: Vec<usize> = vec![z0];
        z.extend(ts.neighbors(u).filter(|&y| y != z0));
        z.push(b);
        let d = z.len() - 1;

        let r = host & !(mask_of(&phi) & !(1 << phi[b]));
        let (ca, cb) = match self.nested(|x| x.tree_2km(r, t2, m - 1))? {
            Found::Blue(mut cl) => {
                let cb = cl.pop().unwrap();
                (cl.pop().unwrap(), cb)
            }
            red => return Ok(red),
        };
        let (ma, mb) = (mask_of(&ca), mask_of(&cb));
        let fu = phi[u];
        if let Some(x) = self.red_to(fu, ma | mb) {
            self.note(format!("red edge {fu}-{x} completes the expanded tree"));
            phi[b] = x;
            return Ok(Found::Red(phi));
        }

        let mut h = r & !ma & !mb | 1 << phi[z[1]];
        let mut cs: Vec<Vec<usize>> = Vec::new();
        for k in 1..d {
            let gone = &z[1..=k + 1];
            let (small, keep) = without(t2, gone);
            match self.nested(|x| x.chvatal(h, &small, m - 1))? {
                Found::Red(psi) => {
                    let mut psi = lift(n, &keep, &psi);
                    let up = psi[u];
                    let mut groups: Vec<&[usize]> = vec![&ca, &cb];
                    groups.extend(cs.iter().map(Vec::as_slice));
                    for (i, (&leaf, g)) in gone.iter().zip(&groups).enumerate() {
                        let Some(x) = self.red_to(up, mask_of(g)) else {
                            self.note(format!("{up} all blue to clique {i}"));
                            let other = if i == 0 { &cb } else { &ca };
                            return Ok(Found::Blue(vec![with(up, g), with(fu, other)]));
                        };
                        psi[leaf] = x;
                    }
                    self.note(format!("stage {k}: red T_{} closed at {up}", n - k - 1));
                    return Ok(Found::Red(psi));
                }
                Found::Blue(mut cl) => {
                    let ck = cl.remove(0);
                    self.note(format!("stage {k}: blue K_{}", m - 1));
                    h &= !mask_of(&ck);
                    cs.push(ck);
                    if k + 1 < d {
                        h |= 1 << phi[z[k + 1]];
                    }
                }
            }
        }

        let fz0 = phi[z0];
        let c1 = &cs[0];
        let Some(x1) = self.red_to(fz0, mask_of(c1)) else {
            self.note(format!("{fz0} all blue to C_1"));
            return Ok(Found::Blue(vec![with(fz0, c1), with(fu, &cb)]));
        };
        let mut groups: Vec<&[usize]> = vec![&ca, &cb];
        groups.extend(cs[1..].iter().map(Vec::as_slice));
        let mut picks = Vec::with_capacity(d);
        for (i, g) in groups.iter().enumerate() {
            let Some(x) = self.red_to(x1, mask_of(g)) else {
                self.note(format!("{x1} all blue to clique {i}"));
                let other = if i == 0 { &cb } else { &ca };
                return Ok(Found::Blue(vec![with(x1, g), with(fu, other)]));
            };
            picks.push(x);
        }
        self.note(format!("all stages blue; {u} moved to {x1}"));
        phi[u] = x1;
        for (&leaf, x) in z[1..].iter().zip(picks) {
            phi[leaf] = x;
        }
        Ok(Found::Red(phi))
    }
}
