use super::{lift, mask_of, with, without, Ctx, ExtractError};
use crate::graph::Mask;
use crate::search::Found;
use crate::tree::Tree;

impl Ctx<'_> {
    /// Red `t` or blue `K_m ∪ K_l` inside `host`, `m > l`.
    ///
    /// Blue `2K_{m-1}` first, then the `K_m` argument for `t` minus two
    /// leaves on the rest; the two leaves land in the two cliques unless a
    /// neighbour is all blue to one of them.
    pub(super) fn tree_kmkl(
        &mut self,
        host: Mask,
        t: &Tree,
        m: usize,
        l: usize,
    ) -> Result<Found, ExtractError> {
        let found = self.kmkl_inner(host, t, m, l)?;
        Ok(self.checked(host, t.graph(), &[m, l], found))
    }

    fn kmkl_inner(&mut self, host: Mask, t: &Tree, m: usize, l: usize) -> Result<Found, ExtractError> {
        let n = t.order();
        self.note(format!("T_{n} vs K_{m}+K_{l}: first 2K_{}", m - 1));
        let (ca, cb) = match self.nested(|x| x.tree_2km(host, t, m - 1))? {
            Found::Blue(mut cl) => {
                let cb = cl.pop().unwrap();
                (cl.pop().unwrap(), cb)
            }
            red => return Ok(red),
        };
        let leaves = t.leaves();
        let (u, v) = (leaves[0], leaves[1]);
        let (su, sv) = (t.neighbors(u).next().unwrap(), t.neighbors(v).next().unwrap());
        let rest = host & !mask_of(&ca) & !mask_of(&cb);
        let (small, keep) = without(t, &[u, v]);
        match self.nested(|x| x.chvatal(rest, &small, m))? {
            Found::Blue(mut cl) => {
                self.note(format!("blue K_{m} beside 2K_{}", m - 1));
                Ok(Found::Blue(vec![cl.remove(0), ca[..l].to_vec()]))
            }
            Found::Red(psi) => {
                let mut psi = lift(n, &keep, &psi);
                let (pu, pv) = (psi[su], psi[sv]);
                if su == sv {
                    self.note(format!("leaves {u} and {v} share the neighbour {su}"));
                }
                let Some(xa) = self.red_to(pu, mask_of(&ca)) else {
                    self.note(format!("{pu} all blue to A"));
                    return Ok(Found::Blue(vec![with(pu, &ca), cb[..l].to_vec()]));
                };
                let Some(xb) = self.red_to(pv, mask_of(&cb)) else {
                    self.note(format!("{pv} all blue to B"));
                    return Ok(Found::Blue(vec![with(pv, &cb), ca[..l].to_vec()]));
                };
                self.note(format!("red T_{} closed by {xa} and {xb}", n - 2));
                psi[u] = xa;
                psi[v] = xb;
                Ok(Found::Red(psi))
            }
        }
    }
}
