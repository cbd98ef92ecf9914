use std::collections::VecDeque;

use super::{lowest, size, Ctx, ExtractError};
use crate::graph::{bits, Mask};
use crate::search::Found;
use crate::tree::Tree;

impl Ctx<'_> {
    /// Red `t` or blue `K_m` inside `host`.
    ///
    /// A vertex with at least `(n-1)(m-2)+1` blue neighbours reduces to
    /// `K_{m-1}` in its blue neighbourhood. Otherwise every red degree is at
    /// least `n-1` and `t` embeds greedily.
    pub(super) fn chvatal(&mut self, host: Mask, t: &Tree, m: usize) -> Result<Found, ExtractError> {
        let found = self.chvatal_inner(host, t, m)?;
        Ok(self.checked(host, t.graph(), &[m], found))
    }

    fn chvatal_inner(&mut self, host: Mask, t: &Tree, m: usize) -> Result<Found, ExtractError> {
        let n = t.order();
        if m == 1 {
            return match lowest(host) {
                Some(x) => {
                    self.note(format!("K_1: vertex {x}"));
                    Ok(Found::Blue(vec![vec![x]]))
                }
                None => self.rescue(host, t.graph(), &[1], "K_1 in an empty host"),
            };
        }
        let need = (n - 1) * (m - 2) + 1;
        if let Some(x) = bits(host).find(|&x| size(self.blue[x] & host) >= need) {
            let nb = self.blue[x] & host;
            self.note(format!(
                "T_{n} vs K_{m}: vertex {x} has {} blue neighbours, look for K_{} there",
                size(nb),
                m - 1
            ));
            return Ok(match self.nested(|c| c.chvatal(nb, t, m - 1))? {
                Found::Blue(mut cl) => {
                    cl[0].push(x);
                    Found::Blue(cl)
                }
                red => red,
            });
        }
        match self.greedy(host, t) {
            Some(map) => {
                self.note(format!(
                    "T_{n} vs K_{m}: blue degrees below {need}, red tree embedded greedily"
                ));
                Ok(Found::Red(map))
            }
            None => self.rescue(
                host,
                t.graph(),
                &[m],
                &format!("greedy red T_{n} on {} vertices", size(host)),
            ),
        }
    }

    /// Breadth-first embedding, each child on the lowest free red
    /// neighbour of its parent's image.
    fn greedy(&self, host: Mask, t: &Tree) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; t.order()];
        let root = lowest(host)?;
        map[0] = root;
        let mut free = host & !(1 << root);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for w in t.neighbors(v) {
                if map[w] != usize::MAX {
                    continue;
                }
                let x = lowest(self.red[map[v]] & free)?;
                map[w] = x;
                free &= !(1 << x);
                queue.push_back(w);
            }
        }
        Some(map)
    }
}
