use super::{mask_of, size, Ctx, ExtractError};
use crate::formulas::{ForestSpec, TargetKind};
use crate::graph::Mask;
use crate::search::Found;

impl Ctx<'_> {
    /// Red `f` or blue target: components from largest to smallest, each by
    /// its single-tree argument on whatever the earlier ones left free.
    pub(super) fn forest(
        &mut self,
        host: Mask,
        f: &ForestSpec,
        kind: TargetKind,
    ) -> Result<Found, ExtractError> {
        let comps = f.components();
        let offsets = f.offsets();
        let mut order: Vec<usize> = (0..comps.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(comps[i].order()));

        let mut map = vec![usize::MAX; f.order()];
        let mut free = host;
        for (stage, &i) in order.iter().enumerate() {
            let t = &comps[i];
            self.note(format!(
                "component {stage}: T_{} on {} free vertices",
                t.order(),
                size(free)
            ));
            match self.nested(|x| x.single(free, t, kind))? {
                Found::Red(part) => {
                    free &= !mask_of(&part);
                    map[offsets[i]..offsets[i] + part.len()].copy_from_slice(&part);
                }
                blue => return Ok(blue),
            }
        }
        Ok(Found::Red(map))
    }
}
