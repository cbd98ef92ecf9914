//! Proof-guided witness extraction.
//!
//! Each extractor walks the inductive argument for its target. On a host at
//! or above the target's threshold it always ends with a red copy of the
//! tree or the blue cliques, and every vertex it returns was picked by a
//! case of the argument. The only searches are the `2K_2` base case and,
//! in best-effort mode, sub-claims whose constructive step cannot proceed.

mod chvatal;
mod forest;
mod pair;
mod two_cliques;

use thiserror::Error;

use crate::formulas::{union_upper, CliqueUnion, ForestSpec, FormulaError, TargetKind, tree_value};
use crate::graph::{bits, Color, Graph, Mask, TwoColoring};
use crate::search::{search_in, Found};
use crate::tree::{OpKind, OpStep, Tree, TreeError};
use crate::witness::Witness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("host has {have} vertices, the argument needs {needed}")]
    BelowThreshold { needed: usize, have: usize },
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("stuck at {point}: no red pattern and no blue cliques on the {} vertex sub-host", .host.count_ones())]
    Stuck {
        point: String,
        host: Mask,
        red_pattern: Graph,
        sizes: Vec<usize>,
    },
    #[error("constructive step failed at {0}")]
    ProofGap(String),
}

/// `Strict` refuses hosts below the threshold. `BestEffort` runs the same
/// argument on any host and settles a stalled sub-claim by search,
/// reporting [`ExtractError::Stuck`] when the search finds nothing there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    BestEffort,
}

pub(crate) fn mask_of(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

fn lowest(m: Mask) -> Option<usize> {
    (m != 0).then(|| m.trailing_zeros() as usize)
}

fn size(m: Mask) -> usize {
    m.count_ones() as usize
}

/// `v` followed by the vertices of `clique`.
fn with(v: usize, clique: &[usize]) -> Vec<usize> {
    let mut c = Vec::with_capacity(clique.len() + 1);
    c.push(v);
    c.extend_from_slice(clique);
    c
}

/// Drops `gone` from `t`; returns the remaining tree and the old label of
/// each new vertex.
fn without(t: &Tree, gone: &[usize]) -> (Tree, Vec<usize>) {
    let keep: Vec<usize> = (0..t.order()).filter(|v| !gone.contains(v)).collect();
    let sub = t
        .subtree(&keep)
        .expect("removing leaves keeps a tree connected");
    (sub, keep)
}

/// Lifts a map of `without(t, ..)` back to the labels of `t`.
fn lift(order: usize, keep: &[usize], map: &[usize]) -> Vec<usize> {
    let mut full = vec![usize::MAX; order];
    for (i, &old) in keep.iter().enumerate() {
        full[old] = map[i];
    }
    full
}

pub(crate) struct Ctx<'a> {
    c: &'a TwoColoring,
    red: Vec<Mask>,
    blue: Vec<Mask>,
    mode: Mode,
    trace: Vec<String>,
    depth: usize,
}

impl<'a> Ctx<'a> {
    fn new(c: &'a TwoColoring, mode: Mode) -> Self {
        Ctx {
            c,
            red: c.rows(Color::Red),
            blue: c.rows(Color::Blue),
            mode,
            trace: Vec::new(),
            depth: 0,
        }
    }

    fn note(&mut self, msg: impl AsRef<str>) {
        self.trace
            .push(format!("{}{}", "  ".repeat(self.depth), msg.as_ref()));
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Self) -> T) -> T {
        self.depth += 1;
        let r = f(self);
        self.depth -= 1;
        r
    }

    /// Lowest vertex of `set` joined to `x` by a red edge.
    fn red_to(&self, x: usize, set: Mask) -> Option<usize> {
        lowest(self.red[x] & set)
    }

    /// Settles a sub-claim by search on `host`.
    fn settle(
        &mut self,
        host: Mask,
        pattern: &Graph,
        sizes: &[usize],
        point: &str,
    ) -> Result<Found, ExtractError> {
        match search_in(self.c, host, pattern, sizes) {
            Some(found) => {
                let side = if matches!(found, Found::Red(_)) { "red" } else { "blue" };
                self.note(format!("{point}: settled by search ({side})"));
                Ok(found)
            }
            None => {
                self.note(format!("{point}: search finds neither side"));
                Err(ExtractError::Stuck {
                    point: point.to_string(),
                    host,
                    red_pattern: pattern.clone(),
                    sizes: sizes.to_vec(),
                })
            }
        }
    }

    /// A constructive step could not proceed.
    fn rescue(
        &mut self,
        host: Mask,
        pattern: &Graph,
        sizes: &[usize],
        point: &str,
    ) -> Result<Found, ExtractError> {
        match self.mode {
            Mode::Strict => Err(ExtractError::ProofGap(point.to_string())),
            Mode::BestEffort => self.settle(host, pattern, sizes, point),
        }
    }

    /// Two single vertices: the blue `2K_1`.
    fn two_singletons(&mut self, host: Mask, t: &Tree) -> Result<Found, ExtractError> {
        let mut it = bits(host);
        match (it.next(), it.next()) {
            (Some(a), Some(b)) => {
                self.note(format!("2K_1: vertices {a} and {b}"));
                Ok(Found::Blue(vec![vec![a], vec![b]]))
            }
            _ => self.rescue(host, t.graph(), &[1, 1], "2K_1 on fewer than two vertices"),
        }
    }

    /// Debug check of every sub-claim result.
    fn checked(&self, host: Mask, pattern: &Graph, sizes: &[usize], found: Found) -> Found {
        debug_assert!(
            self.valid(host, pattern, sizes, &found),
            "extractor returned an invalid sub-witness {found:?}"
        );
        found
    }

    fn valid(&self, host: Mask, pattern: &Graph, sizes: &[usize], found: &Found) -> bool {
        match found {
            Found::Red(map) => {
                map.len() == pattern.order()
                    && map.iter().all(|&v| v < 64 && host >> v & 1 == 1)
                    && size(mask_of(map)) == map.len()
                    && pattern.edges().iter().all(|&(a, b)| self.red[map[a]] >> map[b] & 1 == 1)
            }
            Found::Blue(cliques) => {
                let all: Vec<usize> = cliques.concat();
                cliques.len() == sizes.len()
                    && cliques.iter().zip(sizes).all(|(k, &s)| k.len() == s)
                    && all.iter().all(|&v| v < 64 && host >> v & 1 == 1)
                    && size(mask_of(&all)) == all.len()
                    && cliques.iter().all(|k| {
                        k.iter()
                            .all(|&x| k.iter().all(|&y| x == y || self.blue[x] >> y & 1 == 1))
                    })
            }
        }
    }

    fn witness(self, found: Found) -> Witness {
        match found {
            Found::Red(map) => Witness::new(Color::Red, map, self.trace),
            Found::Blue(cl) => Witness::new(Color::Blue, cl.concat(), self.trace),
        }
    }
}

/// Configured entry point to the extractors.
#[derive(Debug, Clone, Copy, Default)]
pub struct Extractor {
    pub mode: Mode,
}

impl Extractor {
    pub fn strict() -> Self {
        Extractor { mode: Mode::Strict }
    }

    pub fn best_effort() -> Self {
        Extractor {
            mode: Mode::BestEffort,
        }
    }

    fn gate(&self, c: &TwoColoring, needed: usize) -> Result<(), ExtractError> {
        if self.mode == Mode::Strict && c.order() < needed {
            return Err(ExtractError::BelowThreshold {
                needed,
                have: c.order(),
            });
        }
        Ok(())
    }

    /// Red `t` or blue `K_m` on `(n-1)(m-1)+1` vertices.
    pub fn chvatal(&self, c: &TwoColoring, t: &Tree, m: usize) -> Result<Witness, ExtractError> {
        check_m(m, 1)?;
        self.gate(c, (t.order() - 1) * (m - 1) + 1)?;
        let mut ctx = Ctx::new(c, self.mode);
        let found = ctx.chvatal(c.all_vertices(), t, m)?;
        Ok(ctx.witness(found))
    }

    /// Red `P_n` or blue `2K_m` on `(n-1)(m-1)+2` vertices.
    pub fn path_2km(&self, c: &TwoColoring, n: usize, m: usize) -> Result<Witness, ExtractError> {
        check_order(n)?;
        check_m(m, 2)?;
        self.gate(c, two_cliques_threshold(n, m))?;
        let mut ctx = Ctx::new(c, self.mode);
        let found = ctx.path_2km(c.all_vertices(), n, m)?;
        Ok(ctx.witness(found))
    }

    /// Red `t` or blue `2K_m` on `(n-1)(m-1)+2` vertices.
    pub fn tree_2km(&self, c: &TwoColoring, t: &Tree, m: usize) -> Result<Witness, ExtractError> {
        check_order(t.order())?;
        check_m(m, 2)?;
        self.gate(c, two_cliques_threshold(t.order(), m))?;
        let mut ctx = Ctx::new(c, self.mode);
        let found = ctx.tree_2km(c.all_vertices(), t, m)?;
        Ok(ctx.witness(found))
    }

    /// One rewrite step of the `2K_m` argument: extracts for `t_star`, then
    /// carries a red copy across `step`. Red maps refer to the rewritten tree.
    pub fn step(
        &self,
        c: &TwoColoring,
        t_star: &Tree,
        step: OpStep,
        m: usize,
    ) -> Result<Witness, ExtractError> {
        check_order(t_star.order())?;
        check_m(m, 2)?;
        step.apply(t_star)?;
        self.gate(c, two_cliques_threshold(t_star.order(), m))?;
        let mut ctx = Ctx::new(c, self.mode);
        let host = c.all_vertices();
        let found = match ctx.tree_2km(host, t_star, m)? {
            Found::Red(phi) => ctx.rewrite(host, t_star, step, m, phi)?,
            blue => blue,
        };
        Ok(ctx.witness(found))
    }

    /// Red `t` or blue `K_m ∪ K_l` on `(n-1)(m-1)+1` vertices, `m > l`.
    pub fn tree_kmkl(
        &self,
        c: &TwoColoring,
        t: &Tree,
        m: usize,
        l: usize,
    ) -> Result<Witness, ExtractError> {
        check_order(t.order())?;
        if l < 2 || l >= m {
            return Err(FormulaError::BadCliqueUnion.into());
        }
        self.gate(c, (t.order() - 1) * (m - 1) + 1)?;
        let mut ctx = Ctx::new(c, self.mode);
        let found = ctx.tree_kmkl(c.all_vertices(), t, m, l)?;
        Ok(ctx.witness(found))
    }

    /// Red `f` or blue `h`, one component at a time, on `ramsey_value(f, h)`
    /// vertices.
    pub fn forest(
        &self,
        c: &TwoColoring,
        f: &ForestSpec,
        h: &CliqueUnion,
    ) -> Result<Witness, ExtractError> {
        let kind = h.kind()?;
        self.gate(c, forest_threshold(f, h)?)?;
        let mut ctx = Ctx::new(c, self.mode);
        let found = ctx.forest(c.all_vertices(), f, kind)?;
        let w = ctx.witness(found);
        debug_assert!(w.verify(c, f, h));
        Ok(w)
    }
}

fn check_m(m: usize, min: usize) -> Result<(), ExtractError> {
    if m < min {
        return Err(FormulaError::PreconditionViolated(format!("clique size {m} below {min}")).into());
    }
    Ok(())
}

fn check_order(n: usize) -> Result<(), ExtractError> {
    if n < 3 {
        return Err(FormulaError::PreconditionViolated(format!(
            "two-clique arguments need a tree of order >= 3, got {n}"
        ))
        .into());
    }
    Ok(())
}

pub(crate) fn two_cliques_threshold(n: usize, m: usize) -> usize {
    (n - 1) * (m - 1) + 2
}

/// Host size the forest argument needs: the disjoint-union bound over the
/// per-tree values.
pub fn forest_threshold(f: &ForestSpec, h: &CliqueUnion) -> Result<usize, ExtractError> {
    for t in f.components() {
        tree_value(t.order(), h)?;
    }
    Ok(union_upper(f, |j| tree_value(j, h).ok())?)
}

/// Strict extraction of a red `f` or a blue `h` from `c`.
pub fn extract(c: &TwoColoring, f: &ForestSpec, h: &CliqueUnion) -> Result<Witness, ExtractError> {
    Extractor::strict().forest(c, f, h)
}

pub fn chvatal_extract(c: &TwoColoring, t: &Tree, m: usize) -> Result<Witness, ExtractError> {
    Extractor::strict().chvatal(c, t, m)
}

pub fn path_2km_extract(c: &TwoColoring, n: usize, m: usize) -> Result<Witness, ExtractError> {
    Extractor::strict().path_2km(c, n, m)
}

pub fn tree_2km_extract(c: &TwoColoring, t: &Tree, m: usize) -> Result<Witness, ExtractError> {
    Extractor::strict().tree_2km(c, t, m)
}

pub fn stretch_step_extract(
    c: &TwoColoring,
    t_star: &Tree,
    step: OpStep,
    m: usize,
) -> Result<Witness, ExtractError> {
    check_kind(step, OpKind::Stretch)?;
    Extractor::strict().step(c, t_star, step, m)
}

pub fn expand_step_extract(
    c: &TwoColoring,
    t_star: &Tree,
    step: OpStep,
    m: usize,
) -> Result<Witness, ExtractError> {
    check_kind(step, OpKind::Expand)?;
    Extractor::strict().step(c, t_star, step, m)
}

fn check_kind(step: OpStep, kind: OpKind) -> Result<(), ExtractError> {
    if step.kind != kind {
        return Err(FormulaError::PreconditionViolated(format!("step {step} is not a {kind:?}")).into());
    }
    Ok(())
}

pub fn tree_kmkl_extract(
    c: &TwoColoring,
    t: &Tree,
    m: usize,
    l: usize,
) -> Result<Witness, ExtractError> {
    Extractor::strict().tree_kmkl(c, t, m, l)
}

impl Ctx<'_> {
    fn rewrite(
        &mut self,
        host: Mask,
        t_star: &Tree,
        step: OpStep,
        m: usize,
        phi: Vec<usize>,
    ) -> Result<Found, ExtractError> {
        match step.kind {
            OpKind::Stretch => self.stretch_step(host, t_star, step.anchor, step.deleted, m, phi),
            OpKind::Expand => self.expand_step(host, t_star, step.anchor, step.deleted, m, phi),
        }
    }

    /// Single-tree argument for the target kind.
    fn single(&mut self, host: Mask, t: &Tree, kind: TargetKind) -> Result<Found, ExtractError> {
        match kind {
            TargetKind::Clique(m) => self.chvatal(host, t, m),
            TargetKind::TwoCliques(m) => self.tree_2km(host, t, m),
            TargetKind::CliquePair(m, l) => self.tree_kmkl(host, t, m, l),
        }
    }
}

#[cfg(test)]
mod tests;
