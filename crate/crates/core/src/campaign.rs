//! Exhaustive and sampled verification campaigns.
//!
//! Exhaustive runs visit every coloring index `0..2^C(N,2)` (bit `k` is
//! pair `k`, 1 = red). Sampled trial `t` draws its pair bits from a
//! ChaCha8 generator seeded with the campaign seed on stream `t`, one
//! `u64` word per 64 pairs, so each trial is reproducible on its own.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::extract::{forest_threshold, ExtractError, Extractor, Mode};
use crate::formulas::{CliqueUnion, ForestSpec};
use crate::graph::{choose2, TwoColoring, MAX_FAST_ORDER};
use crate::notation::write_coloring;
use crate::search::search_witness;
use crate::witness::Witness;

pub const DEFAULT_CAP_BITS: usize = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Oracle,
    Proof,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Oracle => "oracle",
            Engine::Proof => "proof",
        }
    }
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "oracle" => Ok(Engine::Oracle),
            "proof" => Ok(Engine::Proof),
            _ => Err(format!("unknown engine {s:?}, expected oracle or proof")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CampaignMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("{bits} pair bits exceed the exhaustive cap of {cap}")]
    CapExceeded { bits: usize, cap: usize },
    #[error("a sampled campaign needs at least one trial")]
    NoTrials,
    #[error("order {0} is outside 1..=64")]
    BadOrder(usize),
    #[error(transparent)]
    Extract(#[from] ExtractError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignResult {
    pub mode: CampaignMode,
    pub trials: u64,
    pub failures: u64,
    pub first_failure: Option<TwoColoring>,
    pub elapsed: Duration,
    pub seed: Option<u64>,
}

impl CampaignResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Report without timing, identical across repeated runs.
    pub fn report(&self) -> String {
        let mut s = String::new();
        let mode = match self.mode {
            CampaignMode::Exhaustive => "exhaustive",
            CampaignMode::Sampled => "sampled",
        };
        let _ = writeln!(s, "mode: {mode}");
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        let _ = writeln!(s, "trials: {}", self.trials);
        let _ = writeln!(s, "failures: {}", self.failures);
        let _ = writeln!(s, "result: {}", if self.passed() { "PASS" } else { "FAIL" });
        if let Some(c) = &self.first_failure {
            s.push_str("first failure:\n");
            s.push_str(&write_coloring(c));
        }
        s
    }
}

/// A checked witness from the chosen engine, or `None`.
///
/// The proof engine is strict at or above the forest threshold. Below it,
/// the argument runs best-effort and a stuck run is settled by the oracle
/// on the whole coloring, noted in the trace.
pub fn run_engine(
    engine: Engine,
    c: &TwoColoring,
    f: &ForestSpec,
    h: &CliqueUnion,
) -> Result<Option<Witness>, ExtractError> {
    let w = match engine {
        Engine::Oracle => search_witness(c, f, h),
        Engine::Proof => {
            let mode = if c.order() >= forest_threshold(f, h)? {
                Mode::Strict
            } else {
                Mode::BestEffort
            };
            match (Extractor { mode }).forest(c, f, h) {
                Ok(w) => Some(w),
                Err(ExtractError::Stuck { point, .. }) => search_witness(c, f, h).map(|mut w| {
                    w.trace
                        .insert(0, format!("argument stuck at {point}; oracle on the whole coloring"));
                    w
                }),
                Err(ExtractError::ProofGap(_)) => None,
                Err(e) => return Err(e),
            }
        }
    };
    Ok(w.filter(|w| w.verify(c, f, h)))
}

fn check_inputs(engine: Engine, n: usize, f: &ForestSpec, h: &CliqueUnion) -> Result<(), CampaignError> {
    if n == 0 || n > MAX_FAST_ORDER {
        return Err(CampaignError::BadOrder(n));
    }
    if engine == Engine::Proof {
        forest_threshold(f, h)?;
    }
    Ok(())
}

fn passes(engine: Engine, c: &TwoColoring, f: &ForestSpec, h: &CliqueUnion) -> bool {
    matches!(run_engine(engine, c, f, h), Ok(Some(_)))
}

pub fn exhaustive_verify(
    f: &ForestSpec,
    h: &CliqueUnion,
    n: usize,
    engine: Engine,
) -> Result<CampaignResult, CampaignError> {
    exhaustive_verify_capped(f, h, n, engine, DEFAULT_CAP_BITS)
}

pub fn exhaustive_verify_capped(
    f: &ForestSpec,
    h: &CliqueUnion,
    n: usize,
    engine: Engine,
    cap_bits: usize,
) -> Result<CampaignResult, CampaignError> {
    check_inputs(engine, n, f, h)?;
    let bits = choose2(n);
    if bits > cap_bits || bits >= 64 {
        return Err(CampaignError::CapExceeded { bits, cap: cap_bits });
    }
    let start = Instant::now();
    let total = 1u64 << bits;
    let (failures, first) = (0..total)
        .into_par_iter()
        .filter(|&i| !passes(engine, &TwoColoring::from_index(n, i), f, h))
        .fold(|| (0u64, u64::MAX), |(k, lo), i| (k + 1, lo.min(i)))
        .reduce(|| (0, u64::MAX), |a, b| (a.0 + b.0, a.1.min(b.1)));
    Ok(CampaignResult {
        mode: CampaignMode::Exhaustive,
        trials: total,
        failures,
        first_failure: (failures > 0).then(|| TwoColoring::from_index(n, first)),
        elapsed: start.elapsed(),
        seed: None,
    })
}

/// Coloring of sampled trial `trial` under `seed`.
pub fn sample_coloring(n: usize, seed: u64, trial: u64) -> TwoColoring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let words: Vec<u64> = (0..choose2(n).div_ceil(64)).map(|_| rng.next_u64()).collect();
    TwoColoring::from_pair_bits(n, &words)
}

pub fn sampled_verify(
    f: &ForestSpec,
    h: &CliqueUnion,
    n: usize,
    engine: Engine,
    trials: u64,
    seed: u64,
) -> Result<CampaignResult, CampaignError> {
    if trials == 0 {
        return Err(CampaignError::NoTrials);
    }
    check_inputs(engine, n, f, h)?;
    let start = Instant::now();
    let (failures, first) = (0..trials)
        .into_par_iter()
        .filter(|&t| !passes(engine, &sample_coloring(n, seed, t), f, h))
        .fold(|| (0u64, u64::MAX), |(k, lo), t| (k + 1, lo.min(t)))
        .reduce(|| (0, u64::MAX), |a, b| (a.0 + b.0, a.1.min(b.1)));
    Ok(CampaignResult {
        mode: CampaignMode::Sampled,
        trials,
        failures,
        first_failure: (failures > 0).then(|| sample_coloring(n, seed, first)),
        elapsed: start.elapsed(),
        seed: Some(seed),
    })
}

/// Colorings on which the two engines disagree about PASS/FAIL.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agreement {
    pub trials: u64,
    pub disagreements: u64,
    pub first_disagreement: Option<TwoColoring>,
}

fn disagree(c: &TwoColoring, f: &ForestSpec, h: &CliqueUnion) -> bool {
    passes(Engine::Oracle, c, f, h) != passes(Engine::Proof, c, f, h)
}

/// Runs both engines on every coloring of `K_n`.
pub fn exhaustive_agreement(
    f: &ForestSpec,
    h: &CliqueUnion,
    n: usize,
) -> Result<Agreement, CampaignError> {
    check_inputs(Engine::Proof, n, f, h)?;
    let bits = choose2(n);
    if bits > DEFAULT_CAP_BITS {
        return Err(CampaignError::CapExceeded {
            bits,
            cap: DEFAULT_CAP_BITS,
        });
    }
    let total = 1u64 << bits;
    let (k, first) = (0..total)
        .into_par_iter()
        .filter(|&i| disagree(&TwoColoring::from_index(n, i), f, h))
        .fold(|| (0u64, u64::MAX), |(k, lo), i| (k + 1, lo.min(i)))
        .reduce(|| (0, u64::MAX), |a, b| (a.0 + b.0, a.1.min(b.1)));
    Ok(Agreement {
        trials: total,
        disagreements: k,
        first_disagreement: (k > 0).then(|| TwoColoring::from_index(n, first)),
    })
}

/// Runs both engines on the colorings of a sampled campaign.
pub fn sampled_agreement(
    f: &ForestSpec,
    h: &CliqueUnion,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<Agreement, CampaignError> {
    if trials == 0 {
        return Err(CampaignError::NoTrials);
    }
    check_inputs(Engine::Proof, n, f, h)?;
    let (k, first) = (0..trials)
        .into_par_iter()
        .filter(|&t| disagree(&sample_coloring(n, seed, t), f, h))
        .fold(|| (0u64, u64::MAX), |(k, lo), t| (k + 1, lo.min(t)))
        .reduce(|| (0, u64::MAX), |a, b| (a.0 + b.0, a.1.min(b.1)));
    Ok(Agreement {
        trials,
        disagreements: k,
        first_disagreement: (k > 0).then(|| sample_coloring(n, seed, first)),
    })
}
