use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use ramsey_core::campaign::{exhaustive_verify, run_engine, sampled_verify, CampaignError, Engine};
use ramsey_core::constructions::{gj_blocks, gj_coloring, block_summary, verify_extremal};
use ramsey_core::extract::forest_threshold;
use ramsey_core::formulas::{
    beta, chromatic_data, gj_lower_p, ramsey_value, tree_value, union_upper, CliqueUnion,
    ForestSpec, FormulaError,
};
use ramsey_core::notation::{parse_forest, parse_target, parse_tree_arg, read_coloring, write_coloring};
use ramsey_core::tree::{apply_plan, is_isomorphic, plan_between, OpKind};

#[derive(Parser)]
#[command(name = "ramsey", version, about = "Ramsey numbers of trees and forests versus clique unions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    /// Red forest, e.g. `P3+P4`, `2P3`, `K1,3`, `star:5`, `tree:<file>`.
    #[arg(long)]
    forest: String,
    /// Blue clique union, e.g. `K3`, `2K3`, `K3+K2`.
    #[arg(long)]
    target: String,
}

impl Pair {
    fn parse(&self) -> Result<(ForestSpec, CliqueUnion)> {
        let f = parse_forest(&self.forest).with_context(|| format!("forest {:?}", self.forest))?;
        let h = parse_target(&self.target).with_context(|| format!("target {:?}", self.target))?;
        Ok((f, h))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print R(F, H) with its formula breakdown.
    Compute {
        #[command(flatten)]
        pair: Pair,
    },
    /// Build the extremal coloring on R - 1 vertices and certify it.
    Construct {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a red forest or blue target in a coloring file.
    Witness {
        #[arg(long)]
        coloring: PathBuf,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        engine: Engine,
    },
    /// Run an exhaustive or sampled campaign on K_N.
    Verify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long = "n")]
        n: usize,
        #[arg(long, conflicts_with_all = ["samples", "seed"], required_unless_present = "samples")]
        exhaustive: bool,
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
        #[arg(long)]
        engine: Engine,
    },
    /// Plan Stretch/Expand steps turning one tree into another.
    Transform {
        /// Edge-list file or single-tree spec.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Outcome {
    Success,
    Failure,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    print!("{out}");
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut String) -> Result<Outcome> {
    match command {
        Command::Compute { pair } => compute(&pair, out),
        Command::Construct { pair, out: file } => construct(&pair, file, out),
        Command::Witness {
            coloring,
            pair,
            engine,
        } => witness(&coloring, &pair, engine, out),
        Command::Verify {
            pair,
            n,
            exhaustive,
            samples,
            seed,
            engine,
        } => verify(&pair, n, exhaustive, samples.zip(seed), engine, out),
        Command::Transform { from, to, out: file } => transform(&from, &to, file, out),
    }
}

fn compute(pair: &Pair, out: &mut String) -> Result<Outcome> {
    let (f, h) = pair.parse()?;
    let cd = chromatic_data(&h);
    let value = match ramsey_value(&f, &h) {
        Ok(v) => v,
        Err(e @ FormulaError::UnsupportedTarget(_)) => {
            let (p, _) = gj_lower_p(&f, &h);
            bail!("{e}; only the lower bound p = {p} is known");
        }
        Err(e) => return Err(e.into()),
    };
    let (p, j0) = gj_lower_p(&f, &h);
    let upper = union_upper(&f, |j| tree_value(j, &h).ok())?;
    writeln!(out, "R = {value}")?;
    writeln!(out, "forest: {} ({} vertices)", pair.forest, f.order())?;
    writeln!(out, "target: {h} (chi = {}, s = {})", cd.chi, cd.s)?;
    writeln!(out, "p = {p}")?;
    writeln!(out, "j0 = {j0}")?;
    writeln!(out, "union bound = {upper}")?;
    for (j, k) in f.counts() {
        let r = tree_value(j, &h)?;
        writeln!(
            out,
            "order {j} x{k}: R(T_{j}, {h}) = {r}, beta = {}",
            beta(r, j, &h)
        )?;
    }
    Ok(Outcome::Success)
}

fn construct(pair: &Pair, file: Option<PathBuf>, out: &mut String) -> Result<Outcome> {
    let (f, h) = pair.parse()?;
    ramsey_value(&f, &h)?;
    let blocks = gj_blocks(&f, &h)?;
    let c = gj_coloring(&f, &h)?;
    let report = verify_extremal(&c, &f, &h);
    out.push_str(&block_summary(&blocks));
    out.push_str(&report.to_text());
    match file {
        Some(path) => std::fs::write(&path, write_coloring(&c))
            .with_context(|| format!("writing {}", path.display()))?,
        None => out.push_str(&write_coloring(&c)),
    }
    Ok(if report.certified {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn witness(path: &PathBuf, pair: &Pair, engine: Engine, out: &mut String) -> Result<Outcome> {
    let (f, h) = pair.parse()?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let c = read_coloring(&text)?;
    match run_engine(engine, &c, &f, &h)? {
        Some(w) => {
            out.push_str(&w.to_text());
            Ok(Outcome::Success)
        }
        None => {
            writeln!(out, "NONE")?;
            writeln!(out, "# no red {} and no blue {h} on {} vertices", pair.forest, c.order())?;
            Ok(Outcome::Failure)
        }
    }
}

fn verify(
    pair: &Pair,
    n: usize,
    exhaustive: bool,
    sampled: Option<(u64, u64)>,
    engine: Engine,
    out: &mut String,
) -> Result<Outcome> {
    let (f, h) = pair.parse()?;
    let result = match (exhaustive, sampled) {
        (true, _) => exhaustive_verify(&f, &h, n, engine),
        (false, Some((k, seed))) => sampled_verify(&f, &h, n, engine, k, seed),
        (false, None) => bail!("pass --exhaustive or --samples with --seed"),
    };
    let result = match result {
        Ok(r) => r,
        Err(e @ CampaignError::CapExceeded { .. }) => bail!("{e}"),
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "forest: {}", pair.forest)?;
    writeln!(out, "target: {h}")?;
    writeln!(out, "N: {n}")?;
    writeln!(out, "engine: {}", engine.name())?;
    if let Ok(t) = forest_threshold(&f, &h) {
        writeln!(out, "formula value: {t}")?;
    }
    out.push_str(&result.report());
    eprintln!("elapsed: {:.3} s", result.elapsed.as_secs_f64());
    Ok(if result.passed() {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn transform(from: &str, to: &str, file: Option<PathBuf>, out: &mut String) -> Result<Outcome> {
    let a = parse_tree_arg(from).with_context(|| format!("--from {from:?}"))?;
    let b = parse_tree_arg(to).with_context(|| format!("--to {to:?}"))?;
    let plan = plan_between(&a, &b)?;
    let reached = apply_plan(&a, &plan)?;
    let count = |k| plan.steps.iter().filter(|s| s.kind == k).count();
    let text = plan.to_text();
    match file {
        Some(path) => std::fs::write(&path, &text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => out.push_str(&text),
    }
    writeln!(
        out,
        "# {} steps: {} stretch, {} expand",
        plan.len(),
        count(OpKind::Stretch),
        count(OpKind::Expand)
    )?;
    let ok = is_isomorphic(&reached, &b);
    writeln!(out, "# result isomorphic to target: {ok}")?;
    Ok(if ok { Outcome::Success } else { Outcome::Failure })
}
