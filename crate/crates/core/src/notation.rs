//! Text notation for forests and clique unions, and the coloring file
//! format.
//!
//! Targets: `K5`, `2K4`, `K3+K2` (also `K_3`, `∪` as separator).
//! Forests: `P4`, `2P3`, `P3+P4`, `star:5` (a star on 5 vertices),
//! `K1,3` (the same star by its part sizes), `tree:<file>` (edge list).

use std::path::Path;

use thiserror::Error;

use crate::formulas::{CliqueUnion, ForestSpec, FormulaError};
use crate::graph::{choose2, GraphError, TwoColoring, MAX_FAST_ORDER};
use crate::tree::{Tree, TreeError};

#[derive(Debug, Error)]
pub enum NotationError {
    #[error("cannot parse {0:?}")]
    Syntax(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("coloring file: {0}")]
    Coloring(String),
}

fn terms(spec: &str) -> impl Iterator<Item = String> + '_ {
    spec.split(['+', '∪']).map(|t| t.chars().filter(|c| !c.is_whitespace()).collect())
}

/// Splits a leading repeat count off a term: `2K4` gives `(2, "K4")`.
fn count_prefix(term: &str) -> Result<(usize, &str), NotationError> {
    let digits = term.len() - term.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 {
        return Ok((1, term));
    }
    let k: usize = term[..digits]
        .parse()
        .map_err(|_| NotationError::Syntax(term.to_string()))?;
    if k == 0 {
        return Err(NotationError::Syntax(term.to_string()));
    }
    Ok((k, &term[digits..]))
}

fn number(s: &str, whole: &str) -> Result<usize, NotationError> {
    s.trim_start_matches('_')
        .parse()
        .map_err(|_| NotationError::Syntax(whole.to_string()))
}

pub fn parse_target(spec: &str) -> Result<CliqueUnion, NotationError> {
    let mut sizes = Vec::new();
    for term in terms(spec) {
        let (k, rest) = count_prefix(&term)?;
        let size = rest
            .strip_prefix('K')
            .ok_or_else(|| NotationError::Syntax(term.clone()))?;
        let size = number(size, &term)?;
        sizes.extend(std::iter::repeat_n(size, k));
    }
    Ok(CliqueUnion::new(sizes)?)
}

/// Parses a forest; `tree:` paths are read relative to the working
/// directory.
pub fn parse_forest(spec: &str) -> Result<ForestSpec, NotationError> {
    let mut comps = Vec::new();
    for term in terms(spec) {
        let (k, rest) = count_prefix(&term)?;
        let t = parse_tree_term(rest, &term)?;
        comps.extend(std::iter::repeat_n(t, k));
    }
    Ok(ForestSpec::new(comps)?)
}

fn parse_tree_term(rest: &str, whole: &str) -> Result<Tree, NotationError> {
    if let Some(path) = rest.strip_prefix("tree:") {
        return read_tree(path);
    }
    if let Some(n) = rest.strip_prefix("star:") {
        return Ok(Tree::star(positive(number(n, whole)?, whole)?));
    }
    if let Some(parts) = rest.strip_prefix('K') {
        let (one, k) = parts
            .trim_start_matches('_')
            .trim_matches(['{', '}'])
            .split_once(',')
            .ok_or_else(|| NotationError::Syntax(whole.to_string()))?;
        if one != "1" {
            return Err(NotationError::Syntax(whole.to_string()));
        }
        return Ok(Tree::star(number(k, whole)? + 1));
    }
    if let Some(n) = rest.strip_prefix('P') {
        return Ok(Tree::path(positive(number(n, whole)?, whole)?));
    }
    Err(NotationError::Syntax(whole.to_string()))
}

fn positive(n: usize, whole: &str) -> Result<usize, NotationError> {
    if n == 0 {
        return Err(NotationError::Syntax(whole.to_string()));
    }
    Ok(n)
}

pub fn read_tree(path: impl AsRef<Path>) -> Result<Tree, NotationError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| NotationError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Tree::parse(&text)?)
}

/// A single tree from either an edge-list file or a one-component spec.
pub fn parse_tree_arg(arg: &str) -> Result<Tree, NotationError> {
    if Path::new(arg).is_file() {
        return read_tree(arg);
    }
    let f = parse_forest(arg)?;
    match f.components() {
        [t] => Ok(t.clone()),
        _ => Err(NotationError::Syntax(format!("{arg} is not a single tree"))),
    }
}

/// Line 1 the order, line 2 one `R`/`B` per pair in pair-index order.
pub fn write_coloring(c: &TwoColoring) -> String {
    format!("{}\n{}\n", c.order(), c.to_rb_string())
}

pub fn read_coloring(text: &str) -> Result<TwoColoring, NotationError> {
    let bad = |msg: &str| NotationError::Coloring(msg.to_string());
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| bad("empty file"))?
        .parse()
        .map_err(|_| bad("first line must be the order"))?;
    if n > MAX_FAST_ORDER {
        return Err(NotationError::Coloring(GraphError::TooLarge(n).to_string()));
    }
    let rb = lines.next().unwrap_or("");
    if rb.len() != choose2(n) {
        return Err(NotationError::Coloring(format!(
            "expected {} pair colors, found {}",
            choose2(n),
            rb.len()
        )));
    }
    let mut words = vec![0u64; choose2(n).div_ceil(64)];
    for (k, ch) in rb.chars().enumerate() {
        match ch {
            'R' => words[k / 64] |= 1 << (k % 64),
            'B' => {}
            _ => return Err(NotationError::Coloring(format!("bad pair color {ch:?}"))),
        }
    }
    if lines.next().is_some() {
        return Err(bad("trailing content"));
    }
    Ok(TwoColoring::from_pair_bits(n, &words))
}
