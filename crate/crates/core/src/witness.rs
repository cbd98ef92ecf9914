use std::fmt::Write as _;

use crate::formulas::{CliqueUnion, ForestSpec};
use crate::graph::{color_subgraph, verify_embedding, Color, Embedding, Graph, TwoColoring};

/// An explicit red forest or blue clique-union embedding, with the trace of
/// how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub side: Color,
    pub embedding: Embedding,
    pub trace: Vec<String>,
}

impl Witness {
    pub fn new(side: Color, map: Vec<usize>, trace: Vec<String>) -> Self {
        Witness {
            side,
            embedding: Embedding::new(map),
            trace,
        }
    }

    /// Checks the embedding against `c`: red side against `red_pattern`,
    /// blue side against `h`.
    pub fn verify_pattern(&self, c: &TwoColoring, red_pattern: &Graph, h: &CliqueUnion) -> bool {
        let pattern = match self.side {
            Color::Red => red_pattern.clone(),
            Color::Blue => h.graph(),
        };
        verify_embedding(&pattern, &color_subgraph(c, self.side), &self.embedding)
    }

    pub fn verify(&self, c: &TwoColoring, f: &ForestSpec, h: &CliqueUnion) -> bool {
        self.verify_pattern(c, &f.graph(), h)
    }

    /// `RED`/`BLUE`, one `p -> h` line per pattern vertex, then the trace.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.side);
        for (p, h) in self.embedding.map.iter().enumerate() {
            let _ = writeln!(s, "{p} -> {h}");
        }
        s.push_str("# trace:\n");
        for t in &self.trace {
            let _ = writeln!(s, "# {t}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Witness, String> {
        let mut lines = text.lines();
        let side = match lines.next().map(str::trim) {
            Some("RED") => Color::Red,
            Some("BLUE") => Color::Blue,
            other => return Err(format!("expected RED or BLUE, got {other:?}")),
        };
        let mut map = Vec::new();
        let mut trace = Vec::new();
        let mut in_trace = false;
        for line in lines {
            if line == "# trace:" {
                in_trace = true;
            } else if in_trace {
                trace.push(line.strip_prefix("# ").unwrap_or(line).to_string());
            } else {
                let (p, h) = line
                    .split_once("->")
                    .ok_or_else(|| format!("malformed map line {line:?}"))?;
                let p: usize = p.trim().parse().map_err(|_| format!("bad vertex in {line:?}"))?;
                let h: usize = h.trim().parse().map_err(|_| format!("bad vertex in {line:?}"))?;
                if p != map.len() {
                    return Err(format!("map lines out of order at {line:?}"));
                }
                map.push(h);
            }
        }
        Ok(Witness::new(side, map, trace))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let w = Witness::new(
            Color::Blue,
            vec![4, 2, 0, 1],
            vec!["first".into(), "second step".into()],
        );
        let text = w.to_text();
        assert!(text.starts_with("BLUE\n0 -> 4\n"));
        assert_eq!(Witness::parse(&text).unwrap(), w);
        assert!(Witness::parse("GREEN\n").is_err());
    }
}
