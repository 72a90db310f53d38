//! Text formats: the `n m` edge list and Graphviz DOT.
//!
//! Edge list: first non-comment line `n m`, then `m` lines `u v` (arc `u -> v`),
//! 0-indexed. Lines starting with `#` and blank lines are skipped.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Digraph, DigraphError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("expected {expected} arcs, found {found}")]
    ArcCount { expected: usize, found: usize },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), FormatError> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, FormatError> {
        let tok = it.next().ok_or_else(|| FormatError::Parse {
            line: line_no,
            message: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| FormatError::Parse {
            line: line_no,
            message: format!("`{tok}` is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(FormatError::Parse {
            line: line_no,
            message: format!("unexpected trailing token `{extra}`"),
        });
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or(FormatError::Parse {
        line: 0,
        message: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(hl, header)?;
    let arcs = lines
        .map(|(i, l)| parse_pair(i, l))
        .collect::<Result<Vec<_>, _>>()?;
    if arcs.len() != m {
        return Err(FormatError::ArcCount {
            expected: m,
            found: arcs.len(),
        });
    }
    Ok(Digraph::from_arcs(n, arcs)?)
}

pub fn write_edge_list(d: &Digraph) -> String {
    let mut s = format!("{} {}\n", d.vertex_count(), d.arc_count());
    for (u, v) in d.arcs() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// DOT rendering; with `collapse_digons` each digon becomes one `dir=both` edge.
pub fn write_dot(d: &Digraph, name: &str, collapse_digons: bool) -> String {
    let mut s = format!("digraph {name} {{\n");
    for v in 0..d.vertex_count() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in d.arcs() {
        if collapse_digons && d.has_arc(v, u) {
            if u < v {
                let _ = writeln!(s, "  {u} -> {v} [dir=both];");
            }
        } else {
            let _ = writeln!(s, "  {u} -> {v};");
        }
    }
    s.push_str("}\n");
    s
}
