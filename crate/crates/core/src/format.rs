//! Text formats: the poset file, the ideals file and DOT output.
//!
//! Poset file:
//!
//! ```text
//! n 4
//! # comment
//! 0 1
//! 1 2
//! ```
//!
//! The first non-comment line is `n <count>`; every other non-comment line is
//! `<u> <v>` asserting `u < v`. `#` starts a comment. The relation is
//! transitively closed on load. A comment of the form `#label <i> <text>`
//! attaches a display label to element `i`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// A poset as read from a file, with optional element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetDoc {
    pub poset: Poset,
    pub labels: Option<Vec<String>>,
}

impl PosetDoc {
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(labels) => labels[x].clone(),
            None => x.to_string(),
        }
    }
}

pub fn parse_poset(text: &str) -> Result<PosetDoc> {
    let mut count: Option<usize> = None;
    let mut pairs = Vec::new();
    let mut label_lines: Vec<(usize, usize, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if let Some(rest) = raw.trim_start().strip_prefix("#label") {
            let rest = rest.trim();
            let (idx, label) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let idx = idx
                .parse::<usize>()
                .map_err(|_| Error::parse_at(line_no, 1, format!("bad label index `{idx}`")))?;
            label_lines.push((line_no, idx, label.trim().to_string()));
            continue;
        }
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let column = raw.find(fields[0]).unwrap_or(0) + 1;
        match count {
            None => {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(Error::parse_at(
                        line_no,
                        column,
                        "expected `n <count>` header",
                    ));
                }
                count = Some(parse_index(fields[1], line_no, column)?);
            }
            Some(_) => {
                if fields.len() != 2 {
                    return Err(Error::parse_at(line_no, column, "expected `<u> <v>`"));
                }
                let u = parse_index(fields[0], line_no, column)?;
                let v = parse_index(fields[1], line_no, column)?;
                pairs.push((u, v));
            }
        }
    }

    let n = count.ok_or_else(|| Error::parse_at(1, 1, "missing `n <count>` header"))?;
    let poset = Poset::from_relations(n, &pairs)?;
    let labels = if label_lines.is_empty() {
        None
    } else {
        let mut labels: Vec<String> = (0..n).map(|x| x.to_string()).collect();
        for (line_no, idx, label) in label_lines {
            if idx >= n {
                return Err(Error::parse_at(
                    line_no,
                    1,
                    format!("label index {idx} out of range"),
                ));
            }
            labels[idx] = label;
        }
        Some(labels)
    };
    Ok(PosetDoc { poset, labels })
}

fn parse_index(s: &str, line: usize, column: usize) -> Result<usize> {
    s.parse::<usize>().map_err(|_| {
        Error::parse_at(
            line,
            column,
            format!("expected a nonnegative integer, got `{s}`"),
        )
    })
}

/// Writes the cover relation of `p`; loading the result gives back `p`.
pub fn write_poset(p: &Poset, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", p.len()).unwrap();
    if let Some(labels) = labels {
        for (i, l) in labels.iter().enumerate() {
            writeln!(out, "#label {i} {l}").unwrap();
        }
    }
    for (u, v) in p.cover_pairs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Ideals file: one ideal per line as space-separated indices, `#` comments.
pub fn parse_ideals(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut ideals = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let ideal = content
            .split_whitespace()
            .map(|f| parse_index(f, i + 1, raw.find(f).unwrap_or(0) + 1))
            .collect::<Result<Vec<_>>>()?;
        ideals.push(ideal);
    }
    Ok(ideals)
}

pub fn write_ideals(ideals: &[Vec<usize>]) -> String {
    ideals
        .iter()
        .map(|ideal| {
            let fields: Vec<String> = ideal.iter().map(usize::to_string).collect();
            fields.join(" ") + "\n"
        })
        .collect()
}

/// Hasse diagram in DOT. With `with_inc`, incomparable pairs are drawn as
/// dashed undirected edges.
pub fn to_dot(p: &Poset, labels: Option<&[String]>, with_inc: bool) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for x in 0..p.len() {
        let label = labels.map_or_else(|| x.to_string(), |l| l[x].clone());
        writeln!(out, "  {x} [label=\"{}\"];", label.replace('"', "\\\"")).unwrap();
    }
    for (u, v) in p.cover_pairs() {
        writeln!(out, "  {u} -> {v};").unwrap();
    }
    if with_inc {
        for x in 0..p.len() {
            for y in x + 1..p.len() {
                if p.incomparable(x, y) {
                    writeln!(
                        out,
                        "  {x} -> {y} [dir=none, style=dashed, constraint=false];"
                    )
                    .unwrap();
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
