//! Edge-list and DIMACS codecs.
//!
//! Edge-list format: a header line `n m`, then `m` lines `u v` with 0-based
//! ids. Blank lines and `#` comments are ignored. Repeated edges collapse.
//!
//! DIMACS (read only): `c` comments, `p edge n m`, `e u v` with 1-based ids.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::Path;

use halllab_core::Graph;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

fn significant(text: &str, comment: fn(&str) -> bool) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(move |(_, l)| !l.is_empty() && !comment(l))
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, CliError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} {tok:?}")))
}

fn check_edge(n: usize, u: usize, v: usize, line: usize) -> Result<(), CliError> {
    if u >= n || v >= n {
        return Err(parse_err(line, format!("edge ({u},{v}) out of range for n = {n}")));
    }
    if u == v {
        return Err(parse_err(line, format!("self-loop ({u},{v})")));
    }
    Ok(())
}

pub fn parse_edge_list(text: &str) -> Result<Graph, CliError> {
    let mut lines = significant(text, |l| l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header \"n m\""))?;
    let mut toks = header.split_whitespace();
    let n = number(toks.next(), hline, "vertex count")?;
    let m = number(toks.next(), hline, "edge count")?;
    if toks.next().is_some() {
        return Err(parse_err(hline, "header has more than two fields"));
    }
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (line, l) in lines {
        let mut toks = l.split_whitespace();
        let u = number(toks.next(), line, "vertex")?;
        let v = number(toks.next(), line, "vertex")?;
        if toks.next().is_some() {
            return Err(parse_err(line, "edge line has more than two fields"));
        }
        check_edge(n, u, v, line)?;
        edges.push((u, v));
        last = line;
    }
    if edges.len() != m {
        return Err(parse_err(last, format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Graph, CliError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (line, l) in significant(text, |l| l.starts_with('c')) {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                match toks.next() {
                    Some("edge" | "col") => {}
                    other => return Err(parse_err(line, format!("unsupported problem type {other:?}"))),
                }
                n = Some(number(toks.next(), line, "vertex count")?);
                number(toks.next(), line, "edge count")?;
            }
            Some("e") => {
                let n = n.ok_or_else(|| parse_err(line, "edge before problem line"))?;
                let u = number(toks.next(), line, "vertex")?;
                let v = number(toks.next(), line, "vertex")?;
                if u == 0 || v == 0 {
                    return Err(parse_err(line, "DIMACS vertices are 1-based"));
                }
                check_edge(n, u - 1, v - 1, line)?;
                edges.push((u - 1, v - 1));
            }
            Some(tag) => return Err(parse_err(line, format!("unknown line type {tag:?}"))),
            None => {}
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing problem line"))?;
    Ok(Graph::new(n, &edges)?)
}

/// DIMACS when the first significant line is a `c` or `p` line.
pub fn detect_format(text: &str) -> Format {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with('c') || l.starts_with('p') => Format::Dimacs,
        _ => Format::EdgeList,
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, CliError> {
    match detect_format(text) {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

/// Reads a graph from `path`, or from standard input when `path` is `-`.
pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read_text(path)?;
    parse_graph(&text).map_err(|e| e.in_file(path))
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io { path: "<stdin>".into(), source: e })?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
    }
}

/// SHA-256 of the canonical edge list, lowercase hex.
pub fn graph_sha256(g: &Graph) -> String {
    let digest = Sha256::digest(write_edge_list(g).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
