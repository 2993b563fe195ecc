//! Text formats for graphs and tree decompositions.
//!
//! Graphs use a DIMACS-like edge list with 1-based labels:
//!
//! ```text
//! c optional comment
//! p dss <n> <m>
//! e <u> <v>
//! ```
//!
//! With a header every label must lie in `1..=n` and exactly `m` edges must
//! follow. Without one, the vertex set is the set of labels used by edges;
//! labels are mapped to dense ids in increasing order.
//!
//! Decompositions list one bag per line as `b <node> <v1> <v2> ...` and tree
//! edges as `e <a> <b>`, all 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::treewidth::TreeDecomposition;

/// A parsed graph and the external label of every dense id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labels: Vec<u64>,
}

fn at(line: usize, e: Error) -> Error {
    Error::AtLine {
        line,
        source: Box::new(e),
    }
}

fn malformed(line: usize, msg: impl Into<String>) -> Error {
    at(line, Error::Malformed(msg.into()))
}

fn numbers<'a>(line: usize, fields: impl Iterator<Item = &'a str>) -> Result<Vec<u64>> {
    fields
        .map(|f| {
            f.parse::<u64>()
                .map_err(|_| malformed(line, format!("expected a non-negative integer, found '{f}'")))
        })
        .collect()
}

/// Content lines with their 1-based line numbers; blank and `c` lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first() {
            None | Some(&"c") => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, u64, u64)> = Vec::new();
    for (line, fields) in content_lines(text) {
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(malformed(line, "second problem line"));
                }
                if !edges.is_empty() {
                    return Err(malformed(line, "problem line after edges"));
                }
                if fields.len() != 4 || !matches!(fields[1], "dss" | "edge") {
                    return Err(malformed(line, "expected 'p dss <n> <m>'"));
                }
                let nm = numbers(line, fields[2..].iter().copied())?;
                header = Some((nm[0] as usize, nm[1] as usize));
            }
            "e" => {
                if fields.len() != 3 {
                    return Err(malformed(line, "expected 'e <u> <v>'"));
                }
                let uv = numbers(line, fields[1..].iter().copied())?;
                edges.push((line, uv[0], uv[1]));
            }
            other => return Err(malformed(line, format!("unknown line type '{other}'"))),
        }
    }

    let labels: Vec<u64> = match header {
        Some((n, m)) => {
            if edges.len() != m {
                return Err(Error::Malformed(format!(
                    "header declares {m} edges but {} were given",
                    edges.len()
                )));
            }
            if let Some(&(line, u, v)) = edges
                .iter()
                .find(|&&(_, u, v)| u == 0 || v == 0 || u > n as u64 || v > n as u64)
            {
                let bad = if u == 0 || u > n as u64 { u } else { v };
                return Err(malformed(line, format!("label {bad} outside 1..={n}")));
            }
            (1..=n as u64).collect()
        }
        None => edges
            .iter()
            .flat_map(|&(_, u, v)| [u, v])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    };
    let id: BTreeMap<u64, Vertex> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    let mut seen = BTreeSet::new();
    let mut dense = Vec::with_capacity(edges.len());
    for &(line, u, v) in &edges {
        if u == v {
            return Err(at(line, Error::SelfLoop(u as usize)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(at(line, Error::DuplicateEdge(u as usize, v as usize)));
        }
        dense.push((id[&u], id[&v]));
    }
    let graph = Graph::from_edges(labels.len(), dense)?;
    Ok(ParsedGraph { graph, labels })
}

/// Writes `g` with a header and 1-based labels; `comments` become `c` lines.
pub fn write_graph(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            writeln!(out, "c {line}").unwrap();
        }
    }
    writeln!(out, "p dss {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<TreeDecomposition> {
    let mut bags: BTreeMap<u64, Vec<Vertex>> = BTreeMap::new();
    let mut edges = Vec::new();
    for (line, fields) in content_lines(text) {
        match fields[0] {
            "b" => {
                let nums = numbers(line, fields[1..].iter().copied())?;
                let Some((&node, members)) = nums.split_first() else {
                    return Err(malformed(line, "expected 'b <node> <v1> ...'"));
                };
                if node == 0 || members.contains(&0) {
                    return Err(malformed(line, "node ids and vertices are 1-based"));
                }
                let bag = members.iter().map(|&v| (v - 1) as Vertex).collect();
                if bags.insert(node, bag).is_some() {
                    return Err(malformed(line, format!("bag {node} given twice")));
                }
            }
            "e" => {
                if fields.len() != 3 {
                    return Err(malformed(line, "expected 'e <a> <b>'"));
                }
                let ab = numbers(line, fields[1..].iter().copied())?;
                if ab.contains(&0) {
                    return Err(malformed(line, "node ids are 1-based"));
                }
                edges.push(((ab[0] - 1) as usize, (ab[1] - 1) as usize));
            }
            other => return Err(malformed(line, format!("unknown line type '{other}'"))),
        }
    }
    if bags.keys().copied().ne(1..=bags.len() as u64) {
        return Err(Error::Malformed("bag ids must be exactly 1..=k".into()));
    }
    TreeDecomposition::new(bags.into_values().collect(), edges)
}

pub fn write_decomposition(t: &TreeDecomposition) -> String {
    let mut out = String::new();
    for (i, bag) in t.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in t.edges() {
        writeln!(out, "e {} {}", a + 1, b + 1).unwrap();
    }
    out
}
