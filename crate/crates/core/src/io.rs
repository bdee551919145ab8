//! Edge-list text format.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub fn load_graph<R: Read>(mut reader: R) -> Result<Graph> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_graph(&text)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut data_lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

    let (header_line, header) = data_lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing \"n m\" header".into(),
    })?;
    let [n, m] = parse_pair(header_line, header)?;

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    let mut last_line = header_line;
    for (line, text) in data_lines {
        let [u, v] = parse_pair(line, text)?;
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "line {line}: vertex id out of range 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("line {line}: loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidGraph(format!(
                "line {line}: duplicate edge ({}, {})",
                u.min(v),
                u.max(v)
            )));
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: usize, text: &str) -> Result<[Vertex; 2]> {
    let mut tokens = text.split_whitespace();
    let mut next = || -> Result<Vertex> {
        let tok = tokens.next().ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected two integers, got {text:?}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("not a non-negative integer: {tok:?}"),
        })
    };
    let pair = [next()?, next()?];
    if tokens.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: format!("expected two integers, got {text:?}"),
        });
    }
    Ok(pair)
}

/// Serializes `g` with its edges in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.edge_count() + 1));
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
