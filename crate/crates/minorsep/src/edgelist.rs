//! Plain-text edge lists.
//!
//! ```text
//! # comments start with '#', anywhere on a line
//! p <n> <m>
//! <u> <v>        (m lines, 0-indexed)
//! ```
//!
//! Self-loops and repeated edges are accepted and dropped, so the written
//! form of a parsed graph is canonical: each edge once as `u v` with `u < v`,
//! in lexicographic order.

use std::fmt::Write as _;

use minorsep_core::Graph;

use crate::error::{CliError, Result};

pub fn read_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 3 || fields[0] != "p" {
                    return Err(CliError::parse(line_no, "expected header 'p <n> <m>'"));
                }
                let n = parse_count(fields[1], line_no)?;
                let m = parse_count(fields[2], line_no)?;
                if n > u32::MAX as usize {
                    return Err(CliError::parse(line_no, format!("vertex count {n} too large")));
                }
                header = Some((n, m));
            }
            Some((n, _)) => {
                if fields.len() != 2 {
                    return Err(CliError::parse(line_no, format!("expected 'u v', found {line:?}")));
                }
                let u = parse_count(fields[0], line_no)?;
                let v = parse_count(fields[1], line_no)?;
                if let Some(bad) = [u, v].into_iter().find(|&x| x >= n) {
                    return Err(CliError::parse(
                        line_no,
                        format!("vertex {bad} out of range for n = {n}"),
                    ));
                }
                edges.push((u, v));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| CliError::parse(last_line.max(1), "missing header 'p <n> <m>'"))?;
    if edges.len() != m {
        return Err(CliError::parse(
            last_line,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::new(n, edges)?)
}

fn parse_count(s: &str, line: usize) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|e| CliError::parse(line, format!("bad integer {s:?}: {e}")))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    let _ = writeln!(out, "p {} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
