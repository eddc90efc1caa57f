//! The graph text format.
//!
//! ```text
//! # comment
//! vertices: a b c
//! edge a b        # m = 3
//! edge b c inf
//! ```

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{BondLabel, CoxeterGraph, DEFAULT_MAX_VERTICES};

/// A parsed graph and where each part came from (1-based lines).
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDocument {
    pub graph: CoxeterGraph,
    pub vertices_line: usize,
    /// Source line of each edge, keyed by `(i, j)` with `i < j`.
    pub edge_lines: HashMap<(usize, usize), usize>,
}

fn error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col, byte)),
            (true, Some((c, b))) => {
                out.push((c + 1, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        out.push((c + 1, &line[b..]));
    }
    out
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_label(line: usize, column: usize, s: &str) -> Result<BondLabel> {
    if s == "inf" {
        return Ok(BondLabel::INFINITY);
    }
    let m: u64 = s
        .parse()
        .map_err(|_| error(line, column, format!("expected a bond label (integer >= 3 or `inf`), found {s:?}")))?;
    if m == 2 {
        return Err(error(line, column, "bond label 2 means the generators commute; omit the edge"));
    }
    if m < 3 {
        return Err(error(line, column, format!("bond label {m} is below 3")));
    }
    u32::try_from(m)
        .map_err(|_| ())
        .and_then(|m| BondLabel::finite(m).map_err(|_| ()))
        .map_err(|_| error(line, column, format!("bond label {m} is out of range")))
}

pub fn parse_graph_text(text: &str) -> Result<GraphDocument> {
    let mut names: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut vertices_line = 0;
    let mut edges: Vec<(String, String, BondLabel)> = Vec::new();
    let mut edge_lines: HashMap<(usize, usize), usize> = HashMap::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        if let Some(rest) = head.strip_prefix("vertices:") {
            if names.is_some() {
                return Err(error(line_no, col, format!("second `vertices:` line (first was line {vertices_line})")));
            }
            let mut ids: Vec<(usize, &str)> = Vec::new();
            if !rest.is_empty() {
                ids.push((col + "vertices:".len(), rest));
            }
            ids.extend_from_slice(&toks[1..]);
            if ids.len() > DEFAULT_MAX_VERTICES {
                return Err(error(
                    line_no,
                    col,
                    format!("{} vertices exceeds the limit of {DEFAULT_MAX_VERTICES}", ids.len()),
                ));
            }
            let mut list = Vec::with_capacity(ids.len());
            for (c, id) in ids {
                if !valid_id(id) {
                    return Err(error(line_no, c, format!("invalid vertex identifier {id:?}")));
                }
                if index.insert(id.to_string(), list.len()).is_some() {
                    return Err(error(line_no, c, format!("duplicate vertex {id:?}")));
                }
                list.push(id.to_string());
            }
            names = Some(list);
            vertices_line = line_no;
        } else if head == "edge" {
            if names.is_none() {
                return Err(error(line_no, col, "edge before the `vertices:` line"));
            }
            if !(3..=4).contains(&toks.len()) {
                return Err(error(line_no, col, "expected `edge <u> <v> [m]`"));
            }
            let mut ends = [0usize; 2];
            for (k, &(c, id)) in toks[1..3].iter().enumerate() {
                if !valid_id(id) {
                    return Err(error(line_no, c, format!("invalid vertex identifier {id:?}")));
                }
                ends[k] = *index
                    .get(id)
                    .ok_or_else(|| error(line_no, c, format!("unknown vertex {id:?}")))?;
            }
            if ends[0] == ends[1] {
                return Err(error(line_no, toks[1].0, format!("self-loop on vertex {:?}", toks[1].1)));
            }
            let m = match toks.get(3) {
                Some(&(c, s)) => parse_label(line_no, c, s)?,
                None => BondLabel::THREE,
            };
            let key = (ends[0].min(ends[1]), ends[0].max(ends[1]));
            if let Some(prev) = edge_lines.insert(key, line_no) {
                return Err(error(
                    line_no,
                    col,
                    format!("duplicate edge {}-{} (first on line {prev})", toks[1].1, toks[2].1),
                ));
            }
            edges.push((toks[1].1.to_string(), toks[2].1.to_string(), m));
        } else {
            return Err(error(line_no, col, format!("expected `vertices:` or `edge`, found {head:?}")));
        }
    }
    let names = names.ok_or_else(|| error(1, 1, "missing `vertices:` line"))?;
    let graph = CoxeterGraph::new(names, edges).map_err(|e| error(vertices_line, 1, e.to_string()))?;
    Ok(GraphDocument {
        graph,
        vertices_line,
        edge_lines,
    })
}

/// Writes the text format: the vertex line, then one line per edge in
/// row-major order with its label spelled out.
pub fn serialize_graph(graph: &CoxeterGraph) -> String {
    let mut out = String::from("vertices:");
    for v in graph.vertices() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    for (i, j, m) in graph.edges() {
        out.push_str(&format!("edge {} {} {m}\n", graph.vertex_name(i), graph.vertex_name(j)));
    }
    out
}
