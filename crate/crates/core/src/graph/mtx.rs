use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

/// A graph read from a Matrix Market file, reduced to its largest component.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// Original (0-based) row index of every retained node.
    pub original_ids: Vec<usize>,
    /// Order of the matrix as declared in the size line.
    pub declared_nodes: usize,
}

impl ParsedGraph {
    /// Nodes discarded because they fell outside the largest component.
    pub fn dropped_nodes(&self) -> usize {
        self.declared_nodes - self.graph.node_count()
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a Matrix Market coordinate file as an unweighted undirected graph.
///
/// Any field type (`pattern`, `integer`, `real`, `complex`) and symmetry is
/// accepted; values are ignored. Entries are symmetrized, self-loops and
/// duplicates dropped, and only the largest connected component is kept.
pub fn parse_matrix_market(text: &str) -> Result<ParsedGraph> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() < 5 || tokens[0] != "%%matrixmarket" {
        return Err(parse_err(1, "missing %%MatrixMarket header"));
    }
    if tokens[1] != "matrix" {
        return Err(parse_err(1, format!("unsupported object '{}'", tokens[1])));
    }
    if tokens[2] != "coordinate" {
        return Err(parse_err(1, format!("unsupported format '{}', expected coordinate", tokens[2])));
    }
    if !matches!(tokens[3].as_str(), "pattern" | "integer" | "real" | "complex") {
        return Err(parse_err(1, format!("unknown field '{}'", tokens[3])));
    }
    if !matches!(tokens[4].as_str(), "general" | "symmetric" | "skew-symmetric" | "hermitian") {
        return Err(parse_err(1, format!("unknown symmetry '{}'", tokens[4])));
    }

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_line, size) = body.next().ok_or_else(|| parse_err(1, "missing size line"))?;
    let dims = size
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| parse_err(size_line, format!("bad size line: {e}")))?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(parse_err(size_line, "size line must have three integers"));
    };
    if rows != cols {
        return Err(parse_err(size_line, format!("matrix is {rows}x{cols}, not square")));
    }

    let mut edges = Vec::with_capacity(nnz);
    for (line, entry) in body.by_ref().take(nnz) {
        let mut it = entry.split_whitespace();
        let mut index = |what: &str| -> Result<usize> {
            let tok = it.next().ok_or_else(|| parse_err(line, format!("missing {what}")))?;
            let v: usize = tok.parse().map_err(|_| parse_err(line, format!("bad {what} '{tok}'")))?;
            if v == 0 || v > rows {
                return Err(parse_err(line, format!("{what} {v} outside 1..={rows}")));
            }
            Ok(v - 1)
        };
        let r = index("row")?;
        let c = index("column")?;
        edges.push((r, c));
    }
    if edges.len() != nnz {
        return Err(parse_err(size_line, format!("declared {nnz} entries, found {}", edges.len())));
    }

    if rows == 0 || edges.iter().all(|&(r, c)| r == c) {
        return Err(Error::EmptyGraph);
    }
    let (graph, original_ids) = Graph::largest_component(rows, edges)?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let parsed = ParsedGraph { graph, original_ids, declared_nodes: rows };
    if parsed.dropped_nodes() > 0 {
        log::warn!(
            "kept largest component: {} of {} nodes ({} dropped)",
            parsed.graph.node_count(),
            rows,
            parsed.dropped_nodes()
        );
    }
    Ok(parsed)
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<ParsedGraph> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix_market(&text)
}
