//! Text format for colored graphs.
//!
//! ```text
//! trg <t> <n> <m>
//! <u> <v> <color>     # m lines, u < v, 0-based vertices, 1-based colors
//! ```
//!
//! Blank lines and `#` comments are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::graph::{ColoredGraph, Edge, GraphError};

/// Strips comments and blank lines, yielding `(1-based line number, content)`.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, GraphError> {
    tok.parse()
        .map_err(|_| GraphError::Parse { line, msg: format!("expected a non-negative integer, got {tok:?}") })
}

/// Parses the header and edge lines; returns the graph and any trailing lines.
pub(crate) fn parse_graph_prefix(text: &str) -> Result<(ColoredGraph, Vec<(usize, &str)>), GraphError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| GraphError::MalformedHeader("empty input".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "trg" {
        return Err(GraphError::MalformedHeader(header.to_string()));
    }
    let t = parse_usize(toks[1], hline).map_err(|_| GraphError::MalformedHeader(header.into()))?;
    let n = parse_usize(toks[2], hline).map_err(|_| GraphError::MalformedHeader(header.into()))?;
    let m = parse_usize(toks[3], hline).map_err(|_| GraphError::MalformedHeader(header.into()))?;
    if t == 0 {
        return Err(GraphError::NoColors);
    }
    let mut edges = Vec::with_capacity(m);
    let mut rest = Vec::new();
    for (ln, line) in lines {
        if edges.len() == m {
            rest.push((ln, line));
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            if toks.first().is_some_and(|t| t.parse::<usize>().is_err()) {
                rest.push((ln, line));
                continue;
            }
            return Err(GraphError::Parse { line: ln, msg: "expected `<u> <v> <color>`".into() });
        }
        let u = parse_usize(toks[0], ln)?;
        let v = parse_usize(toks[1], ln)?;
        let c = parse_usize(toks[2], ln)?;
        if u >= v {
            return Err(GraphError::Parse { line: ln, msg: format!("expected u < v, got {u} {v}") });
        }
        edges.push(Edge { u, v, color: c });
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok((ColoredGraph::new(t, n, edges)?, rest))
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph, GraphError> {
    let (g, rest) = parse_graph_prefix(text)?;
    if let Some(&(line, content)) = rest.first() {
        return Err(GraphError::Parse { line, msg: format!("unexpected trailing content {content:?}") });
    }
    Ok(g)
}

pub fn format_graph(g: &ColoredGraph) -> String {
    let mut s = String::with_capacity(16 * (g.edge_count() + 1));
    writeln!(s, "trg {} {} {}", g.colors(), g.vertex_count(), g.edge_count()).unwrap();
    for e in g.edges() {
        writeln!(s, "{} {} {}", e.u, e.v, e.color).unwrap();
    }
    s
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<ColoredGraph, GraphError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn save_graph(g: &ColoredGraph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    std::fs::write(path, format_graph(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::complete;

    #[test]
    fn k5_round_trip() {
        let g = complete(5, 1, 1);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("k5.trg");
        save_graph(&g, &path).unwrap();
        assert_eq!(load_graph(&path).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# a triangle\ntrg 1 3 3\n\n0 1 1\n1 2 1 # last\n0 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn duplicate_edge() {
        assert_eq!(parse_graph("trg 1 3 2\n0 1 1\n0 1 1\n"), Err(GraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn color_zero() {
        assert_eq!(
            parse_graph("trg 1 3 1\n0 1 0\n"),
            Err(GraphError::ColorOutOfRange { color: 0, t: 1 })
        );
    }

    #[test]
    fn bad_headers() {
        assert!(matches!(parse_graph("graph 1 2 0\n"), Err(GraphError::MalformedHeader(_))));
        assert!(matches!(parse_graph("trg 1 2\n"), Err(GraphError::MalformedHeader(_))));
        assert!(matches!(parse_graph("trg 1 3 1\n0 5 1\n"), Err(GraphError::VertexOutOfRange { .. })));
        assert!(matches!(parse_graph("trg 1 3 2\n0 1 1\n"), Err(GraphError::EdgeCount { .. })));
    }
}
