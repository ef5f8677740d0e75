//! Edge-list text format and DOT export.
//!
//! ```text
//! # comment
//! n m
//! u v      (m lines, 0 <= u, v < n, u != v)
//! ```

use std::fmt::Write as _;

use super::Graph;
use crate::coloring::EdgeColoring;
use crate::error::{GraphError, ParseError, ParseErrorKind};

const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#000000", "#aec7e8",
];

fn err(line: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
    ParseError { line, kind: kind.into() }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let mut fields = text.split_whitespace();
    let malformed = || err(line, ParseErrorKind::Malformed(text.to_string()));
    let a = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
    let b = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
    if fields.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| err(1, ParseErrorKind::MissingHeader))?;
    let (n, m) = parse_pair(header_line, header)?;
    if n == 0 {
        return Err(err(header_line, GraphError::NoVertices));
    }
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        let (u, v) = parse_pair(line, body)?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(err(line, GraphError::VertexOutOfRange { vertex, n }));
            }
        }
        if u == v {
            return Err(err(line, GraphError::SelfLoop(u)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(line, GraphError::DuplicateEdge(u.min(v), u.max(v))));
        }
        if edges.len() == m {
            return Err(err(line, ParseErrorKind::EdgeCount { expected: m, found: m + 1 }));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(last_line, ParseErrorKind::EdgeCount { expected: m, found: edges.len() }));
    }
    Graph::new(n, edges).map_err(|e| err(last_line, e))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Undirected DOT; with a coloring, edges carry `color` and `label` attributes.
pub fn to_dot(g: &Graph, coloring: Option<&EdgeColoring>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v};");
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match coloring.and_then(|c| c.color(e)) {
            Some(c) => {
                let hex = PALETTE[(c as usize - 1) % PALETTE.len()];
                let _ = writeln!(out, "  {u} -- {v} [color=\"{hex}\", label=\"{c}\"];");
            }
            None => {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path_and_triangle() {
        assert_eq!(parse_graph("3 2\n0 1\n1 2").unwrap(), Graph::path(3));
        let c3 = parse_graph("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(c3.edges(), &[(0, 1), (1, 2), (0, 2)]);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let g = parse_graph("# a path\n\n3 2\n  # inline\n1 0\n\n2 1\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_graph("3 2\n0 1\n0 1").unwrap_err();
        assert_eq!(e, ParseError { line: 3, kind: GraphError::DuplicateEdge(0, 1).into() });
        let e = parse_graph("3 2\n0 1\n2 2").unwrap_err();
        assert_eq!(e, ParseError { line: 3, kind: GraphError::SelfLoop(2).into() });
        let e = parse_graph("3 1\n\n0 3").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::Graph(GraphError::VertexOutOfRange { .. })));
        let e = parse_graph("3 1\n0 x").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::Malformed(_)));
        let e = parse_graph("3 2\n0 1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EdgeCount { expected: 2, found: 1 });
        let e = parse_graph("3 1\n0 1\n1 2").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(parse_graph("# nothing\n").unwrap_err().kind, ParseErrorKind::MissingHeader);
        assert!(parse_graph("a b").is_err());
        assert!(parse_graph("3 1\n0 1 2").is_err());
    }

    #[test]
    fn write_then_parse() {
        let g = Graph::petersen();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn dot_export() {
        let g = Graph::path(3);
        let plain = to_dot(&g, None);
        assert!(plain.starts_with("graph G {"));
        assert!(plain.contains("0 -- 1;"));
        let c = EdgeColoring::new(vec![1, 2]).unwrap();
        let colored = to_dot(&g, Some(&c));
        assert!(colored.contains("1 -- 2 [color=\"#d62728\", label=\"2\"];"));
    }
}
