//! Plain-text graph files and DOT export.
//!
//! ```text
//! graph <name>
//! # comment
//! vertex <u>
//! <u> <v>
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::planarity::PlaneEmbedding;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// A parsed graph file.
#[derive(Clone, Debug)]
pub struct GraphFile {
    pub name: String,
    pub graph: Graph,
}

pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut name = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut known: HashSet<String> = HashSet::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if name.is_none() {
            match tokens.as_slice() {
                ["graph", n] => {
                    name = Some(n.to_string());
                    continue;
                }
                _ => return Err(fail(line, "expected header `graph <name>`")),
            }
        }
        let mut add = |v: &str| {
            if known.insert(v.to_string()) {
                vertices.push(v.to_string());
            }
        };
        match tokens.as_slice() {
            ["graph", ..] => return Err(fail(line, "repeated header")),
            ["vertex", v] => add(v),
            [u, v] => {
                if u == v {
                    return Err(fail(line, format!("loop at `{u}`")));
                }
                add(u);
                add(v);
                edges.push((u.to_string(), v.to_string()));
            }
            _ => return Err(fail(line, "expected `<u> <v>` or `vertex <u>`")),
        }
    }
    let name = name.ok_or_else(|| fail(last.max(1), "missing header `graph <name>`"))?;
    let graph = Graph::new(&vertices, &edges).map_err(|e: GraphError| fail(last, e.to_string()))?;
    Ok(GraphFile { name, graph })
}

/// Header, isolated vertices, then edges in vertex order.
pub fn print_graph(name: &str, g: &Graph) -> String {
    let mut out = format!("graph {name}\n");
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        let _ = writeln!(out, "vertex {}", g.name(v));
    }
    for (u, v) in g.edge_names() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT. With an embedding, each node carries its rotation and
/// the outer face is listed in a comment.
pub fn to_dot(name: &str, g: &Graph, emb: Option<&PlaneEmbedding>) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    if let Some(emb) = emb {
        if let Some(walk) = emb.outer_face() {
            let names: Vec<&str> = walk.vertices().map(|v| g.name(v)).collect();
            let _ = writeln!(out, "  // outer face: {}", names.join(" "));
        }
    }
    for v in g.vertices() {
        match emb {
            Some(emb) => {
                let rot: Vec<&str> = emb.rotation[v.index()].iter().map(|&w| g.name(w)).collect();
                let _ = writeln!(out, "  {} [rotation={}];", quote(g.name(v)), quote(&rot.join(" ")));
            }
            None => {
                let _ = writeln!(out, "  {};", quote(g.name(v)));
            }
        }
    }
    for (u, v) in g.edge_names() {
        let _ = writeln!(out, "  {} -- {};", quote(u), quote(v));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{hypercube, path};

    #[test]
    fn parse_and_print() {
        let text = "# a path\ngraph p\n\na b   # first\nb c\nvertex z\n";
        let f = parse_graph(text).unwrap();
        assert_eq!(f.name, "p");
        assert_eq!(f.graph.vertex_count(), 4);
        let printed = print_graph(&f.name, &f.graph);
        assert_eq!(printed, "graph p\nvertex z\na b\nb c\n");
        let again = parse_graph(&printed).unwrap();
        assert!(again.graph.labeled_eq(&f.graph));
        assert_eq!(print_graph(&again.name, &again.graph), printed);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_graph("a b\n").unwrap_err().line, 1);
        assert_eq!(parse_graph("graph g\na a\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("graph g\na b c\n").unwrap_err().line, 2);
        assert!(parse_graph("").is_err());
        assert!(parse_graph("graph g\ngraph h\n").is_err());
    }

    #[test]
    fn generated_graphs_round_trip() {
        for g in [hypercube(3), path(1).unwrap()] {
            let f = parse_graph(&print_graph("g", &g)).unwrap();
            assert!(f.graph.labeled_eq(&g));
        }
    }

    #[test]
    fn dot_output() {
        let g = path(2).unwrap();
        let dot = to_dot("k2", &g, None);
        assert_eq!(dot, "graph \"k2\" {\n  \"p0\";\n  \"p1\";\n  \"p0\" -- \"p1\";\n}\n");
    }
}
