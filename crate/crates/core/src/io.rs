//! Text formats: the `n m` edge list and Graphviz DOT export.
//!
//! The edge list written by [`write_edge_list`] is canonical (edges sorted,
//! `u < v`, single spaces, trailing newline), so parsing and re-writing a
//! canonical file reproduces it byte for byte.

use std::fmt::Write as _;

use crate::error::{input_err, Result};
use crate::graph::Graph;

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.order(), g.size());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut tokens = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = tokens
            .next()
            .ok_or_else(|| input_err!("edge list truncated: expected {what}"))?;
        tok.parse::<usize>()
            .map_err(|_| input_err!("edge list: `{tok}` is not a non-negative integer ({what})"))
    };
    let n = next("vertex count")?;
    let m = next("edge count")?;
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let u = next(&format!("endpoint of edge {i}"))?;
        let v = next(&format!("endpoint of edge {i}"))?;
        edges.push((u, v));
    }
    if tokens.next().is_some() {
        return Err(input_err!(
            "edge list has data after the declared {m} edges"
        ));
    }
    Graph::from_edge_list(n, &edges)
}

/// Fill colours used when a Roman labelling is drawn.
const ROMAN_COLORS: [&str; 3] = ["white", "lightblue", "tomato"];

/// DOT source for `g`. When `roman_labels` is given, vertices are filled
/// according to their label (0 white, 1 light blue, 2 red).
pub fn write_dot(g: &Graph, name: &str, roman_labels: Option<&[u8]>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\""));
    for v in 0..g.order() {
        let label = g.label(v).replace('"', "\\\"");
        match roman_labels {
            Some(l) => {
                let c = ROMAN_COLORS[usize::from(l[v].min(2))];
                let _ = writeln!(
                    out,
                    "  {v} [label=\"{label}\\n{}\", style=filled, fillcolor={c}];",
                    l[v]
                );
            }
            None => {
                let _ = writeln!(out, "  {v} [label=\"{label}\"];");
            }
        }
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn canonical_text_is_fixed_point() {
        let text = "4 3\n0 1\n1 2\n2 3\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g, families::path(4).unwrap());
        assert_eq!(write_edge_list(&g), text);
    }

    #[test]
    fn loose_whitespace_is_accepted() {
        let g = parse_edge_list("3 2   1 0\n\t2 1").unwrap();
        assert_eq!(write_edge_list(&g), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 x\n").is_err());
        assert!(parse_edge_list("3 1\n0 1\n1 2\n").is_err());
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
    }

    #[test]
    fn dot_contains_every_edge() {
        let g = families::cycle(4).unwrap();
        let dot = write_dot(&g, "c4", Some(&[2, 0, 1, 0]));
        assert!(dot.starts_with("graph \"c4\" {"));
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert!(dot.contains("fillcolor=tomato"));
    }
}
