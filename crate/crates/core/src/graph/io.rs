//! DOT export and the plain edge-list format.
//!
//! Edge-list lines are `label1 label2`, one edge per line, with the endpoint
//! earlier in vertex order first and lines sorted by that order. A line with a
//! single label declares an isolated vertex; blank lines and `#` comments are
//! ignored on import.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{Family, Graph};
use crate::error::{Error, Result};

pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    for v in graph.vertices() {
        if graph.degree(v) == 0 {
            writeln!(out, "{}", graph.label(v)).unwrap();
        }
    }
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", graph.label(u), graph.label(v)).unwrap();
    }
    out
}

pub fn write_dot(graph: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", graph.family()).unwrap();
    for v in graph.vertices() {
        writeln!(out, "  \"{}\";", graph.label(v)).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  \"{}\" -- \"{}\";", graph.label(u), graph.label(v)).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Parses the edge-list format. Vertices are ordered by label string.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut labels = BTreeSet::new();
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [a] => {
                labels.insert(a.to_string());
            }
            [a, b] => {
                if a == b {
                    return Err(Error::parse(i + 1, format!("self-loop on `{a}`")));
                }
                labels.insert(a.to_string());
                labels.insert(b.to_string());
                pairs.push((a.to_string(), b.to_string()));
            }
            _ => return Err(Error::parse(i + 1, format!("expected `label1 label2`, got {line:?}"))),
        }
    }
    let labels: Vec<String> = labels.into_iter().collect();
    let pos = |l: &str| labels.binary_search_by(|x| x.as_str().cmp(l)).unwrap();
    let edges: Vec<(usize, usize)> = pairs.iter().map(|(a, b)| (pos(a), pos(b))).collect();
    Graph::from_edges(Family::Custom, labels, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{build_nk_star, cycle};

    #[test]
    fn edge_list_of_c6() {
        let text = write_edge_list(&cycle(6).unwrap());
        assert_eq!(text, "u1 u2\nu1 u6\nu2 u3\nu3 u4\nu4 u5\nu5 u6\n");
    }

    #[test]
    fn edge_list_round_trip_preserves_structure() {
        let g = build_nk_star(4, 2).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text.lines().count(), 18);
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back.labels(), g.labels());
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert_eq!(write_edge_list(&back), text);
    }

    #[test]
    fn edge_list_import_handles_comments_isolated_and_errors() {
        let g = parse_edge_list("# tiny\n\nb a\nc\n").unwrap();
        assert_eq!(g.labels(), ["a", "b", "c"]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(write_edge_list(&g), "c\na b\n");

        assert!(matches!(parse_edge_list("a a\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_edge_list("a b\na b c\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn dot_lists_every_vertex_and_edge() {
        let dot = write_dot(&cycle(6).unwrap());
        assert!(dot.starts_with("graph \"cycle:6\" {\n"));
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.contains("  \"u1\" -- \"u6\";\n"));
        assert!(dot.ends_with("}\n"));
    }
}
