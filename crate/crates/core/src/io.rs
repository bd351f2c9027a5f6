//! Text formats: edge lists, rooted trees, JSON and DOT.
//!
//! Emission is canonical (sorted lines, sorted keys) so that emitting the
//! same value twice yields byte-identical output, and parse(emit(x)) == x
//! for every format here.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::SpanningTree;

/// Edge-list text: `#` comments, one `u v` edge per line, isolated
/// vertices declared as `n <label>` lines.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut lines: Vec<String> = Vec::new();
    for v in g.vertices() {
        if g.degree(v) == Some(0) {
            lines.push(format!("n {v}"));
        }
    }
    let mut edge_lines: Vec<String> = g
        .edges()
        .iter()
        // a first token `n` would read as an isolated-vertex line
        .map(|(a, b)| if *a == "n" { format!("{b} {a}") } else { format!("{a} {b}") })
        .collect();
    lines.sort();
    edge_lines.sort();
    lines.extend(edge_lines);
    let mut out = lines.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}

type IsolatedAndEdges = (Vec<String>, Vec<(String, String)>);

fn edge_list_lines(text: &str) -> Result<IsolatedAndEdges> {
    let mut isolated = Vec::new();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["n", label] => isolated.push(label.to_string()),
            [a, b] => edges.push((a.to_string(), b.to_string())),
            _ => {
                return Err(Error::parse(
                    lineno,
                    format!("expected `u v` or `n label`, got `{line}`"),
                ))
            }
        }
    }
    Ok((isolated, edges))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let (isolated, edges) = edge_list_lines(text)?;
    Graph::from_parts(isolated, edges)
}

/// Tree text: the edge-list format preceded by a `root <label>` line.
pub fn emit_tree(t: &SpanningTree) -> String {
    let mut out = format!("root {}\n", t.root());
    let mut edge_lines: Vec<String> = t
        .edges()
        .iter()
        .map(|(a, b)| if a == "n" { format!("{b} {a}") } else { format!("{a} {b}") })
        .collect();
    edge_lines.sort();
    for line in edge_lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_tree(text: &str, host: &Arc<Graph>) -> Result<SpanningTree> {
    let mut root: Option<String> = None;
    let mut rest = String::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if root.is_none() {
            let Some(label) = line.strip_prefix("root ") else {
                return Err(Error::parse(
                    lineno + 1,
                    "a tree file starts with `root <label>`",
                ));
            };
            root = Some(label.trim().to_string());
            continue;
        }
        rest.push_str(line);
        rest.push('\n');
    }
    let Some(root) = root else {
        return Err(Error::parse(0, "missing `root <label>` line"));
    };
    let (isolated, edges) = edge_list_lines(&rest)?;
    if !isolated.is_empty() {
        return Err(Error::parse(0, "tree files list edges only"));
    }
    SpanningTree::from_edges(Arc::clone(host), &root, &edges)
}

/// `{"vertices":[...],"edges":[[u,v],...]}`, both sorted.
pub fn emit_graph_json(g: &Graph) -> String {
    let vertices: Vec<&str> = g.vertices().collect();
    let edges: Vec<Value> = g.edges().iter().map(|(a, b)| json!([a, b])).collect();
    json!({"vertices": vertices, "edges": edges}).to_string()
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::parse(0, format!("bad JSON: {e}")))?;
    let vertices = value["vertices"]
        .as_array()
        .ok_or_else(|| Error::parse(0, "missing `vertices` array"))?;
    let edges = value["edges"]
        .as_array()
        .ok_or_else(|| Error::parse(0, "missing `edges` array"))?;
    let vs: Vec<String> = vertices
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::parse(0, "vertices must be strings"))
        })
        .collect::<Result<_>>()?;
    let es: Vec<(String, String)> = edges
        .iter()
        .map(|e| {
            let pair = e.as_array().filter(|p| p.len() == 2);
            match pair {
                Some(p) => match (p[0].as_str(), p[1].as_str()) {
                    (Some(a), Some(b)) => Ok((a.to_string(), b.to_string())),
                    _ => Err(Error::parse(0, "edge endpoints must be strings")),
                },
                None => Err(Error::parse(0, "edges must be [u, v] pairs")),
            }
        })
        .collect::<Result<_>>()?;
    Graph::from_parts(vs, es)
}

/// `{"root":...,"edges":[[u,v],...]}`.
pub fn emit_tree_json(t: &SpanningTree) -> String {
    let edges: Vec<Value> = t.edges().iter().map(|(a, b)| json!([a, b])).collect();
    json!({"root": t.root(), "edges": edges}).to_string()
}

pub fn parse_tree_json(text: &str, host: &Arc<Graph>) -> Result<SpanningTree> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::parse(0, format!("bad JSON: {e}")))?;
    let root = value["root"]
        .as_str()
        .ok_or_else(|| Error::parse(0, "missing `root` string"))?;
    let edges = value["edges"]
        .as_array()
        .ok_or_else(|| Error::parse(0, "missing `edges` array"))?;
    let es: Vec<(String, String)> = edges
        .iter()
        .map(|e| match e.as_array().filter(|p| p.len() == 2) {
            Some(p) => match (p[0].as_str(), p[1].as_str()) {
                (Some(a), Some(b)) => Ok((a.to_string(), b.to_string())),
                _ => Err(Error::parse(0, "edge endpoints must be strings")),
            },
            None => Err(Error::parse(0, "edges must be [u, v] pairs")),
        })
        .collect::<Result<_>>()?;
    SpanningTree::from_edges(Arc::clone(host), root, &es)
}

/// Graphviz output; when a tree is supplied its edges are drawn bold.
pub fn emit_dot(g: &Graph, tree: Option<&SpanningTree>) -> String {
    let mut out = String::from("graph g {\n");
    for v in g.vertices() {
        if g.degree(v) == Some(0) {
            out.push_str(&format!("  \"{v}\";\n"));
        }
    }
    for (a, b) in g.edges() {
        let bold = tree.is_some_and(|t| t.contains_edge(a, b));
        if bold {
            out.push_str(&format!("  \"{a}\" -- \"{b}\" [style=bold];\n"));
        } else {
            out.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
        }
    }
    out.push_str("}\n");
    out
}

/// Parses the DOT subset emitted above (quoted labels, `--` edges,
/// attribute lists ignored).
pub fn parse_dot(text: &str) -> Result<Graph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut seen_open = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() {
            continue;
        }
        if !seen_open {
            if line.starts_with("graph") && line.ends_with('{') {
                seen_open = true;
                continue;
            }
            return Err(Error::parse(lineno, "expected `graph <name> {`"));
        }
        if line == "}" {
            continue;
        }
        let stmt = line
            .trim_end_matches(';')
            .split('[')
            .next()
            .unwrap_or("")
            .trim();
        let unquote = |s: &str| -> Result<String> {
            let s = s.trim();
            s.strip_prefix('"')
                .and_then(|s| s.strip_suffix('"'))
                .map(str::to_string)
                .ok_or_else(|| Error::parse(lineno, format!("expected a quoted label, got `{s}`")))
        };
        if let Some((a, b)) = stmt.split_once("--") {
            edges.push((unquote(a)?, unquote(b)?));
        } else {
            vertices.push(unquote(stmt)?);
        }
    }
    if !seen_open {
        return Err(Error::parse(0, "not a DOT graph"));
    }
    Graph::from_parts(vertices, edges)
}

/// Canonical JSON for a violation report (used by the CLI).
pub fn report_json(report: &crate::normalize::ViolationReport) -> Value {
    let swaps: Vec<Value> = report
        .swaps
        .iter()
        .map(|(removed, added)| {
            json!({
                "removed": [removed.0, removed.1],
                "added": [added.0, added.1],
            })
        })
        .collect();
    json!({
        "violating": report.violating.iter().collect::<Vec<_>>(),
        "swaps": swaps,
    })
}

/// Canonical JSON for a truth assignment.
pub fn assignment_json(a: &crate::cnf::TruthAssignment) -> Value {
    let values: BTreeMap<&String, bool> = a.values.iter().map(|(k, &v)| (k, v)).collect();
    match &a.witnesses {
        Some(w) => {
            let wit: BTreeMap<String, &String> =
                w.iter().map(|(idx, var)| (idx.to_string(), var)).collect();
            json!({"values": values, "witnesses": wit})
        }
        None => json!({"values": values}),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, path_graph};

    fn sample() -> Graph {
        Graph::from_parts(["lonely", "n"], [("a", "b"), ("b", "c"), ("n", "a")]).unwrap()
    }

    #[test]
    fn edge_list_round_trip() {
        let g = sample();
        let text = emit_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        // emission is canonical
        assert_eq!(emit_edge_list(&parse_edge_list(&text).unwrap()), text);
    }

    #[test]
    fn edge_list_handles_comments_and_blanks() {
        let g = parse_edge_list("# header\n\n a b \nn c\n# trailing\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert!(g.contains_vertex("c"));
    }

    #[test]
    fn edge_list_rejects_garbage() {
        assert!(matches!(
            parse_edge_list("a b c\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn a_vertex_named_n_survives() {
        let g = sample();
        let text = emit_edge_list(&g);
        // the n-a edge must not read as an isolated declaration
        assert!(text.contains("a n\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn tree_round_trip() {
        let g = Arc::new(cycle_graph(&["a", "b", "c", "d"]));
        let t = SpanningTree::from_edges(Arc::clone(&g), "b", &[("a", "b"), ("b", "c"), ("c", "d")])
            .unwrap();
        let text = emit_tree(&t);
        assert!(text.starts_with("root b\n"));
        let back = parse_tree(&text, &g).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.root(), "b");

        let jt = emit_tree_json(&t);
        assert_eq!(parse_tree_json(&jt, &g).unwrap(), t);
    }

    #[test]
    fn tree_parse_requires_root_and_validates() {
        let g = Arc::new(path_graph(&["a", "b", "c"]));
        assert!(matches!(
            parse_tree("a b\n", &g),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_tree("root a\na c\n", &g),
            Err(Error::NotSpanningTree(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = sample();
        let text = emit_graph_json(&g);
        assert_eq!(parse_graph_json(&text).unwrap(), g);
        // canonical key order is stable under re-serialization
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v.to_string(), text);
    }

    #[test]
    fn dot_round_trip() {
        let g = sample();
        let text = emit_dot(&g, None);
        assert_eq!(parse_dot(&text).unwrap(), g);
    }

    #[test]
    fn dot_marks_tree_edges_and_still_parses() {
        let g = Arc::new(path_graph(&["a", "b", "c"]));
        let t = SpanningTree::from_edges(Arc::clone(&g), "a", &[("a", "b"), ("b", "c")]).unwrap();
        let text = emit_dot(&g, Some(&t));
        assert!(text.contains("[style=bold]"));
        assert_eq!(parse_dot(&text).unwrap(), *g);
    }
}
