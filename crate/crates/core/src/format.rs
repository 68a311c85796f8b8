//! Edge-list document parsing, canonical serialization, and DOT export.
//!
//! One edge per line, `u v` or `u v label` with a positive integer label;
//! `#` starts a comment, blank lines are skipped, and a bare `u` line
//! declares an isolated vertex. Serialization emits edges in lexicographic
//! order under a `# format: v1` header.

use std::collections::BTreeMap;

use crate::graph::{Edge, Forest, GraphError};
use crate::labeling::EdgeLabeling;

pub const FORMAT_HEADER: &str = "# format: v1";

struct ParsedDocument {
    isolated: Vec<String>,
    edges: Vec<(String, String, Option<u64>, usize)>,
}

fn parse_lines(text: &str) -> Result<ParsedDocument, GraphError> {
    let mut isolated = Vec::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.len() {
            1 => isolated.push(tokens[0].to_string()),
            2 => edges.push((tokens[0].to_string(), tokens[1].to_string(), None, line_no)),
            3 => {
                let label: u64 = tokens[2].parse().map_err(|_| GraphError::Syntax {
                    line: line_no,
                    message: format!("label '{}' is not a positive integer", tokens[2]),
                })?;
                if label == 0 {
                    return Err(GraphError::Syntax {
                        line: line_no,
                        message: "label must be positive".to_string(),
                    });
                }
                edges.push((
                    tokens[0].to_string(),
                    tokens[1].to_string(),
                    Some(label),
                    line_no,
                ));
            }
            n => {
                return Err(GraphError::Syntax {
                    line: line_no,
                    message: format!("expected 1-3 tokens, found {}", n),
                })
            }
        }
    }
    Ok(ParsedDocument { isolated, edges })
}

/// Parses an edge-list document into a forest. Labels, when present, are
/// ignored; use [`parse_labeled`] to keep them.
pub fn parse_forest(text: &str) -> Result<Forest, GraphError> {
    let doc = parse_lines(text)?;
    Forest::new(
        doc.isolated,
        doc.edges.into_iter().map(|(u, v, _, _)| (u, v)),
    )
}

/// Parses a document that is either fully labeled or fully unlabeled.
/// Mixing labeled and unlabeled edges is a syntax error.
pub fn parse_document(text: &str) -> Result<(Forest, Option<EdgeLabeling>), GraphError> {
    let doc = parse_lines(text)?;
    let labeled = doc.edges.iter().filter(|(_, _, l, _)| l.is_some()).count();
    if labeled == 0 || doc.edges.is_empty() {
        return Ok((parse_forest(text)?, None));
    }
    if labeled < doc.edges.len() {
        let (u, v, _, line) = doc
            .edges
            .iter()
            .find(|(_, _, l, _)| l.is_none())
            .expect("some edge is unlabeled");
        return Err(GraphError::Syntax {
            line: *line,
            message: format!("edge {} {} is missing a label", u, v),
        });
    }
    let lab = parse_labeled(text)?;
    Ok((lab.forest().clone(), Some(lab)))
}

/// Parses a document in which every edge carries a label.
pub fn parse_labeled(text: &str) -> Result<EdgeLabeling, GraphError> {
    let doc = parse_lines(text)?;
    let mut labels = BTreeMap::new();
    for (u, v, label, line) in &doc.edges {
        let label = label.ok_or_else(|| GraphError::Syntax {
            line: *line,
            message: format!("edge {} {} is missing a label", u, v),
        })?;
        labels.insert(Edge::new(u.as_str(), v.as_str()), label);
    }
    let forest = Forest::new(
        doc.isolated,
        doc.edges.into_iter().map(|(u, v, _, _)| (u, v)),
    )?;
    EdgeLabeling::new(forest, labels)
}

fn isolated_vertices(f: &Forest) -> impl Iterator<Item = &str> {
    f.vertices().filter(|v| f.degree(v) == 0)
}

/// Canonical form: header, edges in lexicographic order, then isolated
/// vertices. `parse_forest(serialize_forest(f)) == f`.
pub fn serialize_forest(f: &Forest) -> String {
    let mut out = String::from(FORMAT_HEADER);
    out.push('\n');
    for e in f.canonical_edges() {
        let (a, b) = e.endpoints();
        out.push_str(&format!("{} {}\n", a, b));
    }
    for v in isolated_vertices(f) {
        out.push_str(v);
        out.push('\n');
    }
    out
}

pub fn serialize_labeling(lab: &EdgeLabeling) -> String {
    let mut out = String::from(FORMAT_HEADER);
    out.push('\n');
    for e in lab.forest().canonical_edges() {
        let (a, b) = e.endpoints();
        out.push_str(&format!("{} {} {}\n", a, b, lab.label(&e)));
    }
    for v in isolated_vertices(lab.forest()) {
        out.push_str(v);
        out.push('\n');
    }
    out
}

fn quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT export of a plain forest.
pub fn forest_dot(f: &Forest) -> String {
    dot_document(f, None)
}

/// DOT export with edge labels and per-vertex sums as `xlabel`s.
pub fn labeling_dot(lab: &EdgeLabeling) -> String {
    dot_document(lab.forest(), Some(lab))
}

fn dot_document(f: &Forest, lab: Option<&EdgeLabeling>) -> String {
    let mut out = String::from("graph {\n");
    for v in f.vertices() {
        match lab {
            Some(lab) => out.push_str(&format!(
                "  {} [xlabel=\"{}\"];\n",
                quote(v),
                lab.incident_sum(v)
            )),
            None => out.push_str(&format!("  {};\n", quote(v))),
        }
    }
    for e in f.canonical_edges() {
        let (a, b) = e.endpoints();
        match lab {
            Some(lab) => out.push_str(&format!(
                "  {} -- {} [label=\"{}\"];\n",
                quote(a),
                quote(b),
                lab.label(&e)
            )),
            None => out.push_str(&format!("  {} -- {};\n", quote(a), quote(b))),
        }
    }
    out.push_str("}\n");
    out
}
