//! DOT serialization.
//!
//! Output layout, per (sub)graph block and indented by two spaces per level:
//! graph attributes, node defaults, edge defaults, nodes, subgraph clusters,
//! edges. Nodes precede subgraphs so a node declared in an outer graph is
//! never captured by a cluster that mentions it in an edge.

use std::fmt::Write as _;

use crate::attr::{AttrMap, ElementKind, ResolvedAttrs};
use crate::error::{Error, Result};
use crate::factbase::{build_hierarchy, FactBase, GraphTree};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphModel {
    pub id: Term,
    pub directed: bool,
    pub attrs: AttrMap,
    pub node_defaults: AttrMap,
    pub edge_defaults: AttrMap,
    pub children: Vec<GraphModel>,
    pub nodes: Vec<(Term, AttrMap)>,
    pub edges: Vec<(Term, Term, AttrMap)>,
}

impl GraphModel {
    /// One model per root graph, in term order of the root ids.
    pub fn build_all(
        fb: &FactBase,
        attrs: &ResolvedAttrs,
        directed: bool,
    ) -> Result<Vec<GraphModel>> {
        Ok(build_hierarchy(fb)?
            .iter()
            .map(|tree| Self::from_tree(tree, fb, attrs, directed))
            .collect())
    }

    fn from_tree(
        tree: &GraphTree,
        fb: &FactBase,
        attrs: &ResolvedAttrs,
        directed: bool,
    ) -> GraphModel {
        GraphModel {
            id: tree.id.clone(),
            directed,
            attrs: attrs.get(ElementKind::Graph, &tree.id).clone(),
            node_defaults: attrs.node_defaults(&tree.id).clone(),
            edge_defaults: attrs.edge_defaults(&tree.id).clone(),
            children: tree
                .children
                .iter()
                .map(|c| Self::from_tree(c, fb, attrs, directed))
                .collect(),
            nodes: fb
                .nodes_of(&tree.id)
                .map(|n| (n.clone(), attrs.own(ElementKind::Node, n).clone()))
                .collect(),
            edges: fb
                .edges_of(&tree.id)
                .map(|e| {
                    (
                        e.tail.clone(),
                        e.head.clone(),
                        attrs.own(ElementKind::Edge, &e.id()).clone(),
                    )
                })
                .collect(),
        }
    }

    /// Every node id in this graph and its subgraphs.
    pub fn all_nodes(&self) -> Vec<&Term> {
        let mut out: Vec<&Term> = self.nodes.iter().map(|(n, _)| n).collect();
        for c in &self.children {
            out.extend(c.all_nodes());
        }
        out
    }
}

/// Wraps `s` in double quotes. Embedded quotes are escaped; other
/// backslash sequences (`\n`, `\l`, ...) are kept for the layout tool.
pub fn escape_id(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    let mut backslashes = 0;
    for c in s.chars() {
        match c {
            '\\' => {
                backslashes += 1;
                out.push(c);
                continue;
            }
            '"' => {
                // An odd run of backslashes would eat our escape.
                if backslashes % 2 == 1 {
                    out.push('\\');
                }
                out.push_str("\\\"");
            }
            c => out.push(c),
        }
        backslashes = 0;
    }
    if backslashes % 2 == 1 {
        out.push('\\');
    }
    out.push('"');
    out
}

/// `cluster_` followed by the printed id with every character outside
/// `[A-Za-z0-9_]` replaced by `_`.
pub fn cluster_name(id: &Term) -> String {
    let body: String = id
        .to_string()
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("cluster_{body}")
}

fn is_html_label(value: &str) -> bool {
    let v = value.trim();
    v.starts_with('<') && v.ends_with('>')
}

fn check_html(name: &str, value: &str) -> Result<()> {
    let mut depth: i64 = 0;
    for c in value.chars() {
        match c {
            '<' => depth += 1,
            '>' => {
                depth -= 1;
                if depth < 0 {
                    break;
                }
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Emit(format!(
            "HTML-like value of `{name}` has unbalanced `<`/`>`: {value}"
        )));
    }
    Ok(())
}

fn attr_list(attrs: &AttrMap) -> Result<String> {
    let mut parts = Vec::with_capacity(attrs.len());
    for (name, value) in attrs {
        let rendered = if is_html_label(value) {
            check_html(name, value)?;
            value.trim().to_string()
        } else {
            escape_id(value)
        };
        parts.push(format!("{}={}", escape_id(name), rendered));
    }
    Ok(parts.join(", "))
}

pub fn emit_dot(g: &GraphModel) -> Result<String> {
    let mut out = String::new();
    let kind = if g.directed { "digraph" } else { "graph" };
    writeln!(out, "{kind} {} {{", escape_id(&g.id.to_string())).unwrap();
    emit_body(g, 1, &mut out)?;
    out.push_str("}\n");
    Ok(out)
}

fn emit_body(g: &GraphModel, level: usize, out: &mut String) -> Result<()> {
    let indent = "  ".repeat(level);
    let op = if g.directed { "->" } else { "--" };
    for (keyword, attrs) in [
        ("graph", &g.attrs),
        ("node", &g.node_defaults),
        ("edge", &g.edge_defaults),
    ] {
        if !attrs.is_empty() {
            writeln!(out, "{indent}{keyword} [{}];", attr_list(attrs)?).unwrap();
        }
    }
    for (id, attrs) in &g.nodes {
        write!(out, "{indent}{}", escape_id(&id.to_string())).unwrap();
        if !attrs.is_empty() {
            write!(out, " [{}]", attr_list(attrs)?).unwrap();
        }
        out.push_str(";\n");
    }
    for child in &g.children {
        writeln!(
            out,
            "{indent}subgraph {} {{",
            escape_id(&cluster_name(&child.id))
        )
        .unwrap();
        emit_body(child, level + 1, out)?;
        writeln!(out, "{indent}}}").unwrap();
    }
    for (tail, head, attrs) in &g.edges {
        write!(
            out,
            "{indent}{} {op} {}",
            escape_id(&tail.to_string()),
            escape_id(&head.to_string())
        )
        .unwrap();
        if !attrs.is_empty() {
            write!(out, " [{}]", attr_list(attrs)?).unwrap();
        }
        out.push_str(";\n");
    }
    Ok(())
}
