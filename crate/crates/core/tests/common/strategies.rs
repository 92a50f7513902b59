//! Generators shared by the property and acceptance suites.

use proptest::prelude::*;

use factgraph::attr::resolve;
use factgraph::dot::{emit_dot, GraphModel};
use factgraph::factbase::{normalize, FactBase};
use factgraph::term::{Fact, Term};

pub fn ident() -> impl Strategy<Value = String> {
    "[a-z][A-Za-z0-9_']{0,5}"
}

pub fn text() -> impl Strategy<Value = String> {
    "(\\PC|[\"\\\\\n\t]){0,8}"
}

pub fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        any::<i64>().prop_map(Term::int),
        ident().prop_map(Term::constant),
        text().prop_map(Term::string),
    ];
    leaf.prop_recursive(5, 48, 4, |inner| {
        prop_oneof![
            (ident(), prop::collection::vec(inner.clone(), 0..4))
                .prop_map(|(n, a)| Term::function(n, a)),
            prop::collection::vec(inner, 0..4).prop_map(Term::tuple),
        ]
    })
}

/// Valid graph facts over small alphabets: nodes in one graph each, edges
/// inside the tail's graph, attributes on any element.
pub fn graph_facts() -> impl Strategy<Value = Vec<Fact>> {
    let graphs = prop::collection::btree_set("[g-j]", 1..4);
    graphs
        .prop_flat_map(|graphs| {
            let graphs: Vec<String> = graphs.into_iter().collect();
            let n = graphs.len();
            let nodes = prop::collection::btree_map("[a-f]", 0..n, 0..6);
            (
                Just(graphs),
                nodes,
                prop::collection::vec((0usize..8, 0usize..8), 0..6),
                prop::collection::vec((0usize..8, "[xyz]", "[a-z0-9]{1,3}"), 0..6),
                any::<bool>(),
            )
        })
        .prop_map(|(graphs, nodes, edges, attrs, nested)| {
            let c = |s: &str| Term::constant(s);
            let mut out = Vec::new();
            for (i, g) in graphs.iter().enumerate() {
                if nested && i > 0 {
                    out.push(Fact::new("graph", vec![c(g), c(&graphs[i - 1])]));
                } else {
                    out.push(Fact::new("graph", vec![c(g)]));
                }
            }
            let nodes: Vec<(String, usize)> = nodes.into_iter().collect();
            for (n, g) in &nodes {
                out.push(Fact::new("node", vec![c(n), c(&graphs[*g])]));
            }
            if !nodes.is_empty() {
                for (t, h) in edges {
                    let (tail, g) = &nodes[t % nodes.len()];
                    let (head, _) = &nodes[h % nodes.len()];
                    out.push(Fact::new(
                        "edge",
                        vec![Term::tuple(vec![c(tail), c(head)]), c(&graphs[*g])],
                    ));
                }
                for (i, name, value) in attrs {
                    let (node, g) = &nodes[i % nodes.len()];
                    out.push(Fact::new(
                        "attr",
                        vec![c("node"), c(node), c(&name), Term::string(value.clone())],
                    ));
                    out.push(Fact::new(
                        "attr",
                        vec![c("graph_nodes"), c(&graphs[*g]), c(&name), c("v")],
                    ));
                }
            }
            out
        })
}

pub fn norm(facts: &[Fact]) -> FactBase {
    normalize(facts, None, &Term::constant("default")).unwrap()
}

pub fn all_dot(fb: &FactBase) -> Vec<String> {
    let attrs = resolve(fb).unwrap();
    GraphModel::build_all(fb, &attrs, false)
        .unwrap()
        .iter()
        .map(|g| emit_dot(g).unwrap())
        .collect()
}
