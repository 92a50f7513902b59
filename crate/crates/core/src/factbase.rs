//! The normalized visualization fact base.
//!
//! Normalization keeps only `graph/1..2`, `node/1..2`, `edge/1..2` and
//! `attr/4` (after stripping an optional prefix), lifts unary `node` and
//! `edge` facts into the default graph, creates nodes that are only
//! mentioned by edges, and validates the graph hierarchy.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::term::{Fact, Term};

/// First argument of `attr/4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementClass {
    Graph,
    Node,
    Edge,
    GraphNodes,
    GraphEdges,
}

impl ElementClass {
    pub const ALL: [ElementClass; 5] = [
        ElementClass::Graph,
        ElementClass::Node,
        ElementClass::Edge,
        ElementClass::GraphNodes,
        ElementClass::GraphEdges,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            ElementClass::Graph => "graph",
            ElementClass::Node => "node",
            ElementClass::Edge => "edge",
            ElementClass::GraphNodes => "graph_nodes",
            ElementClass::GraphEdges => "graph_edges",
        }
    }

    pub fn from_term(t: &Term) -> Option<ElementClass> {
        match t {
            Term::Constant(name) => Self::ALL.into_iter().find(|c| c.keyword() == name),
            _ => None,
        }
    }
}

/// Third argument of `attr/4`: an attribute name, a `(name, var)` pair
/// binding a template variable, or a `(name, var, key)` triple binding a
/// dictionary entry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NameSpec {
    Plain(Term),
    Var(Term, Term),
    DictVar(Term, Term, Term),
}

impl NameSpec {
    pub fn from_term(t: &Term) -> Result<NameSpec> {
        match t {
            Term::Tuple(args) if args.len() == 2 => {
                Ok(NameSpec::Var(args[0].clone(), args[1].clone()))
            }
            Term::Tuple(args) if args.len() == 3 => Ok(NameSpec::DictVar(
                args[0].clone(),
                args[1].clone(),
                args[2].clone(),
            )),
            Term::Tuple(_) => Err(Error::Model(format!(
                "attribute name `{t}` must be a name, a pair or a triple"
            ))),
            other => Ok(NameSpec::Plain(other.clone())),
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            NameSpec::Plain(n) => n.clone(),
            NameSpec::Var(n, v) => Term::tuple(vec![n.clone(), v.clone()]),
            NameSpec::DictVar(n, v, k) => Term::tuple(vec![n.clone(), v.clone(), k.clone()]),
        }
    }

    /// The attribute this spec contributes to.
    pub fn attribute(&self) -> &Term {
        match self {
            NameSpec::Plain(n) | NameSpec::Var(n, _) | NameSpec::DictVar(n, _, _) => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttrFact {
    pub class: ElementClass,
    pub element: Term,
    pub name: NameSpec,
    pub value: Term,
}

impl AttrFact {
    pub fn to_fact(&self) -> Fact {
        Fact::new(
            "attr",
            vec![
                Term::constant(self.class.keyword()),
                self.element.clone(),
                self.name.to_term(),
                self.value.clone(),
            ],
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: Term,
    pub head: Term,
    pub graph: Term,
}

impl Edge {
    /// The `(tail,head)` tuple identifying the edge in `attr/4`.
    pub fn id(&self) -> Term {
        Term::tuple(vec![self.tail.clone(), self.head.clone()])
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactBase {
    /// Graph id to optional parent graph.
    pub graphs: BTreeMap<Term, Option<Term>>,
    /// Node id to its graph; node ids are unique across all graphs.
    pub nodes: BTreeMap<Term, Term>,
    pub edges: BTreeSet<Edge>,
    /// Sorted, without duplicates.
    pub attrs: Vec<AttrFact>,
}

/// A graph with its nested subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphTree {
    pub id: Term,
    pub children: Vec<GraphTree>,
}

impl GraphTree {
    pub fn depth(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(GraphTree::depth)
            .max()
            .unwrap_or(0)
    }

    /// This graph and all of its descendants, preorder.
    pub fn ids(&self) -> Vec<&Term> {
        let mut out = vec![&self.id];
        for c in &self.children {
            out.extend(c.ids());
        }
        out
    }
}

impl FactBase {
    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty() && self.attrs.is_empty()
    }

    /// Graphs without a parent, in term order.
    pub fn roots(&self) -> Vec<&Term> {
        self.graphs
            .iter()
            .filter(|(_, p)| p.is_none())
            .map(|(g, _)| g)
            .collect()
    }

    pub fn children_of<'a>(&'a self, graph: &'a Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.graphs
            .iter()
            .filter(move |(_, p)| p.as_ref() == Some(graph))
            .map(|(g, _)| g)
    }

    pub fn nodes_of<'a>(&'a self, graph: &'a Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.nodes
            .iter()
            .filter(move |(_, g)| *g == graph)
            .map(|(n, _)| n)
    }

    pub fn edges_of<'a>(&'a self, graph: &'a Term) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| &e.graph == graph)
    }
}

/// Normalizes raw facts. Foreign predicates are dropped silently.
pub fn normalize(facts: &[Fact], prefix: Option<&str>, default_graph: &Term) -> Result<FactBase> {
    let mut fb = FactBase::default();
    let mut node_facts: Vec<(Term, Term)> = Vec::new();
    let mut edge_facts: Vec<(Term, Term)> = Vec::new();
    let mut attrs = BTreeSet::new();

    for fact in facts {
        let name = match prefix {
            Some(p) => match fact.predicate.strip_prefix(p) {
                Some(rest) => rest,
                None => continue,
            },
            None => fact.predicate.as_str(),
        };
        let args = &fact.args;
        match (name, args.len()) {
            ("graph", 1) => {
                fb.graphs.entry(args[0].clone()).or_insert(None);
            }
            ("graph", 2) => {
                let slot = fb.graphs.entry(args[0].clone()).or_insert(None);
                match slot {
                    Some(existing) if existing != &args[1] => {
                        return Err(Error::Model(format!(
                            "graph {} has two parents: {existing} and {}",
                            args[0], args[1]
                        )));
                    }
                    _ => *slot = Some(args[1].clone()),
                }
            }
            ("node", 1) => node_facts.push((args[0].clone(), default_graph.clone())),
            ("node", 2) => node_facts.push((args[0].clone(), args[1].clone())),
            ("edge", 1) => edge_facts.push((args[0].clone(), default_graph.clone())),
            ("edge", 2) => edge_facts.push((args[0].clone(), args[1].clone())),
            ("attr", 4) => {
                let class = ElementClass::from_term(&args[0]).ok_or_else(|| {
                    Error::Model(format!(
                        "unknown element class `{}` in `{}`; expected one of graph, node, edge, graph_nodes, graph_edges",
                        args[0],
                        fact.atom()
                    ))
                })?;
                let attr = AttrFact {
                    class,
                    element: args[1].clone(),
                    name: NameSpec::from_term(&args[2])?,
                    value: args[3].clone(),
                };
                attrs.insert(attr);
            }
            _ => {}
        }
    }

    fb.attrs = attrs.into_iter().collect();
    for (id, graph) in node_facts {
        add_node(&mut fb, id, graph)?;
    }
    for (endpoints, graph) in edge_facts {
        let (tail, head) = match &endpoints {
            Term::Tuple(pair) if pair.len() == 2 => (pair[0].clone(), pair[1].clone()),
            other => {
                return Err(Error::Model(format!(
                    "edge `{other}` must be a pair of node identifiers"
                )))
            }
        };
        fb.edges.insert(Edge { tail, head, graph });
    }
    let implicit: Vec<(Term, Term)> = fb
        .edges
        .iter()
        .flat_map(|e| {
            [
                (e.tail.clone(), e.graph.clone()),
                (e.head.clone(), e.graph.clone()),
            ]
        })
        .filter(|(n, _)| !fb.nodes.contains_key(n))
        .collect();
    for (id, graph) in implicit {
        fb.nodes.entry(id).or_insert(graph);
    }

    let uses_default = fb.nodes.values().any(|g| g == default_graph)
        || fb.edges.iter().any(|e| &e.graph == default_graph);
    if uses_default {
        fb.graphs.entry(default_graph.clone()).or_insert(None);
    }

    for (node, graph) in &fb.nodes {
        if !fb.graphs.contains_key(graph) {
            return Err(Error::Model(format!(
                "node {node} belongs to undeclared graph {graph}"
            )));
        }
    }
    for edge in &fb.edges {
        if !fb.graphs.contains_key(&edge.graph) {
            return Err(Error::Model(format!(
                "edge {} belongs to undeclared graph {}",
                edge.id(),
                edge.graph
            )));
        }
    }
    for (graph, parent) in &fb.graphs {
        if let Some(p) = parent {
            if !fb.graphs.contains_key(p) {
                return Err(Error::Model(format!(
                    "graph {graph} has undeclared parent graph {p}"
                )));
            }
        }
    }
    build_hierarchy(&fb)?;
    Ok(fb)
}

fn add_node(fb: &mut FactBase, id: Term, graph: Term) -> Result<()> {
    match fb.nodes.get(&id) {
        Some(existing) if existing != &graph => Err(Error::Model(format!(
            "node {id} appears in two graphs: {existing} and {graph}"
        ))),
        Some(_) => Ok(()),
        None => {
            fb.nodes.insert(id, graph);
            Ok(())
        }
    }
}

/// Builds the subgraph forest; `graph(a,b)` makes `a` a child of `b`.
pub fn build_hierarchy(fb: &FactBase) -> Result<Vec<GraphTree>> {
    // Every graph must reach a root by following parents.
    for start in fb.graphs.keys() {
        let mut seen = HashSet::new();
        let mut current = start;
        while let Some(Some(parent)) = fb.graphs.get(current) {
            if !seen.insert(current) || parent == start {
                return Err(Error::Model(format!(
                    "subgraph relation is cyclic at graph {start}"
                )));
            }
            current = parent;
        }
    }
    fn tree(fb: &FactBase, id: &Term) -> GraphTree {
        GraphTree {
            id: id.clone(),
            children: fb.children_of(id).map(|c| tree(fb, c)).collect(),
        }
    }
    Ok(fb.roots().into_iter().map(|r| tree(fb, r)).collect())
}

/// Restricts the fact base to the named root graphs and everything below
/// them. No ids selects everything.
pub fn select_graphs(fb: &FactBase, ids: &[Term]) -> Result<FactBase> {
    if ids.is_empty() {
        return Ok(fb.clone());
    }
    let forest = build_hierarchy(fb)?;
    let mut keep: BTreeSet<Term> = BTreeSet::new();
    for id in ids {
        let root = forest.iter().find(|t| &t.id == id).ok_or_else(|| {
            Error::Range(format!("--select-graph {id}: no root graph with this id"))
        })?;
        keep.extend(root.ids().into_iter().cloned());
    }

    let graphs: BTreeMap<Term, Option<Term>> = fb
        .graphs
        .iter()
        .filter(|(g, _)| keep.contains(*g))
        .map(|(g, p)| (g.clone(), p.clone()))
        .collect();
    let nodes: BTreeMap<Term, Term> = fb
        .nodes
        .iter()
        .filter(|(_, g)| keep.contains(*g))
        .map(|(n, g)| (n.clone(), g.clone()))
        .collect();
    let edges: BTreeSet<Edge> = fb
        .edges
        .iter()
        .filter(|e| keep.contains(&e.graph))
        .cloned()
        .collect();
    let edge_ids: HashSet<Term> = edges.iter().map(Edge::id).collect();
    let attrs = fb
        .attrs
        .iter()
        .filter(|a| match a.class {
            ElementClass::Graph | ElementClass::GraphNodes | ElementClass::GraphEdges => {
                keep.contains(&a.element)
            }
            ElementClass::Node => nodes.contains_key(&a.element),
            ElementClass::Edge => edge_ids.contains(&a.element),
        })
        .cloned()
        .collect();
    Ok(FactBase {
        graphs,
        nodes,
        edges,
        attrs,
    })
}

/// Canonical fact text: graphs, nodes, edges, then attributes, each group
/// sorted. One fact per line.
pub fn emit_facts(fb: &FactBase) -> String {
    let mut out = String::new();
    for (graph, parent) in &fb.graphs {
        match parent {
            None => writeln!(out, "graph({graph}).").unwrap(),
            Some(p) => writeln!(out, "graph({graph},{p}).").unwrap(),
        }
    }
    for (node, graph) in &fb.nodes {
        writeln!(out, "node({node},{graph}).").unwrap();
    }
    for edge in &fb.edges {
        writeln!(out, "edge({},{}).", edge.id(), edge.graph).unwrap();
    }
    for attr in &fb.attrs {
        writeln!(out, "{}", attr.to_fact()).unwrap();
    }
    out
}
