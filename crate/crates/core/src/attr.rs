//! Attribute resolution: built-in value functions, template variables and
//! class-wide defaults.
//!
//! For one element and one attribute name the contributing `attr/4` facts
//! are sorted in term order and then:
//!
//! * a plain value containing `{{` is the template of the attribute;
//! * other plain values are anonymous contributions;
//! * `(name,var)` binds a scalar variable, `(name,var,key)` a dictionary
//!   entry.
//!
//! With a template, the template is rendered. Without one, anonymous values
//! and variables are concatenated in first-occurrence order. The `class`
//! attribute joins its parts with a single space since it is a
//! whitespace-separated list.

use std::collections::BTreeMap;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::factbase::{ElementClass, FactBase, NameSpec};
use crate::template::{self, Piece};
use crate::term::Term;

/// Final attribute values of one element, ordered by attribute name.
pub type AttrMap = BTreeMap<String, String>;

/// Evaluates built-in functions; everything else prints canonically with
/// the quotes of a top-level string removed.
///
/// | term | result |
/// |------|--------|
/// | `pos((x,y))`, `pos(x,y)` | `x,y!` |
/// | `concat(a1,...,an)` | values of the arguments, concatenated |
/// | `svg(event,element,property,value)` | `event___element___property___value` |
/// | `svg_init(property,value)` | `init___property___value` |
/// | `svg_color` | `currentcolor` |
pub fn evaluate_value(t: &Term) -> Result<String> {
    let arity_error =
        |name: &str, expected: &str| Error::Eval(format!("`{t}`: {name} expects {expected}"));
    match t {
        Term::Constant(name) if name == "svg_color" => Ok("currentcolor".into()),
        Term::Function(name, args) => match (name.as_str(), args.as_slice()) {
            ("pos", [Term::Tuple(xy)]) if xy.len() == 2 => Ok(format!(
                "{},{}!",
                evaluate_value(&xy[0])?,
                evaluate_value(&xy[1])?
            )),
            ("pos", [x, y]) => Ok(format!("{},{}!", evaluate_value(x)?, evaluate_value(y)?)),
            ("pos", _) => Err(arity_error("pos", "a pair (x,y) or two arguments")),
            ("concat", parts) => parts.iter().map(evaluate_value).collect(),
            ("svg", [event, element, property, value]) => Ok(format!(
                "{}___{}___{}___{}",
                evaluate_value(event)?,
                evaluate_value(element)?,
                evaluate_value(property)?,
                evaluate_value(value)?
            )),
            ("svg", _) => Err(arity_error("svg", "four arguments")),
            ("svg_init", [property, value]) => Ok(format!(
                "init___{}___{}",
                evaluate_value(property)?,
                evaluate_value(value)?
            )),
            ("svg_init", _) => Err(arity_error("svg_init", "two arguments")),
            ("svg_color", _) => Err(arity_error("svg_color", "no arguments")),
            _ => Ok(t.to_string()),
        },
        other => Ok(other.unquoted()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarValue {
    Scalar(String),
    /// Entries in key term order.
    Dict(IndexMap<String, String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Anonymous(String),
    Var(String),
}

/// Everything needed to compute one attribute value of one element.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AttrEnv {
    pub template: Option<String>,
    pub vars: IndexMap<String, VarValue>,
    /// Contributions in first-occurrence order.
    pub order: Vec<Slot>,
    /// Joins concatenated parts.
    pub separator: &'static str,
}

impl AttrEnv {
    pub fn new() -> AttrEnv {
        AttrEnv::default()
    }

    pub fn with_template(mut self, template: impl Into<String>) -> Self {
        self.template = Some(template.into());
        self
    }

    pub fn bind(&mut self, var: impl Into<String>, value: impl Into<String>) -> Result<()> {
        let var = var.into();
        let value = value.into();
        match self.vars.get_mut(&var) {
            Some(VarValue::Dict(_)) => Err(Error::Eval(format!(
                "variable `{var}` is used both as a value and as a dictionary"
            ))),
            Some(VarValue::Scalar(existing)) => {
                existing.push_str(self.separator);
                existing.push_str(&value);
                Ok(())
            }
            None => {
                self.order.push(Slot::Var(var.clone()));
                self.vars.insert(var, VarValue::Scalar(value));
                Ok(())
            }
        }
    }

    pub fn bind_entry(
        &mut self,
        var: impl Into<String>,
        key: impl Into<String>,
        value: impl Into<String>,
    ) -> Result<()> {
        let var = var.into();
        let key = key.into();
        let value = value.into();
        if !self.vars.contains_key(&var) {
            self.order.push(Slot::Var(var.clone()));
            self.vars
                .insert(var.clone(), VarValue::Dict(IndexMap::new()));
        }
        match self.vars.get_mut(&var) {
            Some(VarValue::Dict(entries)) => match entries.get(&key) {
                Some(existing) if existing != &value => Err(Error::Eval(format!(
                    "dictionary entry {var}['{key}'] bound to both {existing:?} and {value:?}"
                ))),
                Some(_) => Ok(()),
                None => {
                    entries.insert(key, value);
                    Ok(())
                }
            },
            _ => Err(Error::Eval(format!(
                "variable `{var}` is used both as a value and as a dictionary"
            ))),
        }
    }

    pub fn push_anonymous(&mut self, value: impl Into<String>) {
        self.order.push(Slot::Anonymous(value.into()));
    }

    fn var_text(&self, var: &VarValue) -> String {
        match var {
            VarValue::Scalar(s) => s.clone(),
            VarValue::Dict(entries) => entries
                .values()
                .cloned()
                .collect::<Vec<_>>()
                .join(self.separator),
        }
    }
}

pub fn render_template(env: &AttrEnv) -> Result<String> {
    match &env.template {
        Some(template) => {
            let mut out = String::new();
            for piece in template::parse(template)? {
                match piece {
                    Piece::Text(t) => out.push_str(t),
                    Piece::Var { name, key: None } => {
                        if let Some(v) = env.vars.get(name) {
                            out.push_str(&env.var_text(v));
                        }
                    }
                    Piece::Var {
                        name,
                        key: Some(key),
                    } => {
                        if let Some(VarValue::Dict(entries)) = env.vars.get(name) {
                            if let Some(v) = entries.get(key) {
                                out.push_str(v);
                            }
                        }
                    }
                }
            }
            Ok(out)
        }
        None => Ok(env
            .order
            .iter()
            .map(|slot| match slot {
                Slot::Anonymous(v) => v.clone(),
                Slot::Var(name) => env.var_text(&env.vars[name]),
            })
            .collect::<Vec<_>>()
            .join(env.separator)),
    }
}

/// Template environments per `(element class, element id)` and attribute
/// name.
pub type EnvMap = BTreeMap<(ElementClass, Term), IndexMap<String, AttrEnv>>;

/// Name term, value and name spec of one attr fact.
type Contribution<'a> = (Term, &'a Term, &'a NameSpec);

pub fn collect(fb: &FactBase) -> Result<EnvMap> {
    let mut groups: BTreeMap<(ElementClass, Term, String), Vec<Contribution>> = BTreeMap::new();
    for attr in &fb.attrs {
        let name = attr.name.attribute().unquoted();
        groups
            .entry((attr.class, attr.element.clone(), name))
            .or_default()
            .push((attr.name.to_term(), &attr.value, &attr.name));
    }

    let mut envs: EnvMap = BTreeMap::new();
    for ((class, element, name), mut contributions) in groups {
        contributions.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        let mut env = AttrEnv {
            separator: if name == "class" { " " } else { "" },
            ..AttrEnv::default()
        };
        let mut templates = Vec::new();
        for (_, value, spec) in contributions {
            let value = evaluate_value(value)?;
            match spec {
                NameSpec::Plain(_) if value.contains("{{") => templates.push(value),
                NameSpec::Plain(_) => env.push_anonymous(value),
                NameSpec::Var(_, var) => env.bind(var.unquoted(), value)?,
                NameSpec::DictVar(_, var, key) => {
                    env.bind_entry(var.unquoted(), key.unquoted(), value)?
                }
            }
        }
        if !templates.is_empty() {
            env.template = Some(templates.join(env.separator));
        }
        envs.entry((class, element)).or_default().insert(name, env);
    }
    Ok(envs)
}

/// Final attribute values for every element of a fact base.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResolvedAttrs {
    graphs: BTreeMap<Term, AttrMap>,
    node_defaults: BTreeMap<Term, AttrMap>,
    edge_defaults: BTreeMap<Term, AttrMap>,
    own_nodes: BTreeMap<Term, AttrMap>,
    own_edges: BTreeMap<Term, AttrMap>,
    nodes: BTreeMap<Term, AttrMap>,
    edges: BTreeMap<Term, AttrMap>,
}

static EMPTY: AttrMap = AttrMap::new();

/// Element kinds that own attributes in the final output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementKind {
    Graph,
    Node,
    Edge,
}

impl ResolvedAttrs {
    /// Effective attributes: for nodes and edges the `graph_nodes` /
    /// `graph_edges` defaults of the enclosing graphs (outermost first)
    /// overridden by the element's own values.
    pub fn get(&self, kind: ElementKind, id: &Term) -> &AttrMap {
        let map = match kind {
            ElementKind::Graph => &self.graphs,
            ElementKind::Node => &self.nodes,
            ElementKind::Edge => &self.edges,
        };
        map.get(id).unwrap_or(&EMPTY)
    }

    /// Values set on the element itself, without class-wide defaults.
    pub fn own(&self, kind: ElementKind, id: &Term) -> &AttrMap {
        let map = match kind {
            ElementKind::Graph => &self.graphs,
            ElementKind::Node => &self.own_nodes,
            ElementKind::Edge => &self.own_edges,
        };
        map.get(id).unwrap_or(&EMPTY)
    }

    /// `graph_nodes` values declared directly on `graph`.
    pub fn node_defaults(&self, graph: &Term) -> &AttrMap {
        self.node_defaults.get(graph).unwrap_or(&EMPTY)
    }

    /// `graph_edges` values declared directly on `graph`.
    pub fn edge_defaults(&self, graph: &Term) -> &AttrMap {
        self.edge_defaults.get(graph).unwrap_or(&EMPTY)
    }
}

pub fn resolve(fb: &FactBase) -> Result<ResolvedAttrs> {
    let envs = collect(fb)?;
    let mut out = ResolvedAttrs::default();
    for ((class, element), attrs) in envs {
        let mut values = AttrMap::new();
        for (name, env) in attrs {
            values.insert(name, render_template(&env)?);
        }
        let target = match class {
            ElementClass::Graph => &mut out.graphs,
            ElementClass::Node => &mut out.own_nodes,
            ElementClass::Edge => &mut out.own_edges,
            ElementClass::GraphNodes => &mut out.node_defaults,
            ElementClass::GraphEdges => &mut out.edge_defaults,
        };
        target.insert(element, values);
    }

    let chain = |graph: &Term| {
        let mut chain = vec![graph.clone()];
        while let Some(Some(parent)) = fb.graphs.get(chain.last().unwrap()) {
            chain.push(parent.clone());
        }
        chain.reverse();
        chain
    };
    for (node, graph) in &fb.nodes {
        let mut values = AttrMap::new();
        for g in chain(graph) {
            values.extend(out.node_defaults(&g).clone());
        }
        values.extend(out.own(ElementKind::Node, node).clone());
        out.nodes.insert(node.clone(), values);
    }
    for edge in &fb.edges {
        let id = edge.id();
        let mut values = AttrMap::new();
        for g in chain(&edge.graph) {
            values.extend(out.edge_defaults(&g).clone());
        }
        values.extend(out.own(ElementKind::Edge, &id).clone());
        out.edges.insert(id, values);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factbase::normalize;
    use crate::parse::{parse_program, parse_term};

    fn ev(text: &str) -> Result<String> {
        evaluate_value(&parse_term(text).unwrap())
    }

    fn fb(text: &str) -> FactBase {
        normalize(
            &parse_program(text).unwrap(),
            None,
            &Term::constant("default"),
        )
        .unwrap()
    }

    #[test]
    fn builtins() {
        assert_eq!(ev("pos((2,3))").unwrap(), "2,3!");
        assert_eq!(ev("pos(2,3)").unwrap(), "2,3!");
        assert_eq!(
            ev("svg(clicked,n1,visibility,visible)").unwrap(),
            "clicked___n1___visibility___visible"
        );
        assert_eq!(
            ev("svg_init(visibility,hidden)").unwrap(),
            "init___visibility___hidden"
        );
        assert_eq!(ev("concat(\"a\",1,b)").unwrap(), "a1b");
        assert_eq!(ev("svg_color").unwrap(), "currentcolor");
        assert_eq!(ev("\"x\\\"y\"").unwrap(), "x\"y");
        assert_eq!(ev("f(\"x\")").unwrap(), "f(\"x\")");
        assert_eq!(ev("(1,2)").unwrap(), "(1,2)");
        assert_eq!(
            ev("concat(\"<\",svg_color,pos(1,2),\">\")").unwrap(),
            "<currentcolor1,2!>"
        );
    }

    #[test]
    fn builtin_arity_errors() {
        for t in [
            "pos((1,2,3))",
            "pos(1)",
            "pos(1,2,3)",
            "svg(a,b,c)",
            "svg_init(a)",
            "svg_color(1)",
        ] {
            assert!(matches!(ev(t), Err(Error::Eval(_))), "{t}");
        }
    }

    #[test]
    fn collect_template_and_vars() {
        let envs = collect(&fb(
            "node(p1). attr(node,p1,(label,id),42). attr(node,p1,label,\"ID: {{id}}\").",
        ))
        .unwrap();
        let env = &envs[&(ElementClass::Node, Term::constant("p1"))]["label"];
        assert_eq!(env.template.as_deref(), Some("ID: {{id}}"));
        assert_eq!(env.vars["id"], VarValue::Scalar("42".into()));
        assert_eq!(render_template(env).unwrap(), "ID: 42");
    }

    #[test]
    fn collect_dictionary() {
        let envs = collect(&fb("node(p1). attr(node,p1,(label,name,first),\"Jane\").")).unwrap();
        let env = &envs[&(ElementClass::Node, Term::constant("p1"))]["label"];
        let mut expected = IndexMap::new();
        expected.insert("first".to_string(), "Jane".to_string());
        assert_eq!(env.vars["name"], VarValue::Dict(expected));
        let env = env.clone().with_template("{{name['first']}}");
        assert_eq!(render_template(&env).unwrap(), "Jane");
    }

    #[test]
    fn plain_values_concatenate_in_term_order() {
        // Both fact orders give the same result.
        for text in [
            "node(x). attr(node,x,color,red). attr(node,x,color,blue).",
            "node(x). attr(node,x,color,blue). attr(node,x,color,red).",
        ] {
            let r = resolve(&fb(text)).unwrap();
            assert_eq!(
                r.get(ElementKind::Node, &Term::constant("x"))["color"],
                "bluered"
            );
        }
    }

    #[test]
    fn class_parts_are_space_separated() {
        let r = resolve(&fb(
            "node(x). attr(node,x,class,svg_init(visibility,hidden)). attr(node,x,(class,c),svg(click,r,visibility,visible)).",
        ))
        .unwrap();
        assert_eq!(
            r.get(ElementKind::Node, &Term::constant("x"))["class"],
            "init___visibility___hidden click___r___visibility___visible"
        );
    }

    #[test]
    fn mixing_scalar_and_dict_is_an_error() {
        let f = fb("node(x). attr(node,x,(label,v),1). attr(node,x,(label,v,k),2).");
        assert!(matches!(collect(&f), Err(Error::Eval(_))));
        let f = fb("node(x). attr(node,x,(label,v,k),1). attr(node,x,(label,v,k),2).");
        assert!(matches!(collect(&f), Err(Error::Eval(_))));
    }

    #[test]
    fn template_rendering() {
        let mut env = AttrEnv::new().with_template("Q{{v}}");
        env.bind("v", "5").unwrap();
        assert_eq!(render_template(&env).unwrap(), "Q5");

        let mut env = AttrEnv::new();
        env.bind("a", "x").unwrap();
        env.bind("b", "y").unwrap();
        assert_eq!(render_template(&env).unwrap(), "xy");

        let mut env = AttrEnv::new().with_template("{{name['first']}} {{name['middle']}}");
        env.bind_entry("name", "first", "J").unwrap();
        env.bind_entry("name", "middle", "Q").unwrap();
        assert_eq!(render_template(&env).unwrap(), "J Q");

        let mut env =
            AttrEnv::new().with_template("<td bgcolor=\"{{color['4']}}{{opacity['4']}}\">");
        env.bind_entry("color", "4", "#00ff00").unwrap();
        assert_eq!(render_template(&env).unwrap(), "<td bgcolor=\"#00ff00\">");

        let env = AttrEnv::new().with_template("{{missing}}-{{missing['k']}}");
        assert_eq!(render_template(&env).unwrap(), "-");

        let env = AttrEnv::new().with_template("{{oops");
        assert!(matches!(render_template(&env), Err(Error::Template(_))));
    }

    #[test]
    fn defaults_and_overrides() {
        let r = resolve(&fb(
            "node(a). node(b). attr(graph_nodes,default,style,filled). attr(node,b,style,dashed).",
        ))
        .unwrap();
        assert_eq!(
            r.get(ElementKind::Node, &Term::constant("a"))["style"],
            "filled"
        );
        assert_eq!(
            r.get(ElementKind::Node, &Term::constant("b"))["style"],
            "dashed"
        );
        assert!(r.own(ElementKind::Node, &Term::constant("a")).is_empty());
        assert_eq!(
            r.node_defaults(&Term::constant("default"))["style"],
            "filled"
        );
    }

    #[test]
    fn defaults_inherit_through_subgraphs() {
        let r = resolve(&fb(
            "graph(top). graph(sub,top). node(a,sub). edge((a,a),sub).
             attr(graph_nodes,top,shape,box). attr(graph_nodes,sub,color,red).
             attr(graph_edges,top,style,dotted).",
        ))
        .unwrap();
        let a = r.get(ElementKind::Node, &Term::constant("a"));
        assert_eq!(a["shape"], "box");
        assert_eq!(a["color"], "red");
        let e = parse_term("(a,a)").unwrap();
        assert_eq!(r.get(ElementKind::Edge, &e)["style"], "dotted");
    }

    #[test]
    fn queens_cell() {
        let r = resolve(&fb(
            "node((1,1)). attr(node,(1,1),width,1). attr(node,(1,1),shape,square).
             attr(node,(1,1),style,filled). attr(node,(1,1),fillcolor,gray).
             attr(node,(1,1),pos,pos((1,1))).",
        ))
        .unwrap();
        let cell = r.get(ElementKind::Node, &parse_term("(1,1)").unwrap());
        assert_eq!(cell["pos"], "1,1!");
        assert_eq!(cell["shape"], "square");
        assert_eq!(cell["fillcolor"], "gray");
        assert_eq!(cell["width"], "1");
    }
}
