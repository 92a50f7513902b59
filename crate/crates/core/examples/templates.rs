//! Attribute templates, dictionary variables and built-in value functions.
//!
//! cargo run --example templates

use factgraph::attr::{evaluate_value, render_template, resolve, AttrEnv, ElementKind};
use factgraph::factbase::normalize;
use factgraph::ingest::{load_facts, Source};
use factgraph::parse::parse_term;
use factgraph::term::Term;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for t in [
        "pos((2,3))",
        "concat(\"R\",1)",
        "svg(clicked,n1,visibility,visible)",
        "svg_init(visibility,hidden)",
        "svg_color",
    ] {
        println!("{t:40} => {}", evaluate_value(&parse_term(t)?)?);
    }

    let mut env = AttrEnv::new().with_template("{{name['first']}} {{name['middle']}} {{lastname}}");
    env.bind_entry("name", "first", "Ada")?;
    env.bind_entry("name", "middle", "King")?;
    env.bind("lastname", "Lovelace")?;
    println!("\n{}", render_template(&env)?);

    let program = r#"
        node(p).
        attr(node,p,label,"{{greeting}}, {{who}}!").
        attr(node,p,(label,greeting),"Hello").
        attr(node,p,(label,who),world).
        attr(node,p,(xlabel,a),"no ").
        attr(node,p,(xlabel,b),template).
    "#;
    let fb = normalize(
        &load_facts(&[Source::text("inline", program)])?,
        None,
        &Term::constant("default"),
    )?;
    let attrs = resolve(&fb)?;
    for (k, v) in attrs.get(ElementKind::Node, &Term::constant("p")) {
        println!("{k} = {v}");
    }
    Ok(())
}
