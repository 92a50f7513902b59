//! Parse fact text and print terms in canonical order.
//!
//! cargo run --example parse_facts

use factgraph::parse::{parse_program, parse_term};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let program = r#"
        % nodes named by coordinates
        node((1,2)). node(g(10)). node(g(2)). node("quoted \"label\"").
        edge(((1,2),g(2))).
    "#;
    let facts = parse_program(program)?;
    for f in &facts {
        println!("{f}");
    }

    let mut terms: Vec<_> = facts.iter().flat_map(|f| f.args.clone()).collect();
    terms.sort();
    terms.dedup();
    println!("\nterm order:");
    for t in &terms {
        println!("  {t}");
    }

    match parse_term("f(X)") {
        Ok(t) => println!("parsed {t}"),
        Err(e) => println!("\nrejected `f(X)` at {e}"),
    }
    Ok(())
}
