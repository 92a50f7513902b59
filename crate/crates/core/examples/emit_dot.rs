//! Emit DOT for the graph coloring fixture.
//!
//! cargo run --example emit_dot [-- --directed]

use factgraph::attr::resolve;
use factgraph::dot::{emit_dot, GraphModel};
use factgraph::factbase::normalize;
use factgraph::ingest::{load_facts, Source};
use factgraph::term::Term;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let directed = std::env::args().any(|a| a == "--directed");
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/color.facts");
    let fb = normalize(
        &load_facts(&[Source::from(path)])?,
        None,
        &Term::constant("default"),
    )?;
    let attrs = resolve(&fb)?;
    for g in GraphModel::build_all(&fb, &attrs, directed)? {
        print!("{}", emit_dot(&g)?);
    }
    Ok(())
}
