//! Normalize facts describing several graphs and subgraphs.
//!
//! cargo run --example normalize

use factgraph::factbase::{build_hierarchy, emit_facts, normalize, select_graphs};
use factgraph::ingest::{load_facts, Source};
use factgraph::term::Term;

fn fixture(name: &str) -> Source {
    Source::from(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures")
            .join(name),
    )
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let default = Term::constant("default");

    let facts = load_facts(&[Source::text(
        "inline",
        "node(a). node(b). edge((a,b)). unrelated(1).",
    )])?;
    print!("{}", emit_facts(&normalize(&facts, None, &default)?));

    let multiple = normalize(&load_facts(&[fixture("multiple.facts")])?, None, &default)?;
    println!(
        "\n{} graphs, {} nodes, {} edges",
        multiple.graphs.len(),
        multiple.nodes.len(),
        multiple.edges.len()
    );
    let picked = select_graphs(&multiple, &[Term::function("g", vec![Term::int(3)])])?;
    print!("{}", emit_facts(&picked));

    let nested = normalize(
        &load_facts(&[fixture("multiple-sub.facts")])?,
        None,
        &default,
    )?;
    let trees = build_hierarchy(&nested)?;
    println!(
        "\nsubgraph chain rooted at {} has depth {}",
        trees[0].id,
        trees[0].depth()
    );

    let prefixed = load_facts(&[Source::text(
        "prefixed",
        "viz-node(a). viz-attr(node,a,color,red). node(z).",
    )])?;
    print!(
        "\n{}",
        emit_facts(&normalize(&prefixed, Some("viz-"), &default)?)
    );
    Ok(())
}
