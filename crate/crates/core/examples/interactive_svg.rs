//! Render the expandable tree as an interactive SVG.
//!
//! Needs the layout tool (`dot`, or FACTGRAPH_DOT_BIN).
//!
//! cargo run --example interactive_svg

use factgraph::backend::Format;
use factgraph::ingest::Source;
use factgraph::pipeline::{run, OutputMode, RenderJob, Tools};
use factgraph::svg::{parse_class_string, MARKER};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for c in
        parse_class_string("node clicked___1___visibility___visible init___visibility___hidden")?
    {
        println!("{c:?}");
    }

    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/tree.facts");
    let job = RenderJob {
        out: OutputMode::Render,
        format: Format::Svg,
        dir: "out/svg".into(),
        ..RenderJob::default()
    };
    for f in run(&[Source::from(path)], &job, &Tools::from_env())?.files {
        let svg = std::fs::read_to_string(&f)?;
        println!(
            "wrote {} (runtime embedded: {})",
            f.display(),
            svg.contains(MARKER)
        );
    }
    Ok(())
}
