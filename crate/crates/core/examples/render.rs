//! Render the queens board with the neato engine.
//!
//! Needs the layout tool (`dot`, or FACTGRAPH_DOT_BIN).
//!
//! cargo run --example render [-- png|svg|pdf]

use factgraph::backend::{Engine, Format};
use factgraph::ingest::Source;
use factgraph::pipeline::{run, OutputMode, RenderJob, Tools};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let format: Format = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("png")
        .parse()?;
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/queens.facts");
    let job = RenderJob {
        out: OutputMode::Render,
        format,
        engine: Engine::Neato,
        dir: "out/render".into(),
        ..RenderJob::default()
    };
    for f in run(&[Source::from(path)], &job, &Tools::from_env())?.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
