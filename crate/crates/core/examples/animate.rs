//! Animate a warehouse plan, one graph per time step.
//!
//! Needs the layout tool (`dot`, or FACTGRAPH_DOT_BIN).
//!
//! cargo run --example animate [-- fps]

use factgraph::animate::{AnimationSpec, SortMode};
use factgraph::backend::Engine;
use factgraph::ingest::Source;
use factgraph::pipeline::{run, OutputMode, RenderJob, Tools};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fps: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(2.0);
    let path =
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/asprilo.facts");
    let job = RenderJob {
        out: OutputMode::Animate,
        engine: Engine::Neato,
        directed: true,
        animation: AnimationSpec::new(fps)?.sort_mode(SortMode::AscInt),
        dir: "out/animate".into(),
        ..RenderJob::default()
    };
    for f in run(&[Source::from(path)], &job, &Tools::from_env())?.files {
        println!(
            "wrote {} ({} cs per frame)",
            f.display(),
            job.animation.delay_cs()
        );
    }
    Ok(())
}
