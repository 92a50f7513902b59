//! Run a visualization encoding through the solver, then emit DOT.
//!
//! Needs `clingo` with Python scripting (or FACTGRAPH_SOLVER_BIN).
//!
//! cargo run --example solver_pipeline

use factgraph::ingest::Source;
use factgraph::pipeline::{run, OutputMode, RenderJob, Tools};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut tools = Tools::from_env();
    tools.solver.helpers = true;

    // Solver JSON for the queens puzzle, visualized by queens-viz.lp.
    let job = RenderJob {
        out: OutputMode::Dot,
        viz_encoding: Some(dir.join("queens-viz.lp")),
        select_models: vec![0],
        ..RenderJob::default()
    };
    print!(
        "{}",
        run(&[Source::from(dir.join("queens.json"))], &job, &tools)?.stdout
    );

    // Plain facts with a template encoding.
    let job = RenderJob {
        viz_encoding: Some(dir.join("template.lp")),
        ..RenderJob::default()
    };
    print!(
        "{}",
        run(&[Source::from(dir.join("people.lp"))], &job, &tools)?.stdout
    );
    Ok(())
}
