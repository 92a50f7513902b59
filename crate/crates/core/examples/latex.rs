//! Convert the coloring graph to LaTeX.
//!
//! Needs dot2tex (or FACTGRAPH_D2T_BIN) and the layout tool.
//!
//! cargo run --example latex [-- extra dot2tex args]

use factgraph::ingest::Source;
use factgraph::pipeline::{run, OutputMode, RenderJob, Tools};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/color.facts");
    let job = RenderJob {
        out: OutputMode::Tex,
        tex_params: std::env::args().skip(1).collect(),
        dir: "out/tex".into(),
        ..RenderJob::default()
    };
    for f in run(&[Source::from(path)], &job, &Tools::from_env())?.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
