//! Pick models out of a solver JSON document.
//!
//! cargo run --example select_models [-- 0 9]

use factgraph::ingest::Source;
use factgraph::pipeline::{run, RenderJob, Tools};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let picks: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/multiple-models.json");
    let job = RenderJob {
        select_models: if picks.is_empty() { vec![0, 9] } else { picks },
        ..RenderJob::default()
    };
    print!(
        "{}",
        run(&[Source::from(path)], &job, &Tools::default())?.stdout
    );
    Ok(())
}
