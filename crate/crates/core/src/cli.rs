//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, configuration or model error, 2 failure
//! of an external tool (layout tool, LaTeX converter, solver), 65 syntax
//! error in the input facts.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

use crate::animate::AnimationSpec;
use crate::error::{Error, Result};
use crate::ingest::Source;
use crate::parse::parse_term;
use crate::pipeline::{run, RenderJob, RunOutput, Tools};
use crate::term::Term;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_BACKEND: i32 = 2;
pub const EXIT_SYNTAX: i32 = 65;

/// Compile graph facts into DOT, images, animations and LaTeX.
#[derive(Debug, Parser)]
#[command(name = "factgraph", version, args_override_self = true)]
pub struct Args {
    /// Fact files or a solver JSON document; `-` or none reads stdin.
    pub files: Vec<PathBuf>,

    /// Output mode: facts, dot, render, animate or tex.
    #[arg(long, default_value = "facts")]
    pub out: String,

    /// Rendered format: pdf, png or svg.
    #[arg(long, default_value = "pdf")]
    pub format: String,

    /// Layout engine.
    #[arg(long, default_value = "dot")]
    pub engine: String,

    /// graph or digraph.
    #[arg(long = "type", default_value = "graph")]
    pub graph_type: String,

    /// Only facts whose predicate starts with this prefix are read.
    #[arg(long)]
    pub prefix: Option<String>,

    /// Graph that receives elements without an explicit graph.
    #[arg(long, default_value = "default")]
    pub default_graph: String,

    /// Keep only this root graph (repeatable).
    #[arg(long = "select-graph")]
    pub select_graph: Vec<String>,

    /// Keep only this model, counted from 0 (repeatable).
    #[arg(long = "select-model")]
    pub select_model: Vec<usize>,

    /// Visualization encoding run through the solver first.
    #[arg(long)]
    pub viz_encoding: Option<PathBuf>,

    /// Pass the helper script (pos, concat, svg, ...) to the solver.
    #[arg(long)]
    pub viz_helpers: bool,

    /// Animation frames per second.
    #[arg(long, default_value = "1")]
    pub fps: String,

    /// Frame order: asc-str, desc-str, asc-int, desc-int or none.
    #[arg(long, default_value = "asc-str")]
    pub sort: String,

    /// Play the animation once.
    #[arg(long)]
    pub no_loop: bool,

    /// Argument passed to the LaTeX converter (repeatable).
    #[arg(long = "tex-param", allow_hyphen_values = true)]
    pub tex_param: Vec<String>,

    /// Output directory.
    #[arg(long, default_value = "out")]
    pub dir: PathBuf,

    /// Output name with `{graph}` and `{model}` placeholders.
    #[arg(long)]
    pub name_format: Option<String>,
}

fn term_arg(flag: &str, value: &str) -> Result<Term> {
    parse_term(value).map_err(|e| Error::Config(format!("--{flag}={value}: {e}")))
}

impl Args {
    pub fn to_job(&self) -> Result<RenderJob> {
        let directed = match self.graph_type.as_str() {
            "graph" => false,
            "digraph" => true,
            t => {
                return Err(Error::Config(format!(
                    "unknown graph type `{t}`; valid types: graph, digraph"
                )))
            }
        };
        let fps: f64 = self
            .fps
            .parse()
            .map_err(|_| Error::Config(format!("--fps expects a number, got `{}`", self.fps)))?;
        let animation = AnimationSpec::new(fps)?
            .sort_mode(self.sort.parse()?)
            .looping(!self.no_loop);
        Ok(RenderJob {
            out: self.out.parse()?,
            format: self.format.parse()?,
            engine: self.engine.parse()?,
            directed,
            prefix: self.prefix.clone().filter(|p| !p.is_empty()),
            default_graph: term_arg("default-graph", &self.default_graph)?,
            select_graphs: self
                .select_graph
                .iter()
                .map(|g| term_arg("select-graph", g))
                .collect::<Result<_>>()?,
            select_models: self.select_model.clone(),
            viz_encoding: self.viz_encoding.clone(),
            animation,
            tex_params: self.tex_param.clone(),
            dir: self.dir.clone(),
            name_format: self.name_format.clone(),
        })
    }

    pub fn sources(&self) -> Vec<Source> {
        if self.files.is_empty() {
            return vec![Source::Stdin];
        }
        self.files
            .iter()
            .map(|f| {
                if f.as_os_str() == "-" {
                    Source::Stdin
                } else {
                    Source::from(f.clone())
                }
            })
            .collect()
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } => EXIT_SYNTAX,
        Error::BackendMissing(..) | Error::BackendFailure { .. } | Error::Solver { .. } => {
            EXIT_BACKEND
        }
        _ => EXIT_USER,
    }
}

/// Runs with explicit arguments (the first is the program name) and
/// returns the exit code.
pub fn main_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USER,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    let mut tools = Tools::from_env();
    tools.solver.helpers = args.viz_helpers;
    let result = args
        .to_job()
        .and_then(|job| run(&args.sources(), &job, &tools));
    match result {
        Ok(RunOutput {
            stdout: text,
            files,
        }) => {
            let _ = stdout.write_all(text.as_bytes());
            for f in files {
                let _ = writeln!(stderr, "wrote {}", f.display());
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs with the process arguments.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    main_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
