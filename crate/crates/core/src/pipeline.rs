//! End-to-end orchestration: input, optional encoding, normalization,
//! selection, attribute resolution and one output mode.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::animate::{assemble_gif, order_frames, AnimationSpec};
use crate::attr::resolve;
use crate::backend::{sanitize_stem, write_atomic, Backend, Engine, Format};
use crate::dot::{emit_dot, GraphModel};
use crate::error::{Error, Result};
use crate::factbase::{emit_facts, normalize, select_graphs, FactBase};
use crate::ingest::{select_models, RawInput, Source};
use crate::solver::{run_encoding, SolverConfig};
use crate::svg::{inject_runtime, RUNTIME_SCRIPT};
use crate::term::{Fact, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputMode {
    #[default]
    Facts,
    Dot,
    Render,
    Animate,
    Tex,
}

impl OutputMode {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputMode::Facts => "facts",
            OutputMode::Dot => "dot",
            OutputMode::Render => "render",
            OutputMode::Animate => "animate",
            OutputMode::Tex => "tex",
        }
    }
}

impl fmt::Display for OutputMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OutputMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "facts" => Ok(OutputMode::Facts),
            "dot" => Ok(OutputMode::Dot),
            "render" => Ok(OutputMode::Render),
            "animate" => Ok(OutputMode::Animate),
            "tex" => Ok(OutputMode::Tex),
            _ => Err(Error::Config(format!(
                "unknown output mode `{s}`; valid modes: facts, dot, render, animate, tex"
            ))),
        }
    }
}

/// Everything one run needs besides the input sources.
#[derive(Debug, Clone)]
pub struct RenderJob {
    pub out: OutputMode,
    pub format: Format,
    pub engine: Engine,
    pub directed: bool,
    pub prefix: Option<String>,
    pub default_graph: Term,
    pub select_graphs: Vec<Term>,
    pub select_models: Vec<usize>,
    pub viz_encoding: Option<PathBuf>,
    pub animation: AnimationSpec,
    pub tex_params: Vec<String>,
    pub dir: PathBuf,
    /// Output stem template with `{graph}` and `{model}` placeholders.
    pub name_format: Option<String>,
}

impl Default for RenderJob {
    fn default() -> Self {
        RenderJob {
            out: OutputMode::default(),
            format: Format::default(),
            engine: Engine::default(),
            directed: false,
            prefix: None,
            default_graph: Term::constant("default"),
            select_graphs: Vec::new(),
            select_models: Vec::new(),
            viz_encoding: None,
            animation: AnimationSpec::default(),
            tex_params: Vec::new(),
            dir: PathBuf::from("out"),
            name_format: None,
        }
    }
}

/// What a run produced: text meant for stdout and files written.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub files: Vec<PathBuf>,
}

/// External tools used by a run.
#[derive(Debug, Clone, Default)]
pub struct Tools {
    pub backend: Backend,
    pub solver: SolverConfig,
}

impl Tools {
    pub fn from_env() -> Tools {
        Tools {
            backend: Backend::from_env(),
            solver: SolverConfig::from_env(),
        }
    }
}

/// Fact bases after the encoding, normalization and graph selection, one
/// per selected model.
///
/// With a visualization encoding, plain input is handed to the solver
/// verbatim, so it may be any program the solver accepts. It counts as a
/// single model with index 0. Solver JSON input is solved model by model,
/// using only the first model unless models are selected.
pub fn prepare(
    sources: &[Source],
    job: &RenderJob,
    tools: &Tools,
) -> Result<Vec<(usize, FactBase)>> {
    let raw = RawInput::read(sources)?;
    let models: Vec<(usize, Vec<Fact>)> = match &job.viz_encoding {
        Some(enc) if !raw.is_json()? => {
            if let Some(i) = job.select_models.iter().find(|i| **i != 0) {
                return Err(Error::Range(format!(
                    "model {i} requested but only 1 model(s) available"
                )));
            }
            vec![(0, visualize(&raw.joined(), enc, &tools.solver)?)]
        }
        enc => {
            let mut models = select_models(&raw.parse()?, &job.select_models)?;
            if enc.is_some() && job.select_models.is_empty() {
                models.truncate(1);
            }
            models
                .into_iter()
                .map(|m| match enc {
                    Some(enc) => {
                        let text: String = m.atoms.iter().map(|f| format!("{f}\n")).collect();
                        Ok((m.index, visualize(&text, enc, &tools.solver)?))
                    }
                    None => Ok((m.index, m.atoms)),
                })
                .collect::<Result<_>>()?
        }
    };
    models
        .into_iter()
        .map(|(index, atoms)| {
            let mut fb = normalize(&atoms, job.prefix.as_deref(), &job.default_graph)?;
            if !job.select_graphs.is_empty() {
                fb = select_graphs(&fb, &job.select_graphs)?;
            }
            Ok((index, fb))
        })
        .collect()
}

fn visualize(program: &str, encoding: &Path, solver: &SolverConfig) -> Result<Vec<Fact>> {
    let result = run_encoding(program, encoding, solver)?;
    result
        .models
        .into_iter()
        .next()
        .map(|m| m.atoms)
        .ok_or(Error::Unsat)
}

/// One emitted root graph.
#[derive(Debug, Clone)]
pub struct DotDocument {
    pub model: usize,
    pub graph: Term,
    pub stem: String,
    pub text: String,
}

/// DOT text for every root graph of every prepared model.
pub fn dot_documents(prepared: &[(usize, FactBase)], job: &RenderJob) -> Result<Vec<DotDocument>> {
    let multi_model = prepared.len() > 1;
    let mut docs = Vec::new();
    let mut stems = BTreeSet::new();
    for (index, fb) in prepared {
        let attrs = resolve(fb)?;
        for g in GraphModel::build_all(fb, &attrs, job.directed)? {
            let stem = stem_for(job.name_format.as_deref(), &g.id, *index, multi_model);
            if !stems.insert(stem.clone()) {
                return Err(Error::Config(format!(
                    "output name `{stem}` is used by more than one graph; adjust --name-format"
                )));
            }
            docs.push(DotDocument {
                model: *index,
                graph: g.id.clone(),
                stem,
                text: emit_dot(&g)?,
            });
        }
    }
    Ok(docs)
}

/// Output stem for a graph. Without a name format the stem is the sanitized
/// printed id, suffixed by `_<model>` when several models are selected.
pub fn stem_for(
    name_format: Option<&str>,
    graph: &Term,
    model: usize,
    multi_model: bool,
) -> String {
    let graph = sanitize_stem(&graph.to_string());
    match name_format {
        Some(f) => sanitize_stem(
            &f.replace("{graph}", &graph)
                .replace("{model}", &model.to_string()),
        ),
        None if multi_model => format!("{graph}_{model}"),
        None => graph,
    }
}

/// Runs the whole pipeline.
pub fn run(sources: &[Source], job: &RenderJob, tools: &Tools) -> Result<RunOutput> {
    let prepared = prepare(sources, job, tools)?;
    match job.out {
        OutputMode::Facts => Ok(RunOutput {
            stdout: facts_text(&prepared),
            files: Vec::new(),
        }),
        OutputMode::Dot => {
            let docs = dot_documents(&prepared, job)?;
            if docs.len() == 1 {
                return Ok(RunOutput {
                    stdout: docs[0].text.clone(),
                    files: Vec::new(),
                });
            }
            let mut files = Vec::with_capacity(docs.len());
            for d in &docs {
                let path = job.dir.join(format!("{}.dot", d.stem));
                write_atomic(&path, d.text.as_bytes())?;
                files.push(path);
            }
            Ok(RunOutput {
                stdout: String::new(),
                files,
            })
        }
        OutputMode::Render => {
            let docs = dot_documents(&prepared, job)?;
            let files = docs
                .par_iter()
                .map(|d| render_one(d, job, tools))
                .collect::<Result<Vec<_>>>()?;
            Ok(RunOutput {
                stdout: String::new(),
                files,
            })
        }
        OutputMode::Animate => animate(&prepared, job, tools),
        OutputMode::Tex => {
            let docs = dot_documents(&prepared, job)?;
            let files = docs
                .par_iter()
                .map(|d| {
                    tools
                        .backend
                        .to_tex(&d.text, &job.tex_params, &job.dir, &d.stem)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(RunOutput {
                stdout: String::new(),
                files,
            })
        }
    }
}

/// Canonical facts; with several models each block starts with a
/// `% model <i>` comment line.
pub fn facts_text(prepared: &[(usize, FactBase)]) -> String {
    if let [(_, fb)] = prepared {
        return emit_facts(fb);
    }
    prepared
        .iter()
        .map(|(i, fb)| format!("% model {i}\n{}", emit_facts(fb)))
        .collect()
}

fn render_one(doc: &DotDocument, job: &RenderJob, tools: &Tools) -> Result<PathBuf> {
    let mut bytes = tools
        .backend
        .layout(&doc.text, job.engine, job.format.as_str())?;
    if job.format == Format::Svg {
        let svg = String::from_utf8(bytes)
            .map_err(|_| Error::Svg(format!("layout output for `{}` is not UTF-8", doc.graph)))?;
        bytes = inject_runtime(&svg, RUNTIME_SCRIPT)?.into_bytes();
    }
    let path = job.dir.join(format!("{}.{}", doc.stem, job.format));
    write_atomic(&path, &bytes)?;
    Ok(path)
}

/// One GIF per selected model, named `movie` (or `movie_<model>` when
/// several models are selected). Frames are always rendered as PNG.
fn animate(prepared: &[(usize, FactBase)], job: &RenderJob, tools: &Tools) -> Result<RunOutput> {
    let frames_dir = tempfile::tempdir().map_err(|e| Error::io(std::env::temp_dir(), e))?;
    let mut frame_job = job.clone();
    frame_job.format = Format::Png;
    frame_job.dir = frames_dir.path().to_path_buf();
    frame_job.name_format = None;

    let mut files = Vec::new();
    for (index, fb) in prepared {
        let single = [(*index, fb.clone())];
        let docs = dot_documents(&single, &frame_job)?;
        let ids: Vec<Term> = docs.iter().map(|d| d.graph.clone()).collect();
        let ordered = order_frames(&ids, job.animation.sort_mode)?;
        let rendered = docs
            .par_iter()
            .map(|d| Ok((d.graph.clone(), render_one(d, &frame_job, tools)?)))
            .collect::<Result<Vec<_>>>()?;
        let frames: Vec<PathBuf> = ordered
            .iter()
            .map(|id| {
                rendered
                    .iter()
                    .find(|(g, _)| g == id)
                    .map(|(_, p)| p.clone())
                    .expect("every ordered id was rendered")
            })
            .collect();
        let stem = if prepared.len() > 1 {
            format!("movie_{index}")
        } else {
            "movie".to_string()
        };
        let out = job.dir.join(format!("{stem}.gif"));
        files.push(assemble_gif(&frames, &job.animation, &out)?);
    }
    Ok(RunOutput {
        stdout: String::new(),
        files,
    })
}
