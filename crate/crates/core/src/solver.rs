//! Running a visualization encoding through an external ASP solver.
//!
//! The solver is invoked as
//! `<solver> <encoding> [helpers] - --outf=2 <models>` with the facts on
//! stdin. `-` makes the solver read stdin alongside the files. Exit codes
//! 10, 20 and 30 are solver results (satisfiable, unsatisfiable, exhausted)
//! and count as success, like 0.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::backend::run_process;
use crate::error::{Error, Result};
use crate::ingest::{load_solver_json, SolverResult};

pub const SOLVER_BIN_ENV: &str = "FACTGRAPH_SOLVER_BIN";

/// Solver-side definitions of `pos`, `concat`, `svg`, `svg_init` and
/// `svg_color` for solvers with Python scripting.
pub const HELPERS_SCRIPT: &str = include_str!("../assets/helpers.lp");

const SUCCESS_CODES: [i32; 4] = [0, 10, 20, 30];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub solver_bin: PathBuf,
    /// Pass [`HELPERS_SCRIPT`] alongside the encoding.
    pub helpers: bool,
    /// Number of models to request; 0 asks for all.
    pub models: usize,
    /// Extra arguments appended verbatim.
    pub args: Vec<String>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            solver_bin: "clingo".into(),
            helpers: false,
            models: 1,
            args: Vec::new(),
        }
    }
}

impl SolverConfig {
    pub fn from_env() -> SolverConfig {
        let mut c = SolverConfig::default();
        if let Some(p) = std::env::var_os(SOLVER_BIN_ENV).filter(|p| !p.is_empty()) {
            c.solver_bin = p.into();
        }
        c
    }

    pub fn helpers(mut self, on: bool) -> Self {
        self.helpers = on;
        self
    }
}

/// Solves `encoding` together with `facts` and parses the JSON output.
pub fn run_encoding(facts: &str, encoding: &Path, config: &SolverConfig) -> Result<SolverResult> {
    if !encoding.is_file() {
        return Err(Error::io(
            encoding,
            std::io::Error::new(std::io::ErrorKind::NotFound, "encoding not found"),
        ));
    }
    let helpers = if config.helpers {
        let mut f = tempfile::Builder::new()
            .prefix("factgraph-helpers")
            .suffix(".lp")
            .tempfile()
            .map_err(|e| Error::io(std::env::temp_dir(), e))?;
        f.write_all(HELPERS_SCRIPT.as_bytes())
            .map_err(|e| Error::io(f.path(), e))?;
        Some(f)
    } else {
        None
    };

    let mut args = vec![encoding.display().to_string()];
    if let Some(h) = &helpers {
        args.push(h.path().display().to_string());
    }
    args.push("-".into());
    args.push("--outf=2".into());
    args.push(config.models.to_string());
    args.extend(config.args.iter().cloned());

    let (output, command) = run_process(&config.solver_bin, &args, facts, SOLVER_BIN_ENV)?;
    let ok = output
        .status
        .code()
        .is_some_and(|c| SUCCESS_CODES.contains(&c));
    if !ok {
        return Err(Error::Solver {
            command,
            status: output.status.to_string(),
            stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
        });
    }
    let stdout = String::from_utf8_lossy(&output.stdout);
    load_solver_json(&stdout)
}
