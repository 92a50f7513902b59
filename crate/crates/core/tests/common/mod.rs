#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub mod gif_reader;
pub mod strategies;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn on_path(name: &str) -> Option<PathBuf> {
    let path = std::env::var_os("PATH")?;
    std::env::split_paths(&path)
        .map(|d| d.join(name))
        .find(|p| p.is_file())
}

fn runs(program: &Path, args: &[&str]) -> bool {
    Command::new(program)
        .args(args)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn from_env(var: &str) -> Option<PathBuf> {
    std::env::var_os(var)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// The layout tool: `FACTGRAPH_DOT_BIN`, `dot` on PATH, or the bundled
/// WebAssembly build under `tools/graphviz-wasm` when its packages are
/// installed.
pub fn dot_bin() -> Option<PathBuf> {
    if let Some(p) = from_env("FACTGRAPH_DOT_BIN") {
        return Some(p);
    }
    if let Some(p) = on_path("dot").filter(|p| runs(p, &["-V"])) {
        return Some(p);
    }
    let wasm = workspace_root().join("tools/graphviz-wasm");
    let bin = wasm.join("dot");
    (wasm.join("node_modules").is_dir() && runs(&bin, &["-V"])).then_some(bin)
}

/// An ASP solver with Python scripting: `FACTGRAPH_SOLVER_BIN` or the
/// `tools/clingo` wrapper around the clingo Python package.
pub fn solver_bin() -> Option<PathBuf> {
    if let Some(p) = from_env("FACTGRAPH_SOLVER_BIN") {
        return Some(p);
    }
    let wrapper = workspace_root().join("tools/clingo");
    if runs(&wrapper, &["--version"]) {
        return Some(wrapper);
    }
    on_path("clingo").filter(|p| runs(p, &["--version"]))
}

/// dot2tex. It calls `dot` itself, so the layout tool's directory is put
/// first on its PATH by [`d2t_command_env`].
pub fn d2t_bin() -> Option<PathBuf> {
    from_env("FACTGRAPH_D2T_BIN").or_else(|| on_path("dot2tex"))
}

/// PATH value with the layout tool's directory prepended.
pub fn path_with_dot() -> Option<std::ffi::OsString> {
    let dot = dot_bin()?;
    let dir = dot.parent()?.to_path_buf();
    let mut dirs = vec![dir];
    if let Some(p) = std::env::var_os("PATH") {
        dirs.extend(std::env::split_paths(&p));
    }
    std::env::join_paths(dirs).ok()
}

/// Skips the calling test when `tool` is `None`.
#[macro_export]
macro_rules! require {
    ($tool:expr, $name:literal) => {
        match $tool {
            Some(t) => t,
            None => {
                eprintln!("skipping: {} not available", $name);
                return;
            }
        }
    };
}
