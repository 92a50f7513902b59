//! External layout and LaTeX tools.
//!
//! The layout tool is invoked as `<dot> -K<engine> -T<format>` with the DOT
//! text on stdin and the artifact read from stdout. The LaTeX converter is
//! invoked as `<dot2tex> [params...]` the same way. Executables default to
//! `dot` and `dot2tex` and are overridden by `FACTGRAPH_DOT_BIN` and
//! `FACTGRAPH_D2T_BIN`.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::str::FromStr;

use crate::error::{Error, Result};

pub const DOT_BIN_ENV: &str = "FACTGRAPH_DOT_BIN";
pub const D2T_BIN_ENV: &str = "FACTGRAPH_D2T_BIN";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Engine {
    #[default]
    Dot,
    Neato,
    Fdp,
    Sfdp,
    Circo,
    Twopi,
    Nop,
    Osage,
}

impl Engine {
    pub const ALL: [Engine; 8] = [
        Engine::Dot,
        Engine::Neato,
        Engine::Fdp,
        Engine::Sfdp,
        Engine::Circo,
        Engine::Twopi,
        Engine::Nop,
        Engine::Osage,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Dot => "dot",
            Engine::Neato => "neato",
            Engine::Fdp => "fdp",
            Engine::Sfdp => "sfdp",
            Engine::Circo => "circo",
            Engine::Twopi => "twopi",
            Engine::Nop => "nop",
            Engine::Osage => "osage",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = Engine::ALL.iter().map(|e| e.as_str()).collect();
                Error::Config(format!(
                    "unknown layout engine `{s}`; valid engines: {}",
                    valid.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Format {
    #[default]
    Pdf,
    Png,
    Svg,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Pdf => "pdf",
            Format::Png => "png",
            Format::Svg => "svg",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pdf" => Ok(Format::Pdf),
            "png" => Ok(Format::Png),
            "svg" => Ok(Format::Svg),
            _ => Err(Error::Config(format!(
                "unknown output format `{s}`; valid formats: pdf, png, svg"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub engine: Engine,
    pub format: Format,
    pub out_dir: PathBuf,
    /// File stem; the format is appended as extension.
    pub name: String,
}

impl RenderSpec {
    pub fn new(out_dir: impl Into<PathBuf>, name: impl Into<String>) -> RenderSpec {
        RenderSpec {
            engine: Engine::default(),
            format: Format::default(),
            out_dir: out_dir.into(),
            name: name.into(),
        }
    }

    pub fn engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    pub fn path(&self) -> PathBuf {
        self.out_dir.join(format!("{}.{}", self.name, self.format))
    }
}

/// Executable locations for the external tools.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Backend {
    pub dot_bin: PathBuf,
    pub d2t_bin: PathBuf,
}

impl Default for Backend {
    fn default() -> Self {
        Backend {
            dot_bin: "dot".into(),
            d2t_bin: "dot2tex".into(),
        }
    }
}

impl Backend {
    pub fn from_env() -> Backend {
        let mut b = Backend::default();
        if let Some(p) = std::env::var_os(DOT_BIN_ENV).filter(|p| !p.is_empty()) {
            b.dot_bin = p.into();
        }
        if let Some(p) = std::env::var_os(D2T_BIN_ENV).filter(|p| !p.is_empty()) {
            b.d2t_bin = p.into();
        }
        b
    }

    /// Lays out `dot_text` and returns the artifact bytes.
    pub fn layout(&self, dot_text: &str, engine: Engine, format: &str) -> Result<Vec<u8>> {
        let args = [format!("-K{engine}"), format!("-T{format}")];
        run_tool(&self.dot_bin, &args, dot_text, DOT_BIN_ENV)
    }

    /// Renders to `<out_dir>/<name>.<format>`.
    pub fn render(&self, dot_text: &str, spec: &RenderSpec) -> Result<PathBuf> {
        let bytes = self.layout(dot_text, spec.engine, spec.format.as_str())?;
        let path = spec.path();
        write_atomic(&path, &bytes)?;
        Ok(path)
    }

    /// Converts to LaTeX, writing `<out_dir>/<name>.tex`. `params` are passed
    /// to the converter verbatim.
    pub fn to_tex(
        &self,
        dot_text: &str,
        params: &[String],
        out_dir: &Path,
        name: &str,
    ) -> Result<PathBuf> {
        let bytes = run_tool(&self.d2t_bin, params, dot_text, D2T_BIN_ENV)?;
        let path = out_dir.join(format!("{name}.tex"));
        write_atomic(&path, &bytes)?;
        Ok(path)
    }
}

/// [`Backend::render`] with executables taken from the environment.
pub fn render(dot_text: &str, spec: &RenderSpec) -> Result<PathBuf> {
    Backend::from_env().render(dot_text, spec)
}

/// [`Backend::to_tex`] with executables taken from the environment.
pub fn to_tex(dot_text: &str, params: &[String], out_dir: &Path, name: &str) -> Result<PathBuf> {
    Backend::from_env().to_tex(dot_text, params, out_dir, name)
}

pub(crate) fn run_tool(
    program: &Path,
    args: &[String],
    stdin: &str,
    env_var: &'static str,
) -> Result<Vec<u8>> {
    let (output, command_line) = run_process(program, args, stdin, env_var)?;
    if !output.status.success() {
        return Err(Error::BackendFailure {
            command: command_line,
            status: output.status.to_string(),
            stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
        });
    }
    Ok(output.stdout)
}

/// Runs `program` with `stdin` piped in and returns its output along with
/// the printed command line. The exit status is not checked.
pub(crate) fn run_process(
    program: &Path,
    args: &[String],
    stdin: &str,
    env_var: &'static str,
) -> Result<(Output, String)> {
    let command_line = std::iter::once(program.display().to_string())
        .chain(args.iter().cloned())
        .collect::<Vec<_>>()
        .join(" ");
    let mut child = Command::new(program)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound | std::io::ErrorKind::PermissionDenied => {
                Error::BackendMissing(program.display().to_string(), env_var)
            }
            _ => Error::io(program, e),
        })?;

    let mut pipe = child.stdin.take().expect("stdin is piped");
    let input = stdin.as_bytes().to_vec();
    let writer = std::thread::spawn(move || {
        // A tool that exits early closes its end; the exit status reports why.
        let _ = pipe.write_all(&input);
    });
    let output = child
        .wait_with_output()
        .map_err(|e| Error::io(program, e))?;
    let _ = writer.join();
    Ok((output, command_line))
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed write leaves nothing behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(tmp.path(), e))?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        let perms = std::fs::Permissions::from_mode(0o644);
        std::fs::set_permissions(tmp.path(), perms).map_err(|e| Error::io(tmp.path(), e))?;
    }
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// A file stem from a printed graph id: characters outside
/// `[A-Za-z0-9_-]` become `_`.
pub fn sanitize_stem(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}
