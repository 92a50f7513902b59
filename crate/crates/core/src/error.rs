use std::fmt;
use std::path::PathBuf;

/// A parse failure with a 1-based position of the first offending character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{source_name}:{error}")]
    Syntax {
        source_name: String,
        error: SyntaxError,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed solver output: {0}")]
    Format(String),

    #[error("the solver reported no stable model (UNSATISFIABLE)")]
    Unsat,

    #[error("{0}")]
    Range(String),

    #[error("invalid graph model: {0}")]
    Model(String),

    #[error("cannot evaluate attribute value: {0}")]
    Eval(String),

    #[error("bad template: {0}")]
    Template(String),

    #[error("cannot emit DOT: {0}")]
    Emit(String),

    #[error("{0}")]
    Config(String),

    #[error("executable `{0}` not found (set {1} to override)")]
    BackendMissing(String, &'static str),

    #[error("`{command}` failed with {status}:\n{stderr}")]
    BackendFailure {
        command: String,
        status: String,
        stderr: String,
    },

    #[error("solver `{command}` failed with {status}:\n{stderr}")]
    Solver {
        command: String,
        status: String,
        stderr: String,
    },

    #[error("cannot sort frames: {0}")]
    Sort(String),

    #[error("bad animation frame: {0}")]
    Frame(String),

    #[error("bad interaction class: {0}")]
    Class(String),

    #[error("bad SVG document: {0}")]
    Svg(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn syntax(source_name: impl Into<String>, error: SyntaxError) -> Self {
        Error::Syntax {
            source_name: source_name.into(),
            error,
        }
    }
}
