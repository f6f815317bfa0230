use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("part-length profile mismatch: {left:?} vs {right:?}")]
    ProfileMismatch { left: Vec<usize>, right: Vec<usize> },

    /// Two-dimensional operations need every part to have the same length.
    #[error("code is not a matrix: part lengths {0:?} are not all equal")]
    NotAMatrix(Vec<usize>),

    #[error("verification failed: {0}")]
    Verification(String),

    /// Packing strength or index does not match the code parameters.
    #[error("strength mismatch: {0}")]
    StrengthMismatch(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("unavailable: {0}")]
    Unavailable(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("necessary condition fails: {0}")]
    NecessaryCondition(String),

    #[error("known exception: {0}")]
    KnownException(String),

    #[error("candidate cap exceeded: {count} candidate words, cap is {cap}")]
    CandidateCap { count: String, cap: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
