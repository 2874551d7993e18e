use thiserror::Error;

/// Errors produced by the algebra engine and the problem-file front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("homogeneity violated: {0}")]
    Homogeneity(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degree cap {cap} exceeded (pair of degree {degree})")]
    CapExceeded { cap: i64, degree: i64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("syntax error at line {line}, column {column}: expected {expected}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
    },

    #[error("semantic error at line {line}: {message}")]
    Semantic { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::Semantic { .. } | Error::Io(_) => 1,
            Error::Homogeneity(_) | Error::Dimension(_) | Error::Precondition(_) => 1,
            Error::CapExceeded { .. } => 2,
            Error::Internal(_) => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
