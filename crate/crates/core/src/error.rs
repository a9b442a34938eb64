use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands live on registers of different sizes, or an index falls outside the register.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A dense or sparse construction would exceed the configured size limit.
    #[error("resource limit exceeded: {what} needs {requested} qubits, limit is {limit}")]
    Resource {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("numerical failure after {iterations} iterations: {message}")]
    Numeric { message: String, iterations: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
