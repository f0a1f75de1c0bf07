use thiserror::Error;

/// Errors produced by synthesis, analysis and training routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("insufficient grid resolution: {0}")]
    Resolution(String),

    #[error("steer angle {0} deg is outside the trained domain [40, 140]")]
    OutOfDomain(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("data integrity check failed: {0}")]
    DataIntegrity(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    /// True for errors caused by bad user input (usage/domain) as opposed
    /// to runtime or numeric failures.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Dimension { .. }
                | Error::Argument(_)
                | Error::Unsupported(_)
                | Error::OutOfDomain(_)
                | Error::Config(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
