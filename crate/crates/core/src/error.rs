//! Error type shared by every module.

use thiserror::Error;

/// Failure raised by library operations.
///
/// `Usage` and `Parse` are caller mistakes; `Domain` and `Consistency` are
/// properties of the mathematical input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{0}")]
    Domain(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// True for errors caused by malformed requests rather than by the data.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Usage(_) | Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
