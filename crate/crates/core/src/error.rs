//! Error type shared by every layer of the crate.

use thiserror::Error;

/// Errors raised by the library.
///
/// `Domain` is a caller mistake (bad prime, unsupported degree, mismatched
/// graphs). `TheoremViolation` means an identity that is a theorem failed to
/// hold, which can only be a bug in this crate or corrupted input data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("theorem violated ({theorem}): {detail}")]
    TheoremViolation {
        theorem: &'static str,
        detail: String,
    },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn violation(theorem: &'static str, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            theorem,
            detail: detail.into(),
        }
    }

    /// True for errors the caller caused (as opposed to internal failures).
    pub fn is_user_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Parse(_) | Error::NotFound(_)
        )
    }

    pub fn is_theorem_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
