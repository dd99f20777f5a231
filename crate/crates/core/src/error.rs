use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input violates a structural contract (e.g. a non-triangulated face).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A geometric construction failed one of its numeric safety checks.
    #[error("construction failed at iteration {iteration}: {reason}")]
    Construction { iteration: usize, reason: String },

    /// A coordinate embedding drifted beyond tolerance.
    #[error("embedding error: {0}")]
    Embedding(String),

    /// The request is valid but exceeds a configured search cap.
    #[error("refused: {0}")]
    Refused(String),

    /// Should not happen; indicates a bug or numeric breakdown.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by the caller's arguments rather than by a failed check.
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Refused(_))
    }
}
