use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by constructors and operations in this crate.
///
/// Verification failures of candidate objects are not errors; they are
/// reported as [`Verdict::Reject`](crate::Verdict::Reject).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid part: {0}")]
    InvalidPart(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot compose coverings #{first} and #{second}: {reason}")]
    Composition {
        first: usize,
        second: usize,
        reason: String,
    },

    #[error("unsupported parameters (p, q, r) = ({p}, {q}, {r}): r must be at least {threshold}")]
    Unsupported { p: i64, q: i64, r: i64, threshold: i64 },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
