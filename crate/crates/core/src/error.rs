use std::fmt;

/// Errors shared across the workbench.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two structures passed to a comparison do not share an arity sequence.
    SignatureMismatch { expected: Vec<usize>, found: Vec<usize> },
    /// A construction or search would exceed a configured size limit.
    Capacity(String),
    /// A stated precondition does not hold for the given inputs.
    Precondition(String),
    /// An operation is not supported for the given inputs (e.g. lazy relation
    /// where a materialized one is required).
    Unsupported(String),
    /// Exact rational arithmetic overflowed 64 bits.
    Overflow(String),
    /// A search exceeded its node budget.
    NodeBudget { limit: u64 },
    /// A construction that a theorem guarantees to succeed failed its check.
    /// Carries enough detail to reproduce; aborts audit runs.
    TheoremViolation(String),
    /// A textual input could not be parsed.
    Parse { file: String, line: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SignatureMismatch { expected, found } => {
                write!(f, "signature mismatch: expected arities {expected:?}, found {found:?}")
            }
            Error::Capacity(msg) => write!(f, "capacity exceeded: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Overflow(msg) => write!(f, "rational overflow: {msg}"),
            Error::NodeBudget { limit } => write!(f, "search exceeded node budget of {limit}"),
            Error::TheoremViolation(msg) => write!(f, "THEOREM VIOLATION: {msg}"),
            Error::Parse { file, line, message } => {
                write!(f, "{file}:{line}: {message}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
