use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },

    #[error("precondition failed in {op}: {detail}")]
    Precondition { op: &'static str, detail: String },

    /// A construction that cannot fail in theory produced an output that
    /// failed its own postcondition check.
    #[error("internal invariant violated in {op}: {detail}")]
    Internal { op: &'static str, detail: String },

    #[error("kernel dimension {dim} exceeds the configured limit {limit}")]
    KernelTooLarge { dim: usize, limit: usize },

    #[error("{what} = {size} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// The exact value is carried as text so integers and rationals share
    /// one variant.
    #[error("promise violated: value {value} is below the promised magnitude")]
    PromiseViolated { value: String },

    #[error("circuit contains complex gate #{gate} (even number of Y factors); run embed-real first")]
    ComplexGate { gate: usize },

    #[error("gate #{gate} is real but not convention-conforming; the canonical form cannot absorb its sign")]
    NonConformingGate { gate: usize },

    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
}

impl Error {
    pub(crate) fn dim(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Dimension {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn pre(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn internal(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Internal {
            op,
            detail: detail.into(),
        }
    }
}
