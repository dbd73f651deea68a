//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Error`]. The CLI maps
//! variants onto its exit codes: input problems (parsing, malformed tables,
//! violated preconditions) exit 2, failed mathematical checks exit 1, and
//! resource-cap rejections exit 3.

use thiserror::Error;

use crate::algebra::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range (bound {bound}) in {context}")]
    IndexOutOfRange {
        index: usize,
        bound: usize,
        context: &'static str,
    },

    #[error("resource cap exceeded: {what} requires {required} entries, cap is {cap}")]
    ResourceCap {
        what: String,
        required: u128,
        cap: u128,
    },

    #[error("U(A)-degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("expected a homogeneous element of total degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("quiver has a directed cycle; its path algebra is infinite-dimensional")]
    CyclicQuiver,

    #[error("algebra dimension must be at least 1")]
    ZeroDimensionalAlgebra,

    #[error("malformed rational literal `{0}`")]
    InvalidRational(String),

    #[error("structurally invalid input: {0}")]
    Structural(String),

    #[error("axiom validation failed:\n{0}")]
    AxiomViolations(ValidationReport),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis verification failed: {0}")]
    HypothesisFailed(String),

    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code the CLI should use for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceCap { .. } | Error::DegreeCap { .. } => 3,
            Error::AxiomViolations(_) | Error::HypothesisFailed(_) => 1,
            _ => 2,
        }
    }
}
