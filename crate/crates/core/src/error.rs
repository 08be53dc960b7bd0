use alloc::string::String;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed scalar: {0}")]
    MalformedScalar(String),
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("rank of parameter-dependent vectors is not supported")]
    UnsupportedSymbolicRank,
    #[error("space mismatch: expected dimension {expected}, found {found}")]
    SpaceMismatch { expected: usize, found: usize },
    #[error("grading error: {0}")]
    Grading(String),
    #[error("inadmissible algebra: {0}")]
    Inadmissible(String),
    #[error("map is not even: entry ({row}, {col}) connects opposite parities")]
    NotEven { row: usize, col: usize },
    #[error("generator `{kind}` does not apply to {algebra}: {reason}")]
    WrongAlgebra {
        kind: String,
        algebra: String,
        reason: String,
    },
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("maps act on different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("invalid parameter assignment: side relation {0} does not vanish")]
    InvalidAssignment(String),
    #[error("map does not preserve the ideal; it cannot descend to the quotient")]
    DescentFailed,
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("not closed: {0}")]
    NotClosed(String),
    #[error("algebra carries no Z-grading")]
    NoGrading,
    #[error("malformed structure constants: {0}")]
    Format(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
