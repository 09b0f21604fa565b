use thiserror::Error;

/// Errors raised by the algebraic routines and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar {0:?}")]
    Parse(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed input: {0}")]
    Input(String),
    #[error("polynomials live in different rings ({0} vs {1} variables)")]
    VarCountMismatch(usize, usize),
    #[error("operands are over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree {degree} in x{var} exceeds one")]
    DegreeTooHigh { var: usize, degree: u32 },
    #[error("indices must be distinct (got x{0} twice)")]
    SameIndex(usize),
    #[error("polynomial is not multiaffine")]
    NotMultiaffine,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("{op}: size {n} exceeds the limit of {limit}")]
    TooLarge { op: &'static str, n: usize, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    /// The exhaustive fiber search met a free parameter it cannot resolve.
    #[error("fiber not decided: {0}")]
    Unresolved(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
}
