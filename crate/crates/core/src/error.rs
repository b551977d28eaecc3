use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("ring signature mismatch")]
    SignatureMismatch,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("computation cancelled")]
    Cancelled,
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("the unit ideal is not allowed here")]
    UnitIdeal,
    #[error("ideal quotient by the zero polynomial")]
    ZeroDivisor,
    #[error("ring is not equidimensional: {0}")]
    NotEquidimensional(String),
    #[error("minimal primes unsupported: {0}")]
    UnsupportedIdeal(String),
    #[error("candidate prime verification failed: {0}")]
    CandidateVerification(String),
    #[error("module is not torsionless: {0}")]
    NotTorsionless(String),
    #[error("missing division records")]
    MissingRecords,
    #[error("ill-formed map: {0}")]
    BadMap(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for resource exhaustion (caps, cancellation) as opposed to bad input or bugs.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded(_) | Error::Cancelled)
    }
}
