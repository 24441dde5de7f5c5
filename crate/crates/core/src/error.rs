use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic 2 or 3 unsupported (got p = {0})")]
    Characteristic(u64),
    #[error("characteristic restriction: {0} is not prime")]
    NotPrime(u64),
    #[error("malformed scalar {0:?}")]
    MalformedScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("grading violation: {0}")]
    Grading(String),
    #[error("unit violation: {0}")]
    Unit(String),
    #[error("algebra {0:?} is not graded")]
    Ungraded(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("unsound linearization: {0}")]
    Linearization(String),
    #[error("identity {0:?} is not multihomogeneous")]
    NotHomogeneous(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("{0:?} is a macro, not an identity; it is expanded inside the identities that use it")]
    Macro(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("declared flag {flag:?} failed verification: {detail}")]
    FlagViolation { flag: String, detail: String },
    #[error("expectation failed for {example}: {detail}")]
    Expectation { example: String, detail: String },
    #[error("multidegree mismatch: {0}")]
    Multidegree(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
