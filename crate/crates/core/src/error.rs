use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system type `{0}`")]
    InvalidType(String),
    #[error("degree {0} is outside the supported range")]
    DegreeOutOfRange(usize),
    #[error("p = {p} is not admissible for {system}: {reason}")]
    PrimeGate { system: String, p: u64, reason: String },
    #[error("outside the supported envelope: {0}")]
    ScopeExceeded(String),
    #[error("expected an element of length {expected}, got length {got}")]
    LengthError { expected: usize, got: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("filtration violation: {0}")]
    FiltrationViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
