use thiserror::Error;

/// Errors raised while building or checking groups, tables and models.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid additive character parameter: {0}")]
    InvalidBeta(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("size cap exceeded: {what} has {size} elements, cap is {cap}")]
    CapExceeded { what: String, size: u64, cap: u64 },
    #[error("element is not in {0}")]
    NotInGroup(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("word is not reduced: {0:?}")]
    NotReduced(Vec<usize>),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("representation {0} is not generic")]
    NotGeneric(usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
