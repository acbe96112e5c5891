use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("wrong number of variables: expected {expected}, got {got}")]
    VariableCount { expected: usize, got: usize },
    #[error("work limit exceeded: {needed} candidates requested, limit {limit}")]
    WorkLimit { needed: u128, limit: u128 },
    #[error("input is not squarefree")]
    NotSquarefree,
    #[error("characteristic {p} is too small for the criterion (needs p > {bound})")]
    CharacteristicTooSmall { p: u64, bound: u64 },
    #[error("polynomial is constant")]
    Constant,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search exhausted: {0}")]
    Exhausted(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
