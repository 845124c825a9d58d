use thiserror::Error;

/// Errors raised by field, polynomial and counting operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of size {size} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { size: String, ceiling: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    LevelMismatch,
    #[error("polynomials have different coefficient domains")]
    DomainMismatch,
    #[error("polynomial must be non-constant")]
    ConstantPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is reducible")]
    Reducible,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires even degree, got {0}")]
    OddDegree(usize),
    #[error("operation requires odd degree, got {0}")]
    EvenDegree(usize),
    #[error("work estimate {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
