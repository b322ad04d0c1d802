use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("singular evaluation point")]
    Singular,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch")]
    Dimension,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("variable {0} has no assigned value")]
    Unassigned(String),
    #[error("expansion contains negative powers")]
    NotAPowerSeries,
    #[error("parse error: {0}")]
    Parse(String),
}
