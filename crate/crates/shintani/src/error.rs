use crate::algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid corank: n = {n}, m = {m}")]
    InvalidCorank { n: usize, m: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("root not in system: {0}")]
    RootNotInSystem(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not in cone: {0}")]
    NotDominant(String),
    #[error("unsupported in this case: {0}")]
    Unsupported(String),
    #[error("no ^LT-stable Lagrangian")]
    NoLagrangian,
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
