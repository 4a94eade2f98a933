use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("operands have different numbers of variables ({0} vs {1})")]
    VariableMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division")]
    InexactDivision,
    #[error("exponent not divisible by p in p-th root")]
    NotPthPower,
    #[error("input is zero")]
    ZeroInput,
    #[error("input is not homogeneous")]
    Inhomogeneous,
    #[error("grade mismatch: {0}")]
    Grade(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
    /// An identity that must hold by construction failed; a bug, not bad input.
    #[error("internal invariant broken: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
