use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point {0} is outside the implemented domain")]
    Domain(String),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("series did not reach tolerance within {0} terms")]
    MaxTermsExceeded(usize),
    #[error("no zeta value for word {0}")]
    MissingZeta(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("pole at z = {0}")]
    Pole(String),
}

pub type Result<T> = std::result::Result<T, Error>;
