use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by an element that is zero at its precision")]
    ZeroDivision,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision error: {0}")]
    Precision(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("induced cell map is not a permutation: {0}")]
    NotAPermutation(String),
    #[error("out of budget: {0}")]
    OutOfBudget(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
