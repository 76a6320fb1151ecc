use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cap too small: need {needed}, have {cap}")]
    CapTooSmall { needed: usize, cap: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("invalid simplicial data: {0}")]
    Invalid(String),

    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),

    #[error("empty subcomplex: quotient needs a basepoint")]
    EmptySubcomplex,

    #[error("not a map: {0}")]
    NotAMap(String),

    #[error("input is not certified Kan: {0}")]
    NotKan(String),

    #[error("not monotone: {0:?}")]
    NotMonotone(Vec<usize>),

    #[error("monotonicity violated: {0}")]
    Monotonicity(String),

    #[error("not fibered: {0}")]
    NotFibered(String),

    #[error("resource guard: {0}")]
    ResourceLimit(String),

    #[error("parse error at {pointer}: {message}")]
    Parse { pointer: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { pointer: pointer.into(), message: message.into() }
    }
}
