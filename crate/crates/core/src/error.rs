use thiserror::Error;

use crate::field::Place;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0}: zero is not a valid input")]
    Zero(&'static str),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{op} requires a p-adic place, got {place}")]
    NotPadic { op: &'static str, place: Place },

    #[error("place mismatch: {0} vs {1}")]
    PlaceMismatch(Place, Place),

    #[error("cannot parse {field}: {msg}")]
    Parse { field: String, msg: String },

    #[error("term budget exceeded: {terms} terms requested, budget is {budget}")]
    Budget { terms: u128, budget: u64 },

    #[error("no stabilization: {0}")]
    NoStabilization(String),

    #[error("degenerate critical point: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is singular")]
    Singular,

    #[error("determinant square classes differ: {0} vs {1}")]
    DetClassMismatch(i64, i64),

    #[error("forms are only at Witt filtration level {0}, level >= 2 is required")]
    FiltrationLevel(u8),

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            msg: msg.into(),
        }
    }
}
