use thiserror::Error;

use crate::dsl::ParseError;

/// Errors raised by the engine for malformed or inconsistent inputs.
///
/// Mathematical outcomes such as an unsolvable jet system are not errors;
/// they are reported through the result types of the solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial is not a unit at the point: its value there is zero")]
    NotAUnit,

    #[error("duplicate points at positions {first} and {second}")]
    DuplicatePoints { first: usize, second: usize },

    #[error("requested order {requested} exceeds available order {available}")]
    OrderTooHigh { requested: usize, available: usize },

    #[error("direction {direction} out of range 1..={dim}")]
    BadDirection { direction: usize, dim: usize },

    #[error("declared order {declared} is below the maximal term weight {weight}")]
    OrderBelowWeight { declared: usize, weight: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
