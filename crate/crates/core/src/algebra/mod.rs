//! Exact scalars, multiindices and polynomials.

mod hermite;
mod multi_index;
mod point;
mod poly;
mod scalar;
pub mod univariate;

pub use hermite::hermite_interpolate;
pub(crate) use hermite::jet_polynomial;
pub use multi_index::MultiIndex;
pub use point::RationalPoint;
pub use poly::MultiPoly;
pub use scalar::Scalar;
