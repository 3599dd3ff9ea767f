//! Exact jet calculus for scalar linear partial differential operators.
//!
//! Operators are stored as total symbols `λ = Σ f_α y_α` with polynomial
//! coefficients over the Gaussian rationals. The crate computes total
//! derivatives and prolongations, vanishing orders of the coefficients,
//! ranks of the prolonged fiber maps, and polynomial solutions of
//! `P(f) = g` to a chosen jet order at one or several rational points.
//! Everything is exact; no floating point is involved.

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod jet;
pub mod linalg;
pub mod report;
pub mod solver;
pub mod symbol;
pub mod vanishing;

pub use algebra::{hermite_interpolate, MultiIndex, MultiPoly, RationalPoint, Scalar};
pub use dsl::{parse_operator, parse_polynomial, ParseError, ParsedOperator};
pub use error::{Error, Result};
pub use jet::{enumerate_multiindices, jet_dimension, JetSpec, JetVector};
pub use solver::{
    borel_realize, check_surjectivity, lift_jet, membership_i, pcp_check, solve_at_points, solve_to_order, LiftResult,
    LiftStatus, PcpWitness, RankReport, SolveOutcome,
};
pub use symbol::{evaluate_general, GeneralSymbol, LinearSymbol, ProlongedSymbol};
pub use vanishing::{
    desingularization_order, finsupp_scan, vanishing_order, Desingularization, VanishingOrder, VanishingReport,
};
