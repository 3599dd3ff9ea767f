use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::Scalar;
use crate::error::{Error, Result};

/// A base point `x₀ ∈ ℚ^m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalPoint(Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint(coords)
    }

    pub fn origin(m: usize) -> Self {
        RationalPoint(vec![BigRational::default(); m])
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        RationalPoint(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.0.iter().cloned().map(Scalar::from_rational).collect()
    }

    /// Squared euclidean distance.
    pub fn dist_sqr(&self, other: &RationalPoint) -> BigRational {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .fold(BigRational::default(), |acc, x| acc + x)
    }

    /// Coordinates rendered as JSON-friendly `p/q` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(Scalar::format_rational).collect()
    }
}

/// Comma-separated rationals, e.g. `0,1/2,-3`.
impl FromStr for RationalPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty point".into()));
        }
        s.split(',').map(Scalar::parse_rational).collect::<Result<Vec<_>>>().map(RationalPoint)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_strings().join(","))
    }
}
