//! Multi-point Hermite interpolation of prescribed jets.

use num_rational::BigRational;

use super::{MultiPoly, RationalPoint, Scalar};
use crate::error::{check_dim, Error, Result};
use crate::jet::JetVector;

/// Builds a polynomial whose order-`k` jet at every `points[j]` equals
/// `jets[j]`.
///
/// Each point gets a bump `B_j = Π_{l≠j} (‖x−x_l‖² / ‖x_j−x_l‖²)^{k+1}`,
/// which vanishes to order `2k+1` at the other points and equals 1 at
/// `x_j`; it is multiplied by the degree-`≤ k` polynomial whose jet at `x_j`
/// is the target jet times the truncated local inverse of `B_j`.
pub fn hermite_interpolate(points: &[RationalPoint], jets: &[JetVector], k: usize) -> Result<MultiPoly> {
    if points.len() != jets.len() {
        return Err(Error::InvalidInput(format!("{} points but {} jets", points.len(), jets.len())));
    }
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("no interpolation points".into()));
    };
    let m = first.dim();
    for (pt, jet) in points.iter().zip(jets) {
        check_dim(m, pt.dim())?;
        check_dim(m, jet.spec().base_dim)?;
        if jet.spec().order != k {
            return Err(Error::InvalidInput(format!(
                "jet of order {} where order {k} was requested",
                jet.spec().order
            )));
        }
    }
    for (a, pa) in points.iter().enumerate() {
        if let Some(b) = points[a + 1..].iter().position(|pb| pb == pa) {
            return Err(Error::DuplicatePoints { first: a, second: a + 1 + b });
        }
    }

    let dist_polys: Vec<MultiPoly> = points.iter().map(squared_distance_poly).collect();
    let exponent = (k + 1) as u32;
    let mut result = MultiPoly::zero(m);
    for (j, (xj, jet)) in points.iter().zip(jets).enumerate() {
        let mut bump = MultiPoly::one(m);
        for (l, xl) in points.iter().enumerate() {
            if l == j {
                continue;
            }
            let norm = Scalar::from_rational(xj.dist_sqr(xl)).checked_inv()?;
            bump = &bump * &dist_polys[l].scale(&norm).pow(exponent);
        }
        let correction = bump.local_inverse_series(xj, k)?;
        let neg: Vec<Scalar> = xj.to_scalars().iter().map(|s| -s).collect();
        let factor = jet_local_polynomial(jet)?.mul_truncated(&correction, k).translate(&neg)?;
        result = &result + &(&factor * &bump);
    }
    Ok(result)
}

/// `‖x − p‖²` as a polynomial in `x`.
fn squared_distance_poly(p: &RationalPoint) -> MultiPoly {
    let m = p.dim();
    let mut acc = MultiPoly::zero(m);
    for (i, c) in p.coords().iter().enumerate() {
        let d = &MultiPoly::var(m, i) - &MultiPoly::constant(m, Scalar::from_rational(c.clone()));
        acc = &acc + &(&d * &d);
    }
    acc
}

/// `Σ_α jet[α]/α! t^α` in local coordinates `t = x − x₀`.
pub(crate) fn jet_local_polynomial(jet: &JetVector) -> Result<MultiPoly> {
    let mut local = MultiPoly::zero(jet.spec().base_dim);
    for (alpha, value) in jet.iter() {
        let fact = Scalar::from_rational(BigRational::from_integer(alpha.factorial()));
        local.add_term(alpha.clone(), &value.checked_div(&fact)?);
    }
    Ok(local)
}

/// Taylor polynomial `Σ_α jet[α]/α! (x − x₀)^α`.
pub(crate) fn jet_polynomial(jet: &JetVector, x0: &RationalPoint) -> Result<MultiPoly> {
    check_dim(jet.spec().base_dim, x0.dim())?;
    let local = jet_local_polynomial(jet)?;
    if x0.coords().iter().all(|c| c == &BigRational::default()) {
        return Ok(local);
    }
    let neg: Vec<Scalar> = x0.to_scalars().iter().map(|s| -s).collect();
    local.translate(&neg)
}
