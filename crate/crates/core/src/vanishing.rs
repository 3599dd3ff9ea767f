//! Vanishing orders of symbol coefficients and the prolongation level at
//! which a singular symbol becomes a nonzero fiber map.

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::RationalPoint;
use crate::error::{check_dim, Result};
use crate::symbol::LinearSymbol;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VanishingOrder {
    /// Some coefficient is nonzero at the point.
    NotVanishing,
    /// All derivatives of order `≤ c` of every coefficient vanish, and some
    /// derivative of order `c + 1` does not.
    Exactly(usize),
    /// Every coefficient is the zero polynomial.
    IdenticallyZero,
}

impl Serialize for VanishingOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            VanishingOrder::NotVanishing => serializer.serialize_str("not_vanishing"),
            VanishingOrder::IdenticallyZero => serializer.serialize_str("identically_zero"),
            VanishingOrder::Exactly(c) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("exactly", c)?;
                map.end()
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VanishingReport {
    #[serde(serialize_with = "serialize_point")]
    pub point: RationalPoint,
    pub order: VanishingOrder,
}

fn serialize_point<S: Serializer>(p: &RationalPoint, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    p.to_strings().serialize(serializer)
}

/// Classifies how the coefficients `f_α` vanish at `x0`.
///
/// For polynomial coefficients the search ends at the largest coefficient
/// degree: a polynomial whose derivatives of every order up to its degree
/// vanish at a point is zero.
pub fn vanishing_order(sym: &LinearSymbol, x0: &RationalPoint) -> Result<VanishingReport> {
    check_dim(sym.base_dim(), x0.dim())?;
    let report = |order| VanishingReport { point: x0.clone(), order };
    if sym.is_zero() {
        return Ok(report(VanishingOrder::IdenticallyZero));
    }
    let max_deg = sym.terms().values().filter_map(|c| c.degree()).max().unwrap_or(0);
    // Lowest weight of a nonvanishing derivative, over all coefficients.
    let mut lowest: Option<usize> = None;
    for coeff in sym.terms().values() {
        let jet = coeff.taylor_jet(x0, max_deg)?;
        let first = jet.iter().find(|(_, v)| !v.is_zero()).map(|(alpha, _)| alpha.weight());
        if let Some(w) = first {
            lowest = Some(lowest.map_or(w, |l| l.min(w)));
        }
    }
    let w = lowest.expect("a nonzero polynomial has a nonvanishing derivative of order at most its degree");
    Ok(report(if w == 0 { VanishingOrder::NotVanishing } else { VanishingOrder::Exactly(w - 1) }))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Desingularization {
    /// Smallest prolongation level with a nonzero fiber map.
    Level(usize),
    Exceeded,
}

impl Serialize for Desingularization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Desingularization::Level(s) => serializer.serialize_u64(*s as u64),
            Desingularization::Exceeded => serializer.serialize_str("exceeded"),
        }
    }
}

/// Smallest `s ≤ cap` with a nonzero level-`s` fiber matrix at `x0`.
///
/// The level-`s` matrix extends the level-`(s−1)` one by the rows of weight
/// `s`, so only the new components need checking at each step.
pub fn desingularization_order(sym: &LinearSymbol, x0: &RationalPoint, cap: usize) -> Result<Desingularization> {
    check_dim(sym.base_dim(), x0.dim())?;
    let values = x0.to_scalars();
    let nonzero = |s: &LinearSymbol| s.terms().values().any(|c| !c.evaluate_scalars(&values).is_zero());
    let mut pro = sym.prolong(0);
    for s in 0..=cap {
        pro.extend_to(s);
        if pro.components_of_weight(s).any(|(_, c)| nonzero(c)) {
            return Ok(Desingularization::Level(s));
        }
    }
    Ok(Desingularization::Exceeded)
}

/// Pointwise [`vanishing_order`] over a grid.
pub fn finsupp_scan(sym: &LinearSymbol, grid: &[RationalPoint]) -> Result<Vec<VanishingReport>> {
    grid.iter().map(|x| vanishing_order(sym, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_operator, ParsedOperator};

    fn op(text: &str) -> LinearSymbol {
        match parse_operator(text, None, None).unwrap() {
            ParsedOperator::Linear(s) => s,
            ParsedOperator::General(_) => panic!("expected linear operator"),
        }
    }

    fn pt(c: &[i64]) -> RationalPoint {
        RationalPoint::from_integers(c)
    }

    #[test]
    fn vanishing_examples() {
        assert_eq!(vanishing_order(&op("x1^2*d[1]"), &pt(&[0])).unwrap().order, VanishingOrder::Exactly(1));
        assert_eq!(vanishing_order(&op("d[1]"), &pt(&[5])).unwrap().order, VanishingOrder::NotVanishing);
        assert_eq!(
            vanishing_order(&LinearSymbol::zero(2, 1), &pt(&[0, 0])).unwrap().order,
            VanishingOrder::IdenticallyZero
        );
        assert!(vanishing_order(&op("d[1]"), &pt(&[0, 0])).is_err());
    }

    #[test]
    fn desingularization_examples() {
        assert_eq!(desingularization_order(&op("x1^2*d[1]"), &pt(&[0]), 5).unwrap(), Desingularization::Level(2));
        assert_eq!(desingularization_order(&op("d[1]"), &pt(&[0]), 5).unwrap(), Desingularization::Level(0));
        assert_eq!(
            desingularization_order(&op("x1*d[0,1] + x2*d[1,0]"), &pt(&[0, 0]), 5).unwrap(),
            Desingularization::Level(1)
        );
        assert_eq!(desingularization_order(&op("x1^4*d[1]"), &pt(&[0]), 2).unwrap(), Desingularization::Exceeded);
        assert_eq!(
            desingularization_order(&LinearSymbol::zero(1, 1), &pt(&[0]), 3).unwrap(),
            Desingularization::Exceeded
        );
    }

    #[test]
    fn finsupp_examples() {
        let grid = [pt(&[-1]), pt(&[0]), pt(&[1])];
        let orders: Vec<_> = finsupp_scan(&op("x1^2*d[1]"), &grid).unwrap().into_iter().map(|r| r.order).collect();
        assert_eq!(
            orders,
            vec![VanishingOrder::NotVanishing, VanishingOrder::Exactly(1), VanishingOrder::NotVanishing]
        );
        assert!(finsupp_scan(&op("d[1]"), &grid).unwrap().iter().all(|r| r.order == VanishingOrder::NotVanishing));
        assert!(finsupp_scan(&op("d[1]"), &[]).unwrap().is_empty());
    }

    #[test]
    fn report_json() {
        let r = vanishing_order(&op("x1^2*d[1]"), &pt(&[0])).unwrap();
        assert_eq!(serde_json::to_value(&r).unwrap(), serde_json::json!({"point": ["0"], "order": {"exactly": 1}}));
        let r = vanishing_order(&op("d[1]"), &pt(&[0])).unwrap();
        assert_eq!(serde_json::to_value(&r).unwrap()["order"], "not_vanishing");
    }
}
