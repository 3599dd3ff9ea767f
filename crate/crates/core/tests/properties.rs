//! Algebraic invariants under proptest.

mod support;

use jetforge::checks::{random_point, random_poly, random_symbol, rng};
use jetforge::dsl::{format_operator, format_polynomial};
use jetforge::{
    borel_realize, desingularization_order, lift_jet, parse_operator, parse_polynomial, vanishing_order,
    Desingularization, LinearSymbol, MultiIndex, MultiPoly, ParsedOperator, RationalPoint, Scalar, VanishingOrder,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn poly(m: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, m), -6i64..=6, -3i64..=3, 1i64..=4), 0..6).prop_map(
        move |terms| {
            let terms = terms
                .into_iter()
                .filter(|(e, ..)| e.iter().sum::<u32>() <= max_deg)
                .map(|(e, re, im, den)| (MultiIndex::new(e), Scalar::new(ratio(re, den), ratio(im, 1))));
            MultiPoly::from_terms(m, terms).unwrap()
        },
    )
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn point(m: usize) -> impl Strategy<Value = RationalPoint> {
    prop::collection::vec((-5i64..=5, 1i64..=3), m)
        .prop_map(|c| RationalPoint::new(c.into_iter().map(|(n, d)| ratio(n, d)).collect()))
}

/// Dimension, polynomial pair and point over one shared dimension.
fn setup() -> impl Strategy<Value = (usize, MultiPoly, MultiPoly, RationalPoint)> {
    (1usize..=3).prop_flat_map(|m| (Just(m), poly(m, 4), poly(m, 3), point(m)))
}

/// Symbols come from the seeded generators; proptest drives the seed.
fn symbol_case(seed: u64) -> (LinearSymbol, MultiPoly, RationalPoint) {
    let mut r = rng(seed);
    let m = 1 + (seed % 3) as usize;
    let order = ((seed / 3) % 3) as usize;
    (random_symbol(&mut r, m, order, 2), random_poly(&mut r, m, 4, 5, true), random_point(&mut r, m))
}

fn level(order: VanishingOrder) -> Option<usize> {
    match order {
        VanishingOrder::NotVanishing => Some(0),
        VanishingOrder::Exactly(c) => Some(c + 1),
        VanishingOrder::IdenticallyZero => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partials_commute((m, p, _q, _x) in setup(), i in 0usize..3, j in 0usize..3) {
        let (i, j) = (i % m, j % m);
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
    }

    #[test]
    fn leibniz_rule((m, p, q, _x) in setup(), i in 0usize..3) {
        let i = i % m;
        let lhs = (&p * &q).partial(i);
        let rhs = &(&p.partial(i) * &q) + &(&p * &q.partial(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn taylor_reconstruction((_m, p, _q, x) in setup()) {
        let k = p.degree().unwrap_or(0);
        prop_assert_eq!(borel_realize(&p.taylor_jet(&x, k).unwrap(), &x).unwrap(), p);
    }

    #[test]
    fn taylor_matches_reference((_m, p, _q, x) in setup(), k in 0usize..4) {
        prop_assert_eq!(p.taylor_jet(&x, k).unwrap().into_entries(), support::jet(&p, &x, k));
    }

    #[test]
    fn projections_compose((_m, p, _q, x) in setup(), k in 0usize..5, a in 0usize..5, b in 0usize..5) {
        let (hi, lo) = (a.max(b).min(k), a.min(b).min(k));
        let jet = p.taylor_jet(&x, k).unwrap();
        prop_assert_eq!(jet.project(hi).unwrap().project(lo).unwrap(), jet.project(lo).unwrap());
        prop_assert_eq!(jet.project(lo).unwrap(), p.taylor_jet(&x, lo).unwrap());
        prop_assert!(jet.project(k + 1).is_err());
    }

    #[test]
    fn polynomial_round_trip((m, p, _q, _x) in setup()) {
        prop_assert_eq!(parse_polynomial(&format_polynomial(&p), m).unwrap(), p);
    }

    #[test]
    fn operator_round_trip(seed in any::<u64>()) {
        let (sym, _, _) = symbol_case(seed);
        prop_assume!(!sym.is_zero());
        let text = format_operator(&sym);
        let back = parse_operator(&text, Some(sym.base_dim()), Some(sym.order())).unwrap();
        prop_assert_eq!(back, ParsedOperator::Linear(sym));
    }

    #[test]
    fn total_derivatives_commute(seed in any::<u64>()) {
        let (sym, _, _) = symbol_case(seed);
        let m = sym.base_dim();
        for i in 1..=m {
            for j in 1..=m {
                let ij = sym.total_derivative(i).unwrap().total_derivative(j).unwrap();
                let ji = sym.total_derivative(j).unwrap().total_derivative(i).unwrap();
                prop_assert_eq!(ij, ji);
            }
        }
    }

    #[test]
    fn prolongation_identity(seed in any::<u64>(), s in 0usize..3) {
        let (sym, f, x0) = symbol_case(seed);
        let fiber = sym.prolong(s).fiber_matrix(&x0).unwrap();
        prop_assert_eq!(fiber.to_rows(), support::leibniz_matrix(&sym, &x0, s));
        let lhs = fiber.mul_vec(f.taylor_jet(&x0, sym.order() + s).unwrap().entries()).unwrap();
        let rhs = sym.apply_operator(&f).unwrap().taylor_jet(&x0, s).unwrap();
        prop_assert_eq!(lhs.as_slice(), rhs.entries());
    }

    #[test]
    fn operator_is_linear(seed in any::<u64>(), a in -4i64..=4, b in -4i64..=4) {
        let (sym, f, _) = symbol_case(seed);
        let g = random_poly(&mut rng(seed ^ 0x5eed), sym.base_dim(), 3, 4, true);
        let (a, b) = (Scalar::from_integer(a), Scalar::from_integer(b));
        let lhs = sym.apply_operator(&(&f.scale(&a) + &g.scale(&b))).unwrap();
        let rhs = &sym.apply_operator(&f).unwrap().scale(&a) + &sym.apply_operator(&g).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    /// Changing `f` by something with zero `(r+s)`-jet at `x0` leaves the
    /// `s`-jet of `P(f)` there unchanged.
    #[test]
    fn operator_is_local(seed in any::<u64>(), s in 0usize..3) {
        let (sym, f, x0) = symbol_case(seed);
        let m = sym.base_dim();
        let shift: Vec<Scalar> = x0.to_scalars().iter().map(|v| -v).collect();
        let bump = MultiPoly::var(m, 0).pow((sym.order() + s + 1) as u32).translate(&shift).unwrap();
        let h = random_poly(&mut rng(seed ^ 0x10ca1), m, 2, 3, true);
        let perturbed = &f + &(&bump * &h);
        prop_assert_eq!(
            sym.apply_operator(&f).unwrap().taylor_jet(&x0, s).unwrap(),
            sym.apply_operator(&perturbed).unwrap().taylor_jet(&x0, s).unwrap()
        );
    }

    /// Differentiating the coefficients lowers the vanishing level by at most one.
    #[test]
    fn vanishing_order_decreases_by_at_most_one(seed in any::<u64>(), i in 0usize..3) {
        let (sym, _, x0) = symbol_case(seed);
        let i = i % sym.base_dim();
        let before = level(vanishing_order(&sym, &x0).unwrap().order);
        let after = level(vanishing_order(&sym.differentiate_coefficients(i), &x0).unwrap().order);
        if let (Some(b), Some(a)) = (before, after) {
            prop_assert!(a + 1 >= b);
        }
        if before.is_none() {
            prop_assert!(after.is_none());
        }
    }

    /// Once a prolongation level is nonzero, every higher level is too.
    #[test]
    fn desingularization_is_monotone(seed in any::<u64>()) {
        let (sym, _, x0) = symbol_case(seed);
        let nonzero = |s: usize| !sym.prolong(s).fiber_matrix(&x0).unwrap().is_zero();
        match desingularization_order(&sym, &x0, 3).unwrap() {
            Desingularization::Level(s) => {
                prop_assert!((0..s).all(|t| !nonzero(t)));
                prop_assert!((s..=3).all(nonzero));
                prop_assert_eq!(level(vanishing_order(&sym, &x0).unwrap().order), Some(s));
            }
            Desingularization::Exceeded => prop_assert!((0..=3).all(|t| !nonzero(t))),
        }
    }

    #[test]
    fn lifting_is_deterministic(seed in any::<u64>(), s in 0usize..3) {
        let (sym, f, x0) = symbol_case(seed);
        let target = f.taylor_jet(&x0, s).unwrap();
        prop_assert_eq!(lift_jet(&sym, &x0, &target).unwrap(), lift_jet(&sym, &x0, &target).unwrap());
    }
}
