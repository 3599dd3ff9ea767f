//! Jet-level solving of `P(f) = g`: lifting target jets through prolonged
//! symbols, realizing the lifted jets as polynomials, gluing several points
//! together, and pointwise witnesses for (possibly nonlinear) symbols.

use num_traits::{Signed, Zero};

use crate::algebra::univariate::{RationalRoots, UniPoly};
use crate::algebra::{hermite_interpolate, jet_polynomial, MultiIndex, MultiPoly, RationalPoint, Scalar};
use crate::error::{check_dim, Error, Result};
use crate::jet::{enumerate_multiindices, jet_dimension, JetSpec, JetVector};
use crate::linalg::LinearSolution;
use crate::symbol::{GeneralSymbol, LinearSymbol};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LiftStatus {
    /// A jet of order `r + s` mapped exactly onto the target.
    Solved(JetVector),
    Unsolvable,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftResult {
    pub status: LiftStatus,
    /// Pivot columns, as jet multiindices, in elimination order.
    pub pivot_trace: Vec<MultiIndex>,
}

impl LiftResult {
    pub fn jet(&self) -> Option<&JetVector> {
        match &self.status {
            LiftStatus::Solved(j) => Some(j),
            LiftStatus::Unsolvable => None,
        }
    }
}

/// Finds an `(r+s)`-jet `γ` at `x0` with `λ^{(s)}(γ) = target`, where `s`
/// is the order of `target`.
///
/// Elimination pivots on the first nonzero entry in graded-lex column
/// order and sets free coordinates to zero, so equal inputs give equal
/// outputs.
pub fn lift_jet(sym: &LinearSymbol, x0: &RationalPoint, target: &JetVector) -> Result<LiftResult> {
    let m = sym.base_dim();
    check_dim(m, x0.dim())?;
    check_dim(m, target.spec().base_dim)?;
    let s = target.order();
    let matrix = sym.prolong(s).fiber_matrix(x0)?;
    let columns = enumerate_multiindices(m, sym.order() + s);
    let trace = |pivots: &[usize]| pivots.iter().map(|&c| columns[c].clone()).collect();
    Ok(match matrix.solve(target.entries())? {
        LinearSolution::Solved { solution, pivots } => LiftResult {
            status: LiftStatus::Solved(JetVector::new(JetSpec::new(m, sym.order() + s), solution)?),
            pivot_trace: trace(&pivots),
        },
        LinearSolution::Inconsistent { pivots } => {
            LiftResult { status: LiftStatus::Unsolvable, pivot_trace: trace(&pivots) }
        }
    })
}

/// The Taylor polynomial `Σ_α jet[α]/α! (x − x0)^α`, whose jet at `x0`
/// is exactly `jet`.
pub fn borel_realize(jet: &JetVector, x0: &RationalPoint) -> Result<MultiPoly> {
    jet_polynomial(jet, x0)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointLift {
    pub point: RationalPoint,
    pub jet: JetVector,
    pub pivots: Vec<MultiIndex>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Solution {
    pub polynomial: MultiPoly,
    /// One entry per requested point, in input order.
    pub lifts: Vec<PointLift>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    Solved(Solution),
    /// The jet system has no solution at `point` (the first failing one).
    Unsolvable {
        point: RationalPoint,
        pivots: Vec<MultiIndex>,
    },
}

impl SolveOutcome {
    pub fn polynomial(&self) -> Option<&MultiPoly> {
        match self {
            SolveOutcome::Solved(s) => Some(&s.polynomial),
            SolveOutcome::Unsolvable { .. } => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, SolveOutcome::Solved(_))
    }
}

fn lift_point(
    sym: &LinearSymbol,
    g: &MultiPoly,
    x0: &RationalPoint,
    s: usize,
) -> Result<Result<PointLift, SolveOutcome>> {
    let target = g.taylor_jet(x0, s)?;
    let lift = lift_jet(sym, x0, &target)?;
    Ok(match lift.status {
        LiftStatus::Solved(jet) => Ok(PointLift { point: x0.clone(), jet, pivots: lift.pivot_trace }),
        LiftStatus::Unsolvable => Err(SolveOutcome::Unsolvable { point: x0.clone(), pivots: lift.pivot_trace }),
    })
}

/// A polynomial `f` with `j^s_{x0}(P(f) − g) = 0`.
pub fn solve_to_order(sym: &LinearSymbol, g: &MultiPoly, x0: &RationalPoint, s: usize) -> Result<SolveOutcome> {
    check_dim(sym.base_dim(), g.num_vars())?;
    check_dim(sym.base_dim(), x0.dim())?;
    match lift_point(sym, g, x0, s)? {
        Ok(lift) => {
            let polynomial = borel_realize(&lift.jet, x0)?;
            Ok(SolveOutcome::Solved(Solution { polynomial, lifts: vec![lift] }))
        }
        Err(unsolvable) => Ok(unsolvable),
    }
}

/// A polynomial `f` with `j^s_x(P(f) − g) = 0` at every listed point,
/// glued from per-point lifts by Hermite interpolation at order `r + s`.
pub fn solve_at_points(sym: &LinearSymbol, g: &MultiPoly, points: &[RationalPoint], s: usize) -> Result<SolveOutcome> {
    check_dim(sym.base_dim(), g.num_vars())?;
    if points.is_empty() {
        return Err(Error::InvalidInput("no points given".into()));
    }
    for p in points {
        check_dim(sym.base_dim(), p.dim())?;
    }
    for (a, pa) in points.iter().enumerate() {
        if let Some(b) = points[a + 1..].iter().position(|pb| pb == pa) {
            return Err(Error::DuplicatePoints { first: a, second: a + 1 + b });
        }
    }
    let mut lifts = Vec::with_capacity(points.len());
    for x in points {
        match lift_point(sym, g, x, s)? {
            Ok(lift) => lifts.push(lift),
            Err(unsolvable) => return Ok(unsolvable),
        }
    }
    let jets: Vec<JetVector> = lifts.iter().map(|l| l.jet.clone()).collect();
    let polynomial = if points.len() == 1 {
        borel_realize(&jets[0], &points[0])?
    } else {
        hermite_interpolate(points, &jets, sym.order() + s)?
    };
    Ok(SolveOutcome::Solved(Solution { polynomial, lifts }))
}

/// Checks `j^s_x(P(f) − g) = 0` at each point, exactly.
pub fn post_check(
    sym: &LinearSymbol,
    f: &MultiPoly,
    g: &MultiPoly,
    points: &[RationalPoint],
    s: usize,
) -> Result<bool> {
    let residual = &sym.apply_operator(f)? - g;
    for x in points {
        if !residual.taylor_jet(x, s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct RankReport {
    pub rank: usize,
    /// `C(m + k, m)`, the dimension of the target fiber.
    pub target_dim: usize,
    pub full: bool,
}

/// Exact rank of the level-`k` fiber map at `x0`; `full` when it is onto.
pub fn check_surjectivity(sym: &LinearSymbol, x0: &RationalPoint, k: usize) -> Result<RankReport> {
    check_dim(sym.base_dim(), x0.dim())?;
    let rank = sym.prolong(k).fiber_matrix(x0)?.rank();
    let target_dim = jet_dimension(sym.base_dim(), k);
    Ok(RankReport { rank, target_dim, full: rank == target_dim })
}

/// Whether the `k`-jet of `g` at `x0` lies in the image of the level-`k`
/// fiber map for every `k ≤ s`.
pub fn membership_i(sym: &LinearSymbol, g: &MultiPoly, x0: &RationalPoint, s: usize) -> Result<bool> {
    check_dim(sym.base_dim(), g.num_vars())?;
    check_dim(sym.base_dim(), x0.dim())?;
    for k in 0..=s {
        let target = g.taylor_jet(x0, k)?;
        if lift_jet(sym, x0, &target)?.status == LiftStatus::Unsolvable {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PcpWitness {
    /// An order-`r` jet `p` at `x0` with `λ(x0, p) = g(x0)`.
    Witness(JetVector),
    NoWitnessFound {
        strategy_note: String,
        /// The search was exhaustive and no witness exists.
        proven_empty: bool,
    },
}

impl PcpWitness {
    pub fn jet(&self) -> Option<&JetVector> {
        match self {
            PcpWitness::Witness(j) => Some(j),
            PcpWitness::NoWitnessFound { .. } => None,
        }
    }
}

/// Looks for a fiber point mapping onto `g(x0)`.
///
/// Linear symbols use the direct construction: the first `α` (graded-lex)
/// with `f_α(x0) ≠ 0` gets `y_α = g(x0) / f_α(x0)`, everything else zero.
/// Other symbols freeze all jet coordinates at zero but one, and solve the
/// resulting univariate equation for a real rational root; this search is
/// incomplete, and only claims emptiness when the symbol depends on a
/// single jet coordinate at `x0` and has no real root there.
pub fn pcp_check(gsym: &GeneralSymbol, g: &MultiPoly, x0: &RationalPoint) -> Result<PcpWitness> {
    let m = gsym.base_dim();
    check_dim(m, g.num_vars())?;
    check_dim(m, x0.dim())?;
    let target = g.evaluate(x0)?;
    let spec = JetSpec::new(m, gsym.order());
    let labels = gsym.jet_labels();

    if let Some(lin) = gsym.as_linear() {
        let values = x0.to_scalars();
        let pivot = lin.terms().iter().map(|(a, c)| (a, c.evaluate_scalars(&values))).find(|(_, v)| !v.is_zero());
        return Ok(match pivot {
            Some((alpha, value)) => {
                let mut entries = vec![Scalar::zero(); labels.len()];
                let pos = labels.iter().position(|l| l == alpha).expect("term label within order");
                entries[pos] = target.checked_div(&value)?;
                PcpWitness::Witness(JetVector::new(spec, entries)?)
            }
            None if target.is_zero() => PcpWitness::Witness(JetVector::zero(spec)),
            None => PcpWitness::NoWitnessFound {
                strategy_note: format!(
                    "linear symbol vanishes identically on the fiber at x0 and g(x0) = {target} is nonzero; no jet can map onto it"
                ),
                proven_empty: true,
            },
        });
    }

    let mut values = x0.to_scalars();
    values.extend(std::iter::repeat_n(Scalar::zero(), labels.len()));
    let body = gsym.body();
    let mut notes = Vec::new();
    let mut dependent = 0usize;
    let mut total_real_roots = 0usize;
    for (pos, label) in labels.iter().enumerate() {
        let mut coeffs = body.specialize_univariate(&values, m + pos);
        if coeffs.len() < 2 {
            continue;
        }
        dependent += 1;
        coeffs[0] = &coeffs[0] - &target;
        // A real root must be a common root of the real and imaginary parts.
        let re = UniPoly::new(coeffs.iter().map(|c| c.re().clone()).collect());
        let im = UniPoly::new(coeffs.iter().map(|c| c.im().clone()).collect());
        let common = re.gcd(&im);
        let real_roots = common.isolate_real_roots().len();
        total_real_roots += real_roots;
        match common.rational_roots() {
            RationalRoots::Found(roots) if !roots.is_empty() => {
                // Smallest magnitude first, the nonnegative one on ties.
                let root = roots.iter().min_by_key(|q| (q.abs(), q.is_negative())).expect("nonempty");
                let mut entries = vec![Scalar::zero(); labels.len()];
                entries[pos] = Scalar::from_rational(root.clone());
                return Ok(PcpWitness::Witness(JetVector::new(spec, entries)?));
            }
            RationalRoots::Found(_) => {
                notes.push(format!("y{label}: {real_roots} isolated real root(s), none rational"))
            }
            RationalRoots::Skipped => notes.push(format!(
                "y{label}: {real_roots} isolated real root(s), rational search skipped (coefficients too large)"
            )),
        }
    }

    if dependent == 0 {
        let constant = body.evaluate_scalars(&values);
        if constant == target {
            return Ok(PcpWitness::Witness(JetVector::zero(spec)));
        }
        return Ok(PcpWitness::NoWitnessFound {
            strategy_note: format!(
                "symbol is constant ({constant}) on the fiber at x0 and differs from g(x0) = {target}"
            ),
            proven_empty: true,
        });
    }
    let proven_empty = dependent == 1 && total_real_roots == 0;
    let mut strategy_note = format!(
        "freeze-and-solve: all jet coordinates but one fixed at 0, univariate equation solved for rational roots; {}",
        notes.join("; ")
    );
    if proven_empty {
        strategy_note.push_str("; the symbol depends on a single jet coordinate at x0, so no real witness exists");
    }
    Ok(PcpWitness::NoWitnessFound { strategy_note, proven_empty })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_operator, parse_polynomial, ParsedOperator};

    const LEWY: &str = "d[1,0,0] + i*d[0,1,0] + (-2*i*x1 + 2*x2)*d[0,0,1]";

    fn op(text: &str) -> LinearSymbol {
        match parse_operator(text, None, None).unwrap() {
            ParsedOperator::Linear(s) => s,
            ParsedOperator::General(_) => panic!("expected linear operator"),
        }
    }

    fn gen(text: &str, m: usize, r: usize) -> GeneralSymbol {
        match parse_operator(text, Some(m), Some(r)).unwrap() {
            ParsedOperator::Linear(s) => s.to_general(),
            ParsedOperator::General(g) => g,
        }
    }

    fn poly(text: &str, m: usize) -> MultiPoly {
        parse_polynomial(text, m).unwrap()
    }

    fn jet(m: usize, k: usize, v: &[i64]) -> JetVector {
        JetVector::new(JetSpec::new(m, k), v.iter().map(|&x| Scalar::from_integer(x)).collect()).unwrap()
    }

    #[test]
    fn lift_examples() {
        let r = lift_jet(&op("d[1]"), &RationalPoint::origin(1), &jet(1, 0, &[1])).unwrap();
        assert_eq!(r.status, LiftStatus::Solved(jet(1, 1, &[0, 1])));
        assert_eq!(r.pivot_trace, vec![MultiIndex::from([1])]);

        let r = lift_jet(&op("x1*d[1]"), &RationalPoint::origin(1), &jet(1, 0, &[1])).unwrap();
        assert_eq!(r.status, LiftStatus::Unsolvable);

        let lewy = op(LEWY);
        let x0 = RationalPoint::origin(3);
        let target = MultiPoly::one(3).taylor_jet(&x0, 1).unwrap();
        let r = lift_jet(&lewy, &x0, &target).unwrap();
        let f = borel_realize(r.jet().unwrap(), &x0).unwrap();
        assert!(post_check(&lewy, &f, &MultiPoly::one(3), &[x0], 1).unwrap());
    }

    #[test]
    fn borel_examples() {
        let f = borel_realize(&jet(1, 2, &[1, 2, 2]), &RationalPoint::from_integers(&[1])).unwrap();
        // 1 + 2(x−1) + (x−1)² = x²
        assert_eq!(f, poly("x1^2", 1));
        assert!(borel_realize(&JetVector::zero(JetSpec::new(2, 3)), &RationalPoint::origin(2)).unwrap().is_zero());
        assert_eq!(borel_realize(&jet(2, 0, &[7]), &RationalPoint::from_integers(&[3, 4])).unwrap(), poly("7", 2));
        assert!(borel_realize(&jet(2, 0, &[7]), &RationalPoint::origin(1)).is_err());
    }

    #[test]
    fn solve_examples() {
        let d = op("d[1]");
        let x0 = RationalPoint::origin(1);
        assert_eq!(solve_to_order(&d, &poly("1", 1), &x0, 0).unwrap().polynomial(), Some(&poly("x1", 1)));
        let out = solve_to_order(&d, &poly("x1", 1), &x0, 1).unwrap();
        assert_eq!(out.polynomial(), Some(&poly("1/2*x1^2", 1)));

        let lewy = op(LEWY);
        let g = poly("x1", 3);
        let x0 = RationalPoint::origin(3);
        let f = solve_to_order(&lewy, &g, &x0, 2).unwrap().polynomial().cloned().unwrap();
        assert!(post_check(&lewy, &f, &g, &[x0], 2).unwrap());

        let out = solve_to_order(&op("x1*d[1]"), &poly("1", 1), &RationalPoint::origin(1), 0).unwrap();
        assert!(!out.is_solved());
    }

    #[test]
    fn solve_multi_examples() {
        let d = op("d[1]");
        let g = poly("1", 1);
        let pts = [RationalPoint::from_integers(&[0]), RationalPoint::from_integers(&[1])];
        let f = solve_at_points(&d, &g, &pts, 0).unwrap().polynomial().cloned().unwrap();
        assert!(post_check(&d, &f, &g, &pts, 0).unwrap());

        let single = solve_at_points(&d, &g, &pts[..1], 0).unwrap();
        assert_eq!(single, solve_to_order(&d, &g, &pts[0], 0).unwrap());

        let dup = [RationalPoint::origin(1), RationalPoint::origin(1)];
        assert_eq!(solve_at_points(&d, &g, &dup, 0), Err(Error::DuplicatePoints { first: 0, second: 1 }));
    }

    #[test]
    fn surjectivity_examples() {
        let r = check_surjectivity(&op(LEWY), &RationalPoint::origin(3), 1).unwrap();
        assert_eq!((r.rank, r.full), (4, true));
        let r = check_surjectivity(&op("x1*d[1]"), &RationalPoint::origin(1), 0).unwrap();
        assert_eq!((r.rank, r.full), (0, false));
        let r = check_surjectivity(&op("(1 + x1)*d[2]"), &RationalPoint::origin(1), 0).unwrap();
        assert_eq!((r.rank, r.full), (1, true));
    }

    #[test]
    fn membership_examples() {
        let lewy = op(LEWY);
        assert!(membership_i(&lewy, &poly("x1*x3 + 5", 3), &RationalPoint::from_integers(&[1, 1, 1]), 2).unwrap());
        let sing = op("x1^2*d[1]");
        let x0 = RationalPoint::origin(1);
        assert!(!membership_i(&sing, &poly("1", 1), &x0, 0).unwrap());
        // x²·f′ has zero 1-jet at 0, so x⁴ is reachable at low orders.
        assert!(membership_i(&sing, &poly("x1^4", 1), &x0, 2).unwrap());
        assert!(!membership_i(&sing, &poly("x1", 1), &x0, 1).unwrap());
    }

    #[test]
    fn pcp_examples() {
        let lewy = gen(LEWY, 3, 1);
        let x0 = RationalPoint::from_integers(&[2, -1, 5]);
        let w = pcp_check(&lewy, &poly("1", 3), &x0).unwrap();
        let j = w.jet().unwrap();
        assert_eq!(j.get(&[1, 0, 0].into()), Some(&Scalar::from_integer(1)));
        assert_eq!(j.entries().iter().filter(|v| !v.is_zero()).count(), 1);
        assert_eq!(lewy.evaluate(&x0, j).unwrap(), Scalar::from_integer(1));

        let sq = gen("y[1]^2", 1, 1);
        let w = pcp_check(&sq, &poly("4", 1), &RationalPoint::origin(1)).unwrap();
        assert_eq!(w.jet().unwrap().get(&[1].into()), Some(&Scalar::from_integer(2)));

        match pcp_check(&sq, &poly("-1", 1), &RationalPoint::origin(1)).unwrap() {
            PcpWitness::NoWitnessFound { proven_empty, .. } => assert!(proven_empty),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pcp_irrational_root_not_proven_empty() {
        let sq = gen("y[1]^2", 1, 1);
        match pcp_check(&sq, &poly("2", 1), &RationalPoint::origin(1)).unwrap() {
            PcpWitness::NoWitnessFound { proven_empty, strategy_note } => {
                assert!(!proven_empty);
                assert!(strategy_note.contains("2 isolated real root"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pcp_complex_coefficients() {
        // (1 + i)·y₍₁₎ + y₍₀₎² = 2 + 2i  ⇒  y₍₁₎ = 2 with y₍₀₎ frozen at 0,
        // but y₍₀₎ comes first: y₀² = 2 + 2i has no real root.
        let g = gen("(1 + i)*y[1] + y[0]^2", 1, 1);
        let w = pcp_check(&g, &poly("2 + 2*i", 1), &RationalPoint::origin(1)).unwrap();
        let j = w.jet().unwrap();
        assert_eq!(
            g.evaluate(&RationalPoint::origin(1), j).unwrap(),
            poly("2 + 2*i", 1).evaluate(&RationalPoint::origin(1)).unwrap()
        );
    }
}
