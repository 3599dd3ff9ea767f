//! Randomized property suites over exact arithmetic.
//!
//! Each suite draws instances from a seeded [`ChaCha8Rng`], runs the
//! engine, and verifies the outcome by a second route (direct
//! differentiation, evaluation, substitution). The acceptance tests and the
//! `check` subcommand both run these.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{hermite_interpolate, MultiPoly, RationalPoint, Scalar};
use crate::jet::{enumerate_multiindices, jet_dimension, multiindices_of_weight, JetSpec, JetVector};
use crate::solver::{
    check_surjectivity, pcp_check, post_check, solve_at_points, solve_to_order, PcpWitness, SolveOutcome,
};
use crate::symbol::LinearSymbol;
use crate::vanishing::{desingularization_order, vanishing_order, Desingularization, VanishingOrder};

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> BigRational {
    let n = rng.random_range(-max_num..=max_num);
    let d = rng.random_range(1..=max_den);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Small Gaussian rational; the imaginary part is nonzero about a third of
/// the time when `complex` is set.
pub fn random_scalar(rng: &mut impl Rng, complex: bool) -> Scalar {
    let re = random_rational(rng, 4, 3);
    let im = if complex && rng.random_bool(0.35) { random_rational(rng, 3, 2) } else { BigRational::zero() };
    Scalar::new(re, im)
}

pub fn random_nonzero_scalar(rng: &mut impl Rng, complex: bool) -> Scalar {
    loop {
        let s = random_scalar(rng, complex);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_point(rng: &mut impl Rng, m: usize) -> RationalPoint {
    RationalPoint::new((0..m).map(|_| random_rational(rng, 2, 2)).collect())
}

/// Up to `max_terms` random monomials of degree `≤ max_deg`.
pub fn random_poly(rng: &mut impl Rng, m: usize, max_deg: usize, max_terms: usize, complex: bool) -> MultiPoly {
    let exps = enumerate_multiindices(m, max_deg);
    let n = rng.random_range(0..=max_terms);
    let mut p = MultiPoly::zero(m);
    for _ in 0..n {
        let e = exps[rng.random_range(0..exps.len())].clone();
        p = &p + &MultiPoly::monomial(e, random_scalar(rng, complex));
    }
    p
}

pub fn random_nonzero_poly(rng: &mut impl Rng, m: usize, max_deg: usize, max_terms: usize, complex: bool) -> MultiPoly {
    loop {
        let p = random_poly(rng, m, max_deg, max_terms.max(1), complex);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random symbol of declared order `r`; every `|α| ≤ r` is kept with
/// probability one half.
pub fn random_symbol(rng: &mut impl Rng, m: usize, r: usize, coeff_deg: usize) -> LinearSymbol {
    let mut terms = Vec::new();
    for alpha in enumerate_multiindices(m, r) {
        if rng.random_bool(0.5) {
            terms.push((alpha, random_poly(rng, m, coeff_deg, 3, true)));
        }
    }
    LinearSymbol::new(m, r, terms).expect("generated terms are well formed")
}

/// A random symbol whose principal part does not vanish at any of `points`.
pub fn random_elliptic_at(
    rng: &mut impl Rng,
    m: usize,
    r: usize,
    coeff_deg: usize,
    points: &[RationalPoint],
) -> LinearSymbol {
    loop {
        let mut sym = random_symbol(rng, m, r, coeff_deg);
        let top = multiindices_of_weight(m, r);
        let alpha = top[rng.random_range(0..top.len())].clone();
        // Guarantee a principal term, then discard the rare unlucky draws.
        let extra = random_nonzero_poly(rng, m, coeff_deg, 2, true);
        let mut terms: Vec<_> = sym.terms().iter().map(|(a, c)| (a.clone(), c.clone())).collect();
        terms.push((alpha, extra));
        sym = LinearSymbol::new(m, r, terms).expect("well formed");
        let principal = sym.principal_part();
        if points.iter().all(|x| principal.is_nonzero_at(x).expect("dimension")) {
            return sym;
        }
    }
}

fn dims(rng: &mut impl Rng) -> (usize, usize) {
    (rng.random_range(1..=3), rng.random_range(0..=2))
}

fn run(name: &'static str, cases: usize, mut body: impl FnMut(usize) -> Option<String>) -> SuiteResult {
    let start = Instant::now();
    let failures = (0..cases).filter_map(&mut body).collect();
    SuiteResult { name, cases, failures, elapsed: start.elapsed() }
}

/// `fiber_matrix(λ^{(s)}, x0) · j^{r+s}_{x0} f = j^s_{x0} P(f)`.
pub fn prolongation_identity(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    run("prolongation identity", cases, |case| {
        let (m, r) = dims(&mut rng);
        let s = rng.random_range(0..=2);
        let sym = random_symbol(&mut rng, m, r, 2);
        let f = random_poly(&mut rng, m, 4, 6, true);
        let x0 = random_point(&mut rng, m);
        let lhs = sym.prolong(s).fiber_matrix(&x0).and_then(|mat| mat.mul_vec(f.taylor_jet(&x0, r + s)?.entries()));
        let rhs = sym.apply_operator(&f).and_then(|pf| pf.taylor_jet(&x0, s));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l.as_slice() == r.entries() => None,
            (l, r) => Some(format!("case {case}: m={m} s={s} mismatch {l:?} vs {r:?}")),
        }
    })
}

/// `∂^#_i ∂^#_j λ = ∂^#_j ∂^#_i λ` for all direction pairs.
pub fn total_derivative_commutation(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    run("total derivative commutation", cases, |case| {
        let (m, r) = dims(&mut rng);
        let sym = random_symbol(&mut rng, m, r, 2);
        for i in 1..=m {
            for j in (i + 1)..=m {
                let ij = sym.total_derivative(j).and_then(|s| s.total_derivative(i));
                let ji = sym.total_derivative(i).and_then(|s| s.total_derivative(j));
                if ij != ji {
                    return Some(format!("case {case}: directions ({i},{j}) do not commute"));
                }
            }
        }
        None
    })
}

/// A symbol with coefficients `h·f_α`, where `h` is a homogeneous form of
/// degree `c + 1` in `x − x0` and some `f_α(x0) ≠ 0`; its vanishing order
/// at `x0` is exactly `c`.
pub fn engineered_singular_symbol(
    rng: &mut impl Rng,
    m: usize,
    r: usize,
    c: usize,
    x0: &RationalPoint,
) -> LinearSymbol {
    let base = loop {
        let s = random_symbol(rng, m, r, 2);
        if s.is_nonzero_at(x0).expect("dimension") {
            break s;
        }
    };
    let form = loop {
        let mut h = MultiPoly::zero(m);
        for e in multiindices_of_weight(m, c + 1) {
            if rng.random_bool(0.5) {
                h = &h + &MultiPoly::monomial(e, random_scalar(rng, true));
            }
        }
        if !h.is_zero() {
            break h;
        }
    };
    let shift: Vec<Scalar> = x0.to_scalars().iter().map(|v| -v).collect();
    let form = form.translate(&shift).expect("dimension");
    let terms = base.terms().iter().map(|(a, f)| (a.clone(), &form * f));
    LinearSymbol::new(m, r, terms).expect("well formed")
}

/// Vanishing order `Exactly(c)` ⇒ desingularization order `c + 1`.
pub fn desingularization_law(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    run("desingularization law", cases, |case| {
        let (m, r) = dims(&mut rng);
        let c = rng.random_range(0..=3);
        let x0 = random_point(&mut rng, m);
        let sym = engineered_singular_symbol(&mut rng, m, r, c, &x0);
        let order = vanishing_order(&sym, &x0).map(|rep| rep.order);
        if order != Ok(VanishingOrder::Exactly(c)) {
            return Some(format!("case {case}: engineered order {c} but measured {order:?}"));
        }
        match desingularization_order(&sym, &x0, c + 2) {
            Ok(Desingularization::Level(s)) if s == c + 1 => None,
            other => Some(format!("case {case}: Exactly({c}) gave desingularization {other:?}")),
        }
    })
}

/// Nonzero principal part at `x0` ⇒ every prolongation up to level 3 is onto.
pub fn surjectivity(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    run("surjectivity", cases, |case| {
        let m = rng.random_range(1..=3);
        let r = rng.random_range(1..=2);
        let x0 = random_point(&mut rng, m);
        let sym = random_elliptic_at(&mut rng, m, r, 2, std::slice::from_ref(&x0));
        for k in 0..=3 {
            match check_surjectivity(&sym, &x0, k) {
                Ok(rep) if rep.full && rep.rank == jet_dimension(m, k) => {}
                other => return Some(format!("case {case}: m={m} r={r} k={k}: {other:?}")),
            }
        }
        None
    })
}

/// Every solved instance satisfies `j^s_{x0}(P(f) − g) = 0`. Instances are
/// drawn until `cases` of them are solvable.
pub fn solver_soundness(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut solved = 0;
    let mut attempts = 0;
    while solved < cases && attempts < cases * 20 {
        attempts += 1;
        let (m, r) = dims(&mut rng);
        let s = rng.random_range(0..=2);
        let x0 = random_point(&mut rng, m);
        // Mostly symbols with a nonvanishing principal part, whose systems are
        // always solvable, plus unrestricted ones that are solvable by chance.
        let sym = if rng.random_bool(0.75) {
            random_elliptic_at(&mut rng, m, r, 2, std::slice::from_ref(&x0))
        } else {
            random_symbol(&mut rng, m, r, 2)
        };
        let g = random_poly(&mut rng, m, 3, 5, true);
        match solve_to_order(&sym, &g, &x0, s) {
            Ok(SolveOutcome::Solved(sol)) => {
                solved += 1;
                if post_check(&sym, &sol.polynomial, &g, std::slice::from_ref(&x0), s) != Ok(true) {
                    failures.push(format!("attempt {attempts}: post-check failed (m={m} r={r} s={s})"));
                }
            }
            Ok(SolveOutcome::Unsolvable { .. }) => {}
            Err(e) => failures.push(format!("attempt {attempts}: {e}")),
        }
    }
    if solved < cases {
        failures.push(format!("only {solved} solvable instances in {attempts} attempts"));
    }
    SuiteResult { name: "solver soundness", cases: solved, failures, elapsed: start.elapsed() }
}

/// Glued solutions pass the per-point post-check at every point.
pub fn gluing(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    run("multi-point gluing", cases, |case| {
        let (m, r) = dims(&mut rng);
        let s = rng.random_range(0..=2);
        let n = rng.random_range(2..=3);
        let mut points: Vec<RationalPoint> = Vec::new();
        while points.len() < n {
            let p = random_point(&mut rng, m);
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let sym = random_elliptic_at(&mut rng, m, r, 1, &points);
        let g = random_poly(&mut rng, m, 2, 4, true);
        match solve_at_points(&sym, &g, &points, s) {
            Ok(SolveOutcome::Solved(sol)) => match post_check(&sym, &sol.polynomial, &g, &points, s) {
                Ok(true) => None,
                other => Some(format!("case {case}: post-check {other:?} (m={m} r={r} s={s} points={n})")),
            },
            other => Some(format!("case {case}: {other:?}")),
        }
    })
}

/// Linear symbols nonvanishing at `x0` admit the direct witness, which
/// evaluates to `g(x0)`.
pub fn pcp_linear(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    run("pointwise covering (linear)", cases, |case| {
        let (m, r) = dims(&mut rng);
        let x0 = random_point(&mut rng, m);
        let sym = loop {
            let s = random_symbol(&mut rng, m, r, 2);
            if s.is_nonzero_at(&x0).expect("dimension") {
                break s;
            }
        };
        let g = random_poly(&mut rng, m, 3, 4, true);
        let gsym = sym.to_general();
        let want = g.evaluate(&x0).expect("dimension");
        match pcp_check(&gsym, &g, &x0) {
            Ok(PcpWitness::Witness(jet)) => {
                let nonzero = jet.entries().iter().filter(|v| !v.is_zero()).count();
                match gsym.evaluate(&x0, &jet) {
                    Ok(v) if v == want && nonzero <= 1 => None,
                    other => Some(format!("case {case}: witness evaluates to {other:?}, expected {want}")),
                }
            }
            other => Some(format!("case {case}: {other:?}")),
        }
    })
}

/// Hermite interpolants reproduce every prescribed jet exactly.
pub fn hermite(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = rng(seed);
    run("hermite interpolation", cases, |case| {
        let m = rng.random_range(1..=3);
        let k = rng.random_range(0..=2);
        let n = rng.random_range(1..=3);
        let mut points: Vec<RationalPoint> = Vec::new();
        while points.len() < n {
            let p = random_point(&mut rng, m);
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let spec = JetSpec::new(m, k);
        let jets: Vec<JetVector> = (0..n)
            .map(|_| {
                let entries = (0..spec.fiber_dimension()).map(|_| random_scalar(&mut rng, true)).collect();
                JetVector::new(spec, entries).expect("sized to the fiber")
            })
            .collect();
        let f = match hermite_interpolate(&points, &jets, k) {
            Ok(f) => f,
            Err(e) => return Some(format!("case {case}: {e}")),
        };
        for (x, want) in points.iter().zip(&jets) {
            if f.taylor_jet(x, k).as_ref() != Ok(want) {
                return Some(format!("case {case}: jet mismatch at {x} (m={m} k={k} points={n})"));
            }
        }
        None
    })
}

/// Runs every randomized suite with counts suitable for the CLI.
pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    vec![
        prolongation_identity(seed, 200),
        total_derivative_commutation(seed.wrapping_add(1), 100),
        desingularization_law(seed.wrapping_add(2), 200),
        surjectivity(seed.wrapping_add(3), 100),
        solver_soundness(seed.wrapping_add(4), 200),
        gluing(seed.wrapping_add(5), 50),
        pcp_linear(seed.wrapping_add(6), 100),
        hermite(seed.wrapping_add(7), 100),
    ]
}
