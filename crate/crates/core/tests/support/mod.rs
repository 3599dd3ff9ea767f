//! Reference computations for the integration tests. Everything here works
//! from first principles on polynomial terms, independently of the
//! crate's jet, prolongation and solver code.

#![allow(dead_code)]

use jetforge::{LinearSymbol, MultiPoly, RationalPoint, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// All `α ∈ ℕ^m` with `|α| ≤ k`: by weight, then larger leading entries
/// first.
pub fn indices(m: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=k as u32).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| weight(v) <= k);
    out.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| b.cmp(a)));
    out
}

pub fn weight(v: &[u32]) -> usize {
    v.iter().map(|&a| a as usize).sum()
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

/// `∂^α p (x0)`, differentiating monomial by monomial.
pub fn deriv_at(p: &MultiPoly, alpha: &[u32], x0: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    'terms: for (e, c) in p.terms() {
        let mut term = c.clone();
        for (i, (&ei, &ai)) in e.entries().iter().zip(alpha).enumerate() {
            if ai > ei {
                continue 'terms;
            }
            for t in 0..ai {
                term *= &Scalar::from_integer((ei - t) as i64);
            }
            term *= &x0[i].pow(ei - ai);
        }
        acc += &term;
    }
    acc
}

pub fn scalars(x0: &RationalPoint) -> Vec<Scalar> {
    x0.coords().iter().cloned().map(Scalar::from_rational).collect()
}

/// Raw derivatives `∂^α p(x0)` for `|α| ≤ k`, graded-lex.
///
/// Sums are formed over integers: with coefficient denominators cleared by
/// `L` and `x0 = n / D`, `∂^α p(x0) · L · D^deg` is an integer combination.
pub fn jet(p: &MultiPoly, x0: &RationalPoint, k: usize) -> Vec<Scalar> {
    let m = x0.dim();
    let deg = p.degree().unwrap_or(0);
    let big_l = p
        .terms()
        .values()
        .flat_map(|c| [c.re().denom().clone(), c.im().denom().clone()])
        .fold(BigInt::one(), |a, d| a.lcm(&d));
    let big_d = x0.coords().iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let nums: Vec<BigInt> = x0.coords().iter().map(|c| c.numer() * (&big_d / c.denom())).collect();
    let top = deg + k;
    let pow_table = |base: &BigInt| {
        let mut row = vec![BigInt::one()];
        for d in 0..top {
            let next = &row[d] * base;
            row.push(next);
        }
        row
    };
    let npow: Vec<Vec<BigInt>> = nums.iter().map(pow_table).collect();
    let dpow = pow_table(&big_d);
    let scaled: Vec<(Vec<u32>, BigInt, BigInt)> = p
        .terms()
        .iter()
        .map(|(e, c)| {
            let re = c.re() * BigRational::from_integer(big_l.clone());
            let im = c.im() * BigRational::from_integer(big_l.clone());
            (e.entries().to_vec(), re.to_integer(), im.to_integer())
        })
        .collect();
    let denom = &big_l * &dpow[deg];
    indices(m, k)
        .iter()
        .map(|alpha| {
            let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
            'terms: for (e, cre, cim) in &scaled {
                let mut factor = BigInt::one();
                for i in 0..m {
                    if alpha[i] > e[i] {
                        continue 'terms;
                    }
                    for t in 0..alpha[i] {
                        factor *= e[i] - t;
                    }
                    factor *= &npow[i][(e[i] - alpha[i]) as usize];
                }
                factor *= &dpow[deg - weight(e) + weight(alpha)];
                re += cre * &factor;
                im += cim * &factor;
            }
            Scalar::new(BigRational::new(re, denom.clone()), BigRational::new(im, denom.clone()))
        })
        .collect()
}

/// The map `j^{r+s} f ↦ j^s P(f)` at `x0`, from the Leibniz rule:
/// `∂^β(f_α ∂^α f) = Σ_{γ ≤ β} C(β, γ) ∂^γ f_α ∂^{β−γ+α} f`.
pub fn leibniz_matrix(sym: &LinearSymbol, x0: &RationalPoint, s: usize) -> Vec<Vec<Scalar>> {
    let m = sym.base_dim();
    let x = scalars(x0);
    let rows = indices(m, s);
    let cols = indices(m, sym.order() + s);
    let mut out = vec![vec![Scalar::zero(); cols.len()]; rows.len()];
    for (ri, beta) in rows.iter().enumerate() {
        for gamma in indices(m, weight(beta)) {
            if gamma.iter().zip(beta).any(|(g, b)| g > b) {
                continue;
            }
            let c: i64 = beta.iter().zip(&gamma).map(|(&b, &g)| binomial(b, g)).product();
            for (alpha, f) in sym.terms() {
                let delta: Vec<u32> = (0..m).map(|i| beta[i] - gamma[i] + alpha.entries()[i]).collect();
                let ci = cols.iter().position(|d| *d == delta).expect("within r + s");
                out[ri][ci] += &(Scalar::from_integer(c) * deriv_at(f, &gamma, &x));
            }
        }
    }
    out
}

pub fn mat_vec(a: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Rank by plain Gaussian elimination.
pub fn rank(mut a: Vec<Vec<Scalar>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r].clone();
        let inv = Scalar::one() / pivot[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] * &inv;
                for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= &(&f * p);
                }
            }
        }
        r += 1;
    }
    r
}

/// `j^s_{x0}(P(f) − g) = 0`, checked through the Leibniz matrix.
pub fn residual_vanishes(sym: &LinearSymbol, f: &MultiPoly, g: &MultiPoly, x0: &RationalPoint, s: usize) -> bool {
    let lhs = mat_vec(&leibniz_matrix(sym, x0, s), &jet(f, x0, sym.order() + s));
    lhs == jet(g, x0, s)
}

/// Value of a polynomial at a list of scalars.
pub fn eval(p: &MultiPoly, values: &[Scalar]) -> Scalar {
    deriv_at(p, &vec![0; values.len()], values)
}

pub fn binom(n: usize, k: usize) -> usize {
    binomial(n as u32, k as u32) as usize
}
