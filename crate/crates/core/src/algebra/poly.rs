//! Sparse multivariate polynomials over [`Scalar`].

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hermite::jet_local_polynomial;
use super::{MultiIndex, RationalPoint, Scalar};
use crate::error::{check_dim, Error, Result};
use crate::jet::{enumerate_multiindices, JetSpec, JetVector};

/// A polynomial in `x₁, …, x_m`, stored as exponent → coefficient with no
/// zero coefficients. Iteration follows graded-lex exponent order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Scalar) -> Self {
        MultiPoly::monomial(MultiIndex::zeros(num_vars), c)
    }

    pub fn one(num_vars: usize) -> Self {
        MultiPoly::constant(num_vars, Scalar::one())
    }

    /// The coordinate `x_{i+1}` (0-based `i`).
    pub fn var(num_vars: usize, i: usize) -> Self {
        MultiPoly::monomial(MultiIndex::unit(num_vars, i), Scalar::one())
    }

    pub fn monomial(exp: MultiIndex, c: Scalar) -> Self {
        let num_vars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MultiPoly { num_vars, terms }
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        let mut p = MultiPoly::zero(num_vars);
        for (e, c) in terms {
            check_dim(num_vars, e.len())?;
            p.add_term(e, &c);
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, Scalar> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &MultiIndex) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::weight).max()
    }

    /// Highest power of `x_{i+1}` appearing.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.entries()[i]).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, exp: MultiIndex, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly { num_vars: self.num_vars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.num_vars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps the terms of total degree `≤ k`.
    pub fn truncate(&self, k: usize) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().filter(|(e, _)| e.weight() <= k).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Product truncated to total degree `≤ k`, skipping the discarded terms.
    pub fn mul_truncated(&self, rhs: &MultiPoly, k: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            let wa = ea.weight();
            if wa > k {
                continue;
            }
            for (eb, cb) in &rhs.terms {
                if wa + eb.weight() <= k {
                    out.add_term(ea.add(eb), &(ca * cb));
                }
            }
        }
        out
    }

    /// `∂_{i+1} p` (0-based `i`).
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            let a = e.entries()[i];
            if let Some(lowered) = e.lower(i) {
                out.add_term(lowered, &(c * &Scalar::from_integer(a as i64)));
            }
        }
        out
    }

    /// Iterated partial derivative `∂^α p`.
    pub fn derivative(&self, alpha: &MultiIndex) -> Result<MultiPoly> {
        check_dim(self.num_vars, alpha.len())?;
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            let Some(rest) = e.checked_sub(alpha) else { continue };
            let factor = falling_factorial_product(e, alpha);
            out.add_term(rest, &(c * &Scalar::from_rational(BigRational::from_integer(factor))));
        }
        Ok(out)
    }

    pub fn evaluate(&self, x0: &RationalPoint) -> Result<Scalar> {
        check_dim(self.num_vars, x0.dim())?;
        Ok(self.evaluate_scalars(&x0.to_scalars()))
    }

    /// Substitutes arbitrary scalars for the variables. Panics if the length
    /// does not match `num_vars`.
    pub fn evaluate_scalars(&self, values: &[Scalar]) -> Scalar {
        assert_eq!(values.len(), self.num_vars, "evaluation point has wrong dimension");
        let powers = self.power_table(values);
        self.terms.iter().map(|(e, c)| c * &monomial_value(&powers, e)).sum()
    }

    fn power_table(&self, values: &[Scalar]) -> Vec<Vec<Scalar>> {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let top = self.degree_in(i) as usize;
                let mut row = Vec::with_capacity(top + 1);
                row.push(Scalar::one());
                for d in 1..=top {
                    let next = &row[d - 1] * v;
                    row.push(next);
                }
                row
            })
            .collect()
    }

    /// The order-`k` jet of raw derivative values `∂^α p(x₀)`, `|α| ≤ k`
    /// (no division by `α!`).
    pub fn taylor_jet(&self, x0: &RationalPoint, k: usize) -> Result<JetVector> {
        check_dim(self.num_vars, x0.dim())?;
        let m = self.num_vars;
        let spec = JetSpec::new(m, k);
        let alphas = enumerate_multiindices(m, k);
        // Sum over integers: with coefficients C/L and x₀ = n/D,
        // L·D^deg·∂^α p(x₀) = Σ_e C_e·(e)_α·n^{e−α}·D^{deg−|e|+|α|}.
        let deg = self.degree().unwrap_or(0);
        let l = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()).lcm(c.im().denom()));
        let d = x0.coords().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let powers = |base: &BigInt, top: usize| {
            let mut row = vec![BigInt::one()];
            for j in 0..top {
                let next = &row[j] * base;
                row.push(next);
            }
            row
        };
        let npow: Vec<Vec<BigInt>> = x0
            .coords()
            .iter()
            .enumerate()
            .map(|(i, c)| powers(&(c.numer() * (&d / c.denom())), self.degree_in(i) as usize))
            .collect();
        let dpow = powers(&d, deg);
        let lq = BigRational::from_integer(l.clone());
        let scaled: Vec<(&MultiIndex, BigInt, BigInt)> =
            self.terms.iter().map(|(e, c)| (e, (c.re() * &lq).to_integer(), (c.im() * &lq).to_integer())).collect();
        let denom = &l * &dpow[deg];
        let entries = alphas
            .iter()
            .map(|alpha| {
                let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
                for (e, cre, cim) in &scaled {
                    let Some(rest) = e.checked_sub(alpha) else { continue };
                    let mut factor = falling_factorial_product(e, alpha) * &dpow[deg - rest.weight()];
                    for (row, &a) in npow.iter().zip(rest.entries()) {
                        factor *= &row[a as usize];
                    }
                    re += cre * &factor;
                    im += cim * &factor;
                }
                Scalar::new(BigRational::new(re, denom.clone()), BigRational::new(im, denom.clone()))
            })
            .collect();
        JetVector::new(spec, entries)
    }

    /// `p(x + shift)`.
    pub fn translate(&self, shift: &[Scalar]) -> Result<MultiPoly> {
        check_dim(self.num_vars, shift.len())?;
        let m = self.num_vars;
        let mut out = MultiPoly::zero(m);
        for (e, c) in &self.terms {
            // Expand Π_i (x_i + s_i)^{e_i} one variable at a time.
            let mut partial: Vec<(Vec<u32>, Scalar)> = vec![(vec![0; m], c.clone())];
            for (i, &a) in e.entries().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let s = &shift[i];
                let mut next = Vec::with_capacity(partial.len() * (a as usize + 1));
                for j in 0..=a {
                    let coeff =
                        Scalar::from_rational(BigRational::from_integer(binomial(BigInt::from(a), BigInt::from(j))));
                    let coeff = &coeff * &s.pow(a - j);
                    if coeff.is_zero() {
                        continue;
                    }
                    for (exp, val) in &partial {
                        let mut exp = exp.clone();
                        exp[i] = j;
                        next.push((exp, val * &coeff));
                    }
                }
                partial = next;
            }
            for (exp, val) in partial {
                out.add_term(MultiIndex::new(exp), &val);
            }
        }
        Ok(out)
    }

    /// Returns `q` of degree `≤ k` with `p·q ≡ 1` to order `k` at `x₀`.
    pub fn local_inverse_truncated(&self, x0: &RationalPoint, k: usize) -> Result<MultiPoly> {
        let neg_shift: Vec<Scalar> = x0.to_scalars().iter().map(|s| -s).collect();
        self.local_inverse_series(x0, k)?.translate(&neg_shift)
    }

    /// The degree-`≤ k` part of `1/p` in local coordinates `t = x − x₀`.
    pub(crate) fn local_inverse_series(&self, x0: &RationalPoint, k: usize) -> Result<MultiPoly> {
        // Only the k-jet of p at x₀ matters: p(x₀ + t) = c₀ + h(t) + O(|t|^{k+1}).
        let mut h = jet_local_polynomial(&self.taylor_jet(x0, k)?)?;
        let zero = MultiIndex::zeros(self.num_vars);
        let c0 = h.coefficient(&zero);
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv_c0 = c0.checked_inv()?;
        h.terms.remove(&zero);
        let ratio = h.scale(&-&inv_c0);
        // (c₀ + h)⁻¹ = c₀⁻¹ Σ_n (−h/c₀)^n, and (h/c₀)^n has order ≥ n.
        let mut sum = MultiPoly::one(self.num_vars);
        let mut power = MultiPoly::one(self.num_vars);
        for _ in 1..=k {
            power = power.mul_truncated(&ratio, k);
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(&inv_c0))
    }

    /// Substitutes `values` for every variable except `keep`, returning the
    /// dense coefficient list (ascending degree) of the resulting univariate
    /// polynomial in `x_{keep+1}`.
    pub fn specialize_univariate(&self, values: &[Scalar], keep: usize) -> Vec<Scalar> {
        assert_eq!(values.len(), self.num_vars);
        let powers = self.power_table(values);
        let mut coeffs = vec![Scalar::zero(); self.degree_in(keep) as usize + 1];
        for (e, c) in &self.terms {
            let d = e.entries()[keep] as usize;
            let mut rest = e.entries().to_vec();
            rest[keep] = 0;
            coeffs[d] += &(c * &monomial_value(&powers, &MultiIndex::new(rest)));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        coeffs
    }

    /// Keeps only terms satisfying the predicate.
    pub fn filter_terms(&self, mut keep: impl FnMut(&MultiIndex) -> bool) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }
}

/// `Π_i e_i! / (e_i − α_i)!`; assumes `α ≤ e`.
fn falling_factorial_product(e: &MultiIndex, alpha: &MultiIndex) -> BigInt {
    let mut acc = BigInt::one();
    for (&a, &d) in e.entries().iter().zip(alpha.entries()) {
        for k in (a - d + 1)..=a {
            acc *= k;
        }
    }
    acc
}

fn monomial_value(powers: &[Vec<Scalar>], e: &MultiIndex) -> Scalar {
    let mut acc = Scalar::one();
    for (row, &a) in powers.iter().zip(e.entries()) {
        if a > 0 {
            acc = &acc * &row[a as usize];
        }
    }
    acc
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_vars, rhs.num_vars, "polynomial dimension mismatch");
        let mut out = MultiPoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.add(eb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Scalar::one())
    }
}
