//! Dense univariate polynomials over ℚ with exact real-root tools:
//! rational-root search and Sturm-sequence root isolation.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest divisor search performed by [`UniPoly::rational_roots`] before
/// giving up on a coefficient; trial division beyond this is not attempted.
const MAX_TRIAL_DIVISOR: u64 = 1_000_000;

/// Coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly(Vec<BigRational>);

/// Outcome of a rational-root search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RationalRoots {
    Found(Vec<BigRational>),
    /// Coefficients too large to enumerate divisors of.
    Skipped,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0.iter().enumerate().skip(1).map(|(d, c)| c * BigRational::from_integer(BigInt::from(d))).collect(),
        )
    }

    /// Remainder of Euclidean division; panics if `divisor` is zero.
    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.lead().unwrap();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / lead;
            if !q.is_zero() {
                for (k, c) in divisor.0.iter().enumerate() {
                    r[top - dd + k] -= &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    fn quotient(&self, divisor: &UniPoly) -> UniPoly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.lead().unwrap();
        let Some(sd) = self.degree() else { return UniPoly::new(vec![]) };
        if sd < dd {
            return UniPoly::new(vec![]);
        }
        let mut r = self.0.clone();
        let mut q = vec![BigRational::zero(); sd - dd + 1];
        for top in (dd..=sd).rev() {
            let c = &r[top] / lead;
            if !c.is_zero() {
                for (k, dc) in divisor.0.iter().enumerate() {
                    r[top - dd + k] -= &c * dc;
                }
            }
            q[top - dd] = c;
        }
        UniPoly::new(q)
    }

    fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => UniPoly(self.0.iter().map(|c| c / l).collect()),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.quotient(&g).monic()
    }

    /// Distinct rational roots in increasing order.
    pub fn rational_roots(&self) -> RationalRoots {
        let sf = self.squarefree();
        if sf.degree().unwrap_or(0) == 0 {
            return RationalRoots::Found(vec![]);
        }
        let mut roots = Vec::new();
        // Strip the root at zero so the constant term is nonzero.
        let mut coeffs = sf.0.clone();
        if coeffs[0].is_zero() {
            roots.push(BigRational::zero());
            coeffs.remove(0);
        }
        let ints = clear_denominators(&coeffs);
        if ints.len() > 1 {
            let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
                return RationalRoots::Skipped;
            };
            let reduced = UniPoly::new(coeffs);
            for p in &ps {
                for q in &qs {
                    if !p.gcd(q).is_one() {
                        continue;
                    }
                    for cand in [BigRational::new(p.clone(), q.clone()), BigRational::new(-p.clone(), q.clone())] {
                        if reduced.eval(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        RationalRoots::Found(roots)
    }

    /// Sturm chain of the squarefree part.
    fn sturm_chain(&self) -> Vec<UniPoly> {
        let p0 = self.squarefree();
        let mut chain = vec![p0.clone()];
        let mut prev = p0.clone();
        let mut cur = p0.derivative();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let next = prev.rem(&cur);
            prev = cur;
            cur = UniPoly(next.0.into_iter().map(|c| -c).collect());
        }
        chain
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = self.sturm_chain();
        let at_neg_inf = sign_changes(chain.iter().map(|p| {
            let s = lead_sign(p);
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }));
        let at_pos_inf = sign_changes(chain.iter().map(lead_sign));
        at_neg_inf - at_pos_inf
    }

    /// Disjoint intervals `(lo, hi]`, each holding exactly one real root;
    /// exact rational roots hit during bisection come back as `lo == hi`.
    pub fn isolate_real_roots(&self) -> Vec<(BigRational, BigRational)> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let chain = self.sturm_chain();
        let sf = &chain[0];
        let bound = cauchy_bound(sf);
        let variations = |x: &BigRational| sign_changes(chain.iter().map(|p| sign_of(&p.eval(x))));
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = variations(&lo) - variations(&hi);
            if n == 0 {
                continue;
            }
            if n == 1 {
                if sf.eval(&hi).is_zero() {
                    out.push((hi.clone(), hi));
                } else {
                    out.push((lo, hi));
                }
                continue;
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        out.sort();
        out
    }
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn lead_sign(p: &UniPoly) -> i8 {
    p.lead().map(sign_of).unwrap_or(0)
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Every real root lies in `(−B, B]` with `B = 1 + max |a_i / a_n|`.
fn cauchy_bound(p: &UniPoly) -> BigRational {
    let lead = p.lead().unwrap().abs();
    let max = p.0[..p.0.len() - 1].iter().map(|c| c.abs() / &lead).max().unwrap_or_default();
    max + BigRational::one()
}

fn clear_denominators(coeffs: &[BigRational]) -> Vec<BigInt> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect()
}

/// Positive divisors of a nonzero integer, or `None` when trial division
/// would exceed [`MAX_TRIAL_DIVISOR`].
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.sign() == Sign::NoSign {
        return Some(vec![]);
    }
    let limit = BigInt::from(MAX_TRIAL_DIVISOR);
    if n > &limit * &limit {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}
