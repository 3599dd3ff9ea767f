use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// A multiindex `α = (α₁, …, α_m)` of nonnegative integers.
///
/// The [`Ord`] implementation is graded lexicographic: lower weight first,
/// and within a weight the larger leading entry first, so for `m = 2`
/// the order reads `(0,0), (1,0), (0,1), (2,0), (1,1), (0,2), …`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(m: usize) -> Self {
        MultiIndex(vec![0; m])
    }

    /// The unit multiindex `e_i` (0-based `i`).
    pub fn unit(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// `α_i`: the same multiindex with entry `i` (0-based) raised by one.
    pub fn bump(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    /// Lowers entry `i` by one, or `None` if it is already zero.
    pub fn lower(&self, i: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v[i] = v[i].checked_sub(1)?;
        Some(MultiIndex(v))
    }

    pub fn add(&self, other: &MultiIndex) -> Self {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other` when `other ≤ self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<Self> {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }

    /// `α! = α₁!⋯α_m!`.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &a in &self.0 {
            for k in 2..=a {
                acc *= k;
            }
        }
        acc
    }

    /// Index of the first nonzero entry.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&a| a != 0)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.weight().cmp(&other.weight())).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let mut v: Vec<MultiIndex> =
            vec![[0, 2].into(), [1, 0].into(), [1, 1].into(), [0, 0].into(), [0, 1].into(), [2, 0].into()];
        v.sort();
        let want: Vec<MultiIndex> =
            vec![[0, 0].into(), [1, 0].into(), [0, 1].into(), [2, 0].into(), [1, 1].into(), [0, 2].into()];
        assert_eq!(v, want);
    }

    #[test]
    fn bump_raises_weight() {
        let a: MultiIndex = [1, 0, 2].into();
        let b = a.bump(1);
        assert_eq!(b.entries(), &[1, 1, 2]);
        assert_eq!(b.weight(), a.weight() + 1);
        assert_eq!(b.lower(1), Some(a.clone()));
        assert_eq!(a.lower(1), None);
    }

    #[test]
    fn factorial() {
        let a: MultiIndex = [3, 0, 2].into();
        assert_eq!(a.factorial(), BigInt::from(12));
    }
}
