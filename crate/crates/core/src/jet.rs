//! Jet fibers: multiindex enumeration, fiber dimensions, jet vectors and
//! the forgetful projections between orders.

use std::ops::{Add, Sub};

use num_integer::binomial;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{MultiIndex, Scalar};
use crate::error::{Error, Result};

/// Shape of the fiber `J^k_{m,1,x}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct JetSpec {
    pub base_dim: usize,
    pub order: usize,
}

impl JetSpec {
    pub fn new(base_dim: usize, order: usize) -> Self {
        JetSpec { base_dim, order }
    }

    pub fn fiber_dimension(&self) -> usize {
        jet_dimension(self.base_dim, self.order)
    }
}

/// `C(m + k, m)`: the number of multiindices of length `m` and weight `≤ k`.
pub fn jet_dimension(m: usize, k: usize) -> usize {
    binomial(m + k, m)
}

/// All multiindices of length `m` and weight `≤ k`, graded-lex.
pub fn enumerate_multiindices(m: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(jet_dimension(m, k));
    let mut buf = vec![0u32; m];
    for w in 0..=k {
        fill_weight(&mut buf, 0, w as u32, &mut out);
    }
    out
}

/// Multiindices of length `m` and weight exactly `w`, graded-lex.
pub fn multiindices_of_weight(m: usize, w: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut buf = vec![0u32; m];
    fill_weight(&mut buf, 0, w as u32, &mut out);
    out
}

fn fill_weight(buf: &mut [u32], pos: usize, rem: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 >= buf.len() {
        if let Some(last) = buf.last_mut() {
            *last = rem;
            out.push(MultiIndex::new(buf.to_vec()));
        } else if rem == 0 {
            out.push(MultiIndex::new(vec![]));
        }
        return;
    }
    for v in (0..=rem).rev() {
        buf[pos] = v;
        fill_weight(buf, pos + 1, rem - v, out);
    }
    buf[pos] = 0;
}

/// Number of multiindices with `n` entries summing to `w`.
fn compositions(n: usize, w: usize) -> usize {
    if n == 0 {
        usize::from(w == 0)
    } else {
        binomial(n + w - 1, w)
    }
}

/// Position of `alpha` in [`enumerate_multiindices`] order.
pub fn graded_lex_position(alpha: &MultiIndex) -> usize {
    let m = alpha.len();
    let w = alpha.weight();
    let mut pos = if w == 0 { 0 } else { jet_dimension(m, w - 1) };
    let mut rem = w;
    for (i, &a) in alpha.entries().iter().enumerate() {
        let a = a as usize;
        let tail = m - i - 1;
        // Entries larger than `a` at this slot come first.
        for v in (a + 1)..=rem {
            pos += compositions(tail, rem - v);
        }
        rem -= a;
    }
    pos
}

/// A finite jet at a point: raw derivative values `∂^α f(x₀)` for
/// `|α| ≤ order`, stored in graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct JetVector {
    spec: JetSpec,
    entries: Vec<Scalar>,
}

impl JetVector {
    pub fn new(spec: JetSpec, entries: Vec<Scalar>) -> Result<Self> {
        let want = spec.fiber_dimension();
        if entries.len() != want {
            return Err(Error::DimensionMismatch { expected: want, found: entries.len() });
        }
        Ok(JetVector { spec, entries })
    }

    pub fn zero(spec: JetSpec) -> Self {
        JetVector { spec, entries: vec![Scalar::zero(); spec.fiber_dimension()] }
    }

    pub fn spec(&self) -> JetSpec {
        self.spec
    }

    pub fn order(&self) -> usize {
        self.spec.order
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn get(&self, alpha: &MultiIndex) -> Option<&Scalar> {
        if alpha.len() != self.spec.base_dim || alpha.weight() > self.spec.order {
            return None;
        }
        self.entries.get(graded_lex_position(alpha))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `(α, value)` pairs in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, &Scalar)> + '_ {
        enumerate_multiindices(self.spec.base_dim, self.spec.order).into_iter().zip(&self.entries)
    }

    /// The projection `π^{order}_l`: keep the entries with `|α| ≤ l`.
    pub fn project(&self, l: usize) -> Result<JetVector> {
        if l > self.spec.order {
            return Err(Error::OrderTooHigh { requested: l, available: self.spec.order });
        }
        let spec = JetSpec::new(self.spec.base_dim, l);
        let n = spec.fiber_dimension();
        Ok(JetVector { spec, entries: self.entries[..n].to_vec() })
    }

    pub fn scale(&self, c: &Scalar) -> JetVector {
        JetVector { spec: self.spec, entries: self.entries.iter().map(|e| e * c).collect() }
    }
}

impl<'a> Add<&'a JetVector> for &'a JetVector {
    type Output = JetVector;
    fn add(self, rhs: &JetVector) -> JetVector {
        assert_eq!(self.spec, rhs.spec, "jet shape mismatch");
        JetVector { spec: self.spec, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a JetVector> for &'a JetVector {
    type Output = JetVector;
    fn sub(self, rhs: &JetVector) -> JetVector {
        assert_eq!(self.spec, rhs.spec, "jet shape mismatch");
        JetVector { spec: self.spec, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct JetEntryJson {
    alpha: Vec<u32>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct JetJson {
    m: usize,
    order: usize,
    entries: Vec<JetEntryJson>,
}

impl Serialize for JetVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .iter()
            .map(|(alpha, v)| JetEntryJson {
                alpha: alpha.entries().to_vec(),
                re: Scalar::format_rational(v.re()),
                im: Scalar::format_rational(v.im()),
            })
            .collect();
        JetJson { m: self.spec.base_dim, order: self.spec.order, entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JetVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = JetJson::deserialize(deserializer)?;
        let spec = JetSpec::new(raw.m, raw.order);
        let expected = enumerate_multiindices(raw.m, raw.order);
        if raw.entries.len() != expected.len() {
            return Err(D::Error::custom(format!(
                "expected {} jet entries, found {}",
                expected.len(),
                raw.entries.len()
            )));
        }
        let mut entries = Vec::with_capacity(expected.len());
        for (e, alpha) in raw.entries.iter().zip(&expected) {
            if e.alpha.as_slice() != alpha.entries() {
                return Err(D::Error::custom(format!(
                    "entry {:?} out of graded-lex order (expected {alpha})",
                    e.alpha
                )));
            }
            let re = Scalar::parse_rational(&e.re).map_err(D::Error::custom)?;
            let im = Scalar::parse_rational(&e.im).map_err(D::Error::custom)?;
            entries.push(Scalar::new(re, im));
        }
        Ok(JetVector { spec, entries })
    }
}
