//! Linear differential operators represented by their total symbols
//! `λ = Σ f_α y_α`, with total derivatives, prolongations and fiber maps.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{MultiIndex, MultiPoly, RationalPoint, Scalar};
use crate::error::{check_dim, Error, Result};
use crate::jet::{enumerate_multiindices, graded_lex_position, jet_dimension, multiindices_of_weight, JetVector};
use crate::linalg::Matrix;

/// Total symbol of a scalar linear operator of declared order `r` on `ℝ^m`.
///
/// The declared order may exceed the weight of every stored term; fiber
/// matrices always index columns by the declared order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearSymbol {
    base_dim: usize,
    order: usize,
    terms: BTreeMap<MultiIndex, MultiPoly>,
}

impl LinearSymbol {
    /// Merges repeated multiindices and drops zero coefficients.
    pub fn new<I>(base_dim: usize, order: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, MultiPoly)>,
    {
        let mut sym = LinearSymbol::zero(base_dim, order);
        for (alpha, coeff) in terms {
            check_dim(base_dim, alpha.len())?;
            check_dim(base_dim, coeff.num_vars())?;
            if alpha.weight() > order {
                return Err(Error::OrderBelowWeight { declared: order, weight: alpha.weight() });
            }
            sym.add_term(alpha, &coeff);
        }
        Ok(sym)
    }

    pub fn zero(base_dim: usize, order: usize) -> Self {
        LinearSymbol { base_dim, order, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, alpha: MultiIndex, coeff: &MultiPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(alpha).or_insert_with(|| MultiPoly::zero(self.base_dim));
        *slot = &*slot + coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, MultiPoly> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Option<&MultiPoly> {
        self.terms.get(alpha)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest weight among stored terms.
    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::weight).max()
    }

    /// Same terms, larger declared order.
    pub fn with_order(&self, order: usize) -> Result<LinearSymbol> {
        if let Some(w) = self.max_weight().filter(|&w| w > order) {
            return Err(Error::OrderBelowWeight { declared: order, weight: w });
        }
        Ok(LinearSymbol { order, ..self.clone() })
    }

    /// `P(f) = Σ_α f_α ∂^α f`.
    pub fn apply_operator(&self, f: &MultiPoly) -> Result<MultiPoly> {
        check_dim(self.base_dim, f.num_vars())?;
        let mut out = MultiPoly::zero(self.base_dim);
        for (alpha, coeff) in &self.terms {
            let d = f.derivative(alpha)?;
            if !d.is_zero() {
                out = &out + &(coeff * &d);
            }
        }
        Ok(out)
    }

    /// Coordinate total derivative `∂^#_i` for 1-based direction `i`:
    /// `Σ_α (∂_i f_α) y_α + f_α y_{α_i}`, of order `r + 1`.
    pub fn total_derivative(&self, i: usize) -> Result<LinearSymbol> {
        if i == 0 || i > self.base_dim {
            return Err(Error::BadDirection { direction: i, dim: self.base_dim });
        }
        Ok(self.total_derivative_at(i - 1))
    }

    fn total_derivative_at(&self, i: usize) -> LinearSymbol {
        let mut out = LinearSymbol::zero(self.base_dim, self.order + 1);
        for (alpha, coeff) in &self.terms {
            out.add_term(alpha.clone(), &coeff.partial(i));
            out.add_term(alpha.bump(i), coeff);
        }
        out
    }

    /// The symbol with coefficients `∂_i f_α` (0-based `i`), same order.
    pub fn differentiate_coefficients(&self, i: usize) -> LinearSymbol {
        let mut out = LinearSymbol::zero(self.base_dim, self.order);
        for (alpha, coeff) in &self.terms {
            out.add_term(alpha.clone(), &coeff.partial(i));
        }
        out
    }

    /// Terms with `|α|` equal to the declared order.
    pub fn principal_part(&self) -> LinearSymbol {
        LinearSymbol {
            base_dim: self.base_dim,
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.weight() == self.order)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Does any coefficient take a nonzero value at `x0`?
    pub fn is_nonzero_at(&self, x0: &RationalPoint) -> Result<bool> {
        check_dim(self.base_dim, x0.dim())?;
        let values = x0.to_scalars();
        Ok(self.terms.values().any(|c| !c.evaluate_scalars(&values).is_zero()))
    }

    /// Pairs the symbol at `x0` with a jet of order `≥ r`: `Σ f_α(x0) p_α`.
    pub fn pair(&self, x0: &RationalPoint, jet: &JetVector) -> Result<Scalar> {
        check_dim(self.base_dim, x0.dim())?;
        check_dim(self.base_dim, jet.spec().base_dim)?;
        if jet.order() < self.order {
            return Err(Error::OrderTooHigh { requested: self.order, available: jet.order() });
        }
        let values = x0.to_scalars();
        Ok(self
            .terms
            .iter()
            .map(|(alpha, c)| &c.evaluate_scalars(&values) * jet.get(alpha).expect("weight within jet order"))
            .sum())
    }

    /// The same symbol as a polynomial in the joint `(x, y)` variables.
    pub fn to_general(&self) -> GeneralSymbol {
        let m = self.base_dim;
        let nvars = m + jet_dimension(m, self.order);
        let mut body = MultiPoly::zero(nvars);
        for (alpha, coeff) in &self.terms {
            let ypos = m + graded_lex_position(alpha);
            for (e, c) in coeff.terms() {
                let mut exp = e.entries().to_vec();
                exp.resize(nvars, 0);
                exp[ypos] = 1;
                body = &body + &MultiPoly::monomial(MultiIndex::new(exp), c.clone());
            }
        }
        GeneralSymbol { base_dim: m, order: self.order, body }
    }

    /// The `s`-th prolongation.
    pub fn prolong(&self, s: usize) -> ProlongedSymbol {
        let mut p = ProlongedSymbol::new(self.clone());
        p.extend_to(s);
        p
    }
}

/// The family `(∂^#_β λ)_{|β| ≤ s}`, mapping `(r+s)`-jets to `s`-jets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProlongedSymbol {
    level: usize,
    components: BTreeMap<MultiIndex, LinearSymbol>,
}

impl ProlongedSymbol {
    fn new(base: LinearSymbol) -> Self {
        let mut components = BTreeMap::new();
        components.insert(MultiIndex::zeros(base.base_dim), base);
        ProlongedSymbol { level: 0, components }
    }

    pub fn base(&self) -> &LinearSymbol {
        self.components.values().next().expect("component at β = 0")
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn base_dim(&self) -> usize {
        self.base().base_dim
    }

    pub fn components(&self) -> &BTreeMap<MultiIndex, LinearSymbol> {
        &self.components
    }

    pub fn component(&self, beta: &MultiIndex) -> Option<&LinearSymbol> {
        self.components.get(beta)
    }

    /// Raises the level to `s`, reusing the components already present.
    ///
    /// `∂^#_β = (∂^#_1)^{β₁} ∘ ⋯ ∘ (∂^#_m)^{β_m}`: the component at `β` is the
    /// outermost factor `∂^#_i` (first nonzero `i`) applied to the component
    /// at `β − e_i`.
    pub fn extend_to(&mut self, s: usize) {
        let m = self.base_dim();
        for w in (self.level + 1)..=s {
            for beta in multiindices_of_weight(m, w) {
                let i = beta.first_nonzero().expect("positive weight");
                let prev = beta.lower(i).expect("entry is positive");
                let next = self.components[&prev].total_derivative_at(i);
                self.components.insert(beta, next);
            }
        }
        self.level = self.level.max(s);
    }

    /// Components of weight `w`, graded-lex.
    pub fn components_of_weight(&self, w: usize) -> impl Iterator<Item = (&MultiIndex, &LinearSymbol)> {
        self.components.iter().filter(move |(b, _)| b.weight() == w)
    }

    /// Rows `β` (`|β| ≤ s`), columns `α` (`|α| ≤ r + s`), entry the
    /// coefficient of `y_α` in component `β` evaluated at `x0`.
    pub fn fiber_matrix(&self, x0: &RationalPoint) -> Result<Matrix> {
        let m = self.base_dim();
        check_dim(m, x0.dim())?;
        let r = self.base().order;
        let s = self.level;
        let values = x0.to_scalars();
        let mut mat = Matrix::zeros(jet_dimension(m, s), jet_dimension(m, r + s));
        for (row, beta) in enumerate_multiindices(m, s).iter().enumerate() {
            for (alpha, coeff) in self.components[beta].terms() {
                mat.set(row, graded_lex_position(alpha), coeff.evaluate_scalars(&values));
            }
        }
        Ok(mat)
    }
}

/// A possibly nonlinear symbol: a polynomial in `x₁..x_m` followed by the
/// jet coordinates `y_α`, `|α| ≤ r`, in graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GeneralSymbol {
    base_dim: usize,
    order: usize,
    body: MultiPoly,
}

impl GeneralSymbol {
    pub fn new(base_dim: usize, order: usize, body: MultiPoly) -> Result<Self> {
        check_dim(base_dim + jet_dimension(base_dim, order), body.num_vars())?;
        Ok(GeneralSymbol { base_dim, order, body })
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn body(&self) -> &MultiPoly {
        &self.body
    }

    /// Jet multiindices labelling the `y` variables, in variable order.
    pub fn jet_labels(&self) -> Vec<MultiIndex> {
        enumerate_multiindices(self.base_dim, self.order)
    }

    /// `λ(x0, p)`.
    pub fn evaluate(&self, x0: &RationalPoint, p: &JetVector) -> Result<Scalar> {
        check_dim(self.base_dim, x0.dim())?;
        check_dim(self.base_dim, p.spec().base_dim)?;
        if p.order() != self.order {
            return Err(Error::InvalidInput(format!(
                "jet of order {} for a symbol of order {}",
                p.order(),
                self.order
            )));
        }
        let mut values = x0.to_scalars();
        values.extend(p.entries().iter().cloned());
        Ok(self.body.evaluate_scalars(&values))
    }

    /// Recovers the linear symbol when every term is of degree exactly one
    /// in the jet variables.
    pub fn as_linear(&self) -> Option<LinearSymbol> {
        let m = self.base_dim;
        let labels = self.jet_labels();
        let mut terms: BTreeMap<MultiIndex, MultiPoly> = BTreeMap::new();
        for (e, c) in self.body.terms() {
            let (xs, ys) = e.entries().split_at(m);
            if ys.iter().sum::<u32>() != 1 {
                return None;
            }
            let pos = ys.iter().position(|&v| v == 1)?;
            let mono = MultiPoly::monomial(MultiIndex::new(xs.to_vec()), c.clone());
            let slot = terms.entry(labels[pos].clone()).or_insert_with(|| MultiPoly::zero(m));
            *slot = &*slot + &mono;
        }
        LinearSymbol::new(m, self.order, terms).ok()
    }
}

/// Free-function form of [`GeneralSymbol::evaluate`].
pub fn evaluate_general(gsym: &GeneralSymbol, x0: &RationalPoint, p: &JetVector) -> Result<Scalar> {
    gsym.evaluate(x0, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_operator, parse_polynomial, ParsedOperator};
    use crate::jet::JetSpec;

    fn op(text: &str) -> LinearSymbol {
        match parse_operator(text, None, None).unwrap() {
            ParsedOperator::Linear(s) => s,
            ParsedOperator::General(_) => panic!("expected linear operator"),
        }
    }

    fn op_r(text: &str, m: usize, r: usize) -> LinearSymbol {
        match parse_operator(text, Some(m), Some(r)).unwrap() {
            ParsedOperator::Linear(s) => s,
            ParsedOperator::General(_) => panic!("expected linear operator"),
        }
    }

    fn poly(text: &str, m: usize) -> MultiPoly {
        parse_polynomial(text, m).unwrap()
    }

    const LEWY: &str = "d[1,0,0] + i*d[0,1,0] + (-2*i*x1 + 2*x2)*d[0,0,1]";

    #[test]
    fn apply_operator_examples() {
        assert_eq!(op("d[1]").apply_operator(&poly("x1^2", 1)).unwrap(), poly("2*x1", 1));
        let lewy = op(LEWY);
        assert_eq!(lewy.apply_operator(&poly("x3", 3)).unwrap(), poly("-2*i*x1 + 2*x2", 3));
        assert!(LinearSymbol::zero(2, 1).apply_operator(&poly("x1^3*x2", 2)).unwrap().is_zero());
        assert!(lewy.apply_operator(&poly("x1", 1)).is_err());
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(op("d[1]").total_derivative(1).unwrap(), op("d[2]"));
        assert_eq!(op("x1^2*d[1]").total_derivative(1).unwrap(), op("2*x1*d[1] + x1^2*d[2]"));
        // f = 1 + x + x³ on y₍₀₎
        assert_eq!(
            op_r("(1 + x1 + x1^3)*d[0]", 1, 0).total_derivative(1).unwrap(),
            op_r("(1 + 3*x1^2)*d[0] + (1 + x1 + x1^3)*d[1]", 1, 1)
        );
        assert_eq!(op("d[1]").total_derivative(2), Err(Error::BadDirection { direction: 2, dim: 1 }));
        assert_eq!(op("d[1]").total_derivative(0), Err(Error::BadDirection { direction: 0, dim: 1 }));
    }

    #[test]
    fn prolong_examples() {
        let s = op("x1^2*d[1]");
        let p0 = s.prolong(0);
        assert_eq!(p0.components().len(), 1);
        assert_eq!(p0.base(), &s);

        let p1 = op("d[1]").prolong(1);
        assert_eq!(p1.component(&[0].into()), Some(&op("d[1]")));
        assert_eq!(p1.component(&[1].into()), Some(&op("d[2]")));

        let p2 = s.prolong(2);
        assert_eq!(p2.component(&[2].into()), Some(&op("2*d[1] + 4*x1*d[2] + x1^2*d[3]")));
    }

    #[test]
    fn fiber_matrix_examples() {
        let one = Scalar::from_integer(1);
        let z = Scalar::zero();
        let m = op("d[1]").prolong(1).fiber_matrix(&RationalPoint::from_integers(&[7])).unwrap();
        assert_eq!(m.to_rows(), vec![vec![z.clone(), one.clone(), z.clone()], vec![z.clone(), z.clone(), one]]);
        let m = op("x1^2*d[1]").prolong(1).fiber_matrix(&RationalPoint::origin(1)).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert!(m.is_zero());
        let m = op("x1*d[1] + 3*d[0]").prolong(0).fiber_matrix(&RationalPoint::from_integers(&[2])).unwrap();
        assert_eq!(m.to_rows(), vec![vec![Scalar::from_integer(3), Scalar::from_integer(2)]]);
        assert!(op("d[1]").prolong(1).fiber_matrix(&RationalPoint::origin(2)).is_err());
    }

    #[test]
    fn principal_part_examples() {
        let lewy = op(LEWY);
        assert_eq!(lewy.principal_part(), lewy);
        assert_eq!(op("d[0] + d[2]").principal_part(), op("d[2]"));
        assert!(op_r("d[0]", 1, 1).principal_part().is_zero());
    }

    #[test]
    fn order_below_weight_rejected() {
        let err = LinearSymbol::new(1, 0, [(MultiIndex::from([1]), MultiPoly::one(1))]).unwrap_err();
        assert_eq!(err, Error::OrderBelowWeight { declared: 0, weight: 1 });
    }

    #[test]
    fn evaluate_general_examples() {
        let g = match parse_operator("y[1]^2", Some(1), Some(1)).unwrap() {
            ParsedOperator::General(g) => g,
            _ => panic!(),
        };
        let p = JetVector::new(JetSpec::new(1, 1), vec![0.into(), 2.into()]).unwrap();
        assert_eq!(g.evaluate(&RationalPoint::origin(1), &p).unwrap(), 4.into());
        let zero = JetVector::zero(JetSpec::new(1, 1));
        assert!(g.evaluate(&RationalPoint::origin(1), &zero).unwrap().is_zero());
        assert!(g.evaluate(&RationalPoint::origin(1), &JetVector::zero(JetSpec::new(1, 2))).is_err());
    }

    #[test]
    fn general_linear_roundtrip() {
        let lewy = op(LEWY);
        assert_eq!(lewy.to_general().as_linear(), Some(lewy));
    }
}
