//! Dense matrices over [`Scalar`] with exact Gaussian elimination.

use num_traits::Zero;

use crate::algebra::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of solving `A y = b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LinearSolution {
    /// Particular solution with every free variable set to zero.
    Solved {
        solution: Vec<Scalar>,
        pivots: Vec<usize>,
    },
    Inconsistent {
        pivots: Vec<usize>,
    },
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rhs = vec![Scalar::zero(); self.rows];
        work.eliminate(&mut rhs).len()
    }

    /// Solves `self · y = b`. Pivots are the first nonzero entry scanning
    /// columns left to right; free variables are zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<LinearSolution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let mut work = self.clone();
        let mut rhs = b.to_vec();
        let pivots = work.eliminate(&mut rhs);
        if rhs[pivots.len()..].iter().any(|v| !v.is_zero()) {
            return Ok(LinearSolution::Inconsistent { pivots });
        }
        let mut solution = vec![Scalar::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            solution[col] = rhs[row].clone();
        }
        Ok(LinearSolution::Solved { solution, pivots })
    }

    /// Reduces to reduced row-echelon form in place (with pivots scaled to
    /// one), applying the same row operations to `rhs`. Returns the pivot
    /// columns in order.
    fn eliminate(&mut self, rhs: &mut [Scalar]) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(found) = (prow..self.rows).find(|&r| !self.get(r, col).is_zero()) else { continue };
            if found != prow {
                self.swap_rows(found, prow);
                rhs.swap(found, prow);
            }
            let inv = self.get(prow, col).checked_inv().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.get(prow, c) * &inv;
                self.set(prow, c, v);
            }
            rhs[prow] = &rhs[prow] * &inv;
            for r in 0..self.rows {
                if r == prow {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r, c) - &(&factor * self.get(prow, c));
                    self.set(r, c, v);
                }
                rhs[r] = &rhs[r] - &(&factor * &rhs[prow]);
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_integer(v)).collect()).collect()).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_integer(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 1, 0], &[0, 0, 1]]).rank(), 2);
        assert_eq!(Matrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let a = m(&[&[0, 1, 0], &[0, 0, 1]]);
        let sol = a.solve(&v(&[1, 0])).unwrap();
        assert_eq!(sol, LinearSolution::Solved { solution: v(&[0, 1, 0]), pivots: vec![1, 2] });
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(matches!(a.solve(&v(&[1, 3])).unwrap(), LinearSolution::Inconsistent { .. }));
        assert!(matches!(Matrix::zeros(1, 2).solve(&v(&[1])).unwrap(), LinearSolution::Inconsistent { .. }));
    }

    #[test]
    fn complex_solve_checks_out() {
        let i = Scalar::i();
        let one = Scalar::from_integer(1);
        let a =
            Matrix::from_rows(vec![vec![one.clone(), i.clone()], vec![i.clone(), Scalar::from_integer(2)]]).unwrap();
        let b = vec![Scalar::from_integer(3), -&i];
        let LinearSolution::Solved { solution, .. } = a.solve(&b).unwrap() else { panic!("expected solution") };
        assert_eq!(a.mul_vec(&solution).unwrap(), b);
    }
}
