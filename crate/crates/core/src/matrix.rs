//! Dense row-major matrix storage and the handful of operations the rest of
//! the crate needs. Everything here is desk-scale: no blocking, no SIMD.

use crate::error::{Error, Result};

/// Dense real matrix, row-major.
///
/// Parent matrices are square; characteristic matrices of partitions are
/// rectangular, so the type tracks both dimensions. Entries are always
/// finite — constructors reject NaN and infinities.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a `rows x cols` matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix("dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!("non-finite entry {bad}")));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds an `n x n` matrix from row-major data.
    pub fn square(n: usize, data: Vec<f64>) -> Result<Self> {
        Self::new(n, n, data)
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidMatrix("no rows".into()));
        }
        let cols = rows[0].len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::InvalidMatrix(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                r.len(),
                cols
            )));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Identity of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix.
    ///
    /// Panics if the matrix is rectangular; callers validate squareness first.
    pub fn order(&self) -> usize {
        assert!(self.is_square(), "order() on a rectangular matrix");
        self.rows
    }

    /// Checks the square-parent-matrix contract and returns the order.
    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::InvalidMatrix(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix product; dimensions must agree.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Matrix infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `max |m_ij - m_ji|` over all pairs; zero for symmetric matrices.
    pub fn symmetry_gap(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut gap = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                gap = gap.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        gap
    }

    /// Symmetry test at the crate's detection threshold of
    /// `1e-12 * max(1, ||M||_inf)`.
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.symmetry_gap() <= 1e-12 * self.norm_inf().max(1.0)
    }

    /// Entrywise maximum absolute difference; infinite if shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_entries() {
        assert!(DenseMatrix::square(2, vec![1.0, f64::NAN, 0.0, 1.0]).is_err());
        assert!(DenseMatrix::square(2, vec![1.0, f64::INFINITY, 0.0, 1.0]).is_err());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(DenseMatrix::square(2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::new(0, 1, vec![]).is_err());
        assert!(DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn matmul_and_transpose_agree_with_hand_results() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let ab = a.matmul(&b);
        assert_eq!(ab.entries(), &[2.0, 1.0, 4.0, 3.0]);
        assert_eq!(a.transpose().entries(), &[1.0, 3.0, 2.0, 4.0]);
        assert_eq!(a.trace(), 5.0);
    }

    #[test]
    fn norms() {
        let m = DenseMatrix::from_rows(&[vec![1.0, -2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(m.norm_inf(), 7.0);
        assert_eq!(m.max_abs(), 4.0);
        assert!(!m.is_symmetric());
        assert!(DenseMatrix::identity(3).is_symmetric());
    }
}
