//! Small dense row-major matrices with just the operations the rest of the
//! crate needs: products, determinants, and inversion by Gauss–Jordan
//! elimination with partial pivoting. Dimensions here are (n+1) with n in the
//! hundreds at most, so a direct dense solve is the right tool.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidInput("matrix needs at least one row".into()));
        }
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "inner dimensions must agree");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Inverse together with the determinant, via Gauss–Jordan elimination
    /// with partial pivoting. A pivot whose magnitude falls below `pivot_tol`
    /// stops the elimination; the determinant accumulated so far times the
    /// dead pivot is reported to the caller for its own degeneracy message.
    pub fn invert_with_det(&self, pivot_tol: f64) -> std::result::Result<(Matrix, f64), f64> {
        assert_eq!(self.rows, self.cols, "only square matrices are invertible");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        let mut det = 1.0;

        for col in 0..n {
            // partial pivoting: largest magnitude in the column at or below the diagonal
            let mut pivot_row = col;
            let mut pivot_mag = a.get(col, col).abs();
            for r in col + 1..n {
                let mag = a.get(r, col).abs();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = r;
                }
            }
            if pivot_mag <= pivot_tol {
                return Err(det * a.get(pivot_row, col));
            }
            if pivot_row != col {
                a.swap_rows(col, pivot_row);
                inv.swap_rows(col, pivot_row);
                det = -det;
            }
            let pivot = a.get(col, col);
            det *= pivot;
            let inv_pivot = 1.0 / pivot;
            for j in 0..n {
                a.data[col * n + j] *= inv_pivot;
                inv.data[col * n + j] *= inv_pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(col, j);
                    a.data[r * n + j] -= factor * v;
                    let w = inv.get(col, j);
                    inv.data[r * n + j] -= factor * w;
                }
            }
        }
        Ok((inv, det))
    }

    /// Solves `self * x = b` through the inverse; fine at these sizes.
    pub fn solve(&self, b: &[f64], pivot_tol: f64) -> Result<Vec<f64>> {
        let (inv, _) = self
            .invert_with_det(pivot_tol)
            .map_err(|det| Error::DegenerateSimplex {
                det: det.abs(),
                threshold: pivot_tol,
            })?;
        Ok(inv.mul_vec(b))
    }

    /// det(self), or the partial product if elimination dies early.
    pub fn det(&self, pivot_tol: f64) -> f64 {
        match self.invert_with_det(pivot_tol) {
            Ok((_, det)) => det,
            Err(partial) => partial,
        }
    }

    /// Largest entry magnitude of `self * other - I`.
    pub fn residual_from_identity(&self, other: &Matrix) -> f64 {
        let prod = self.mul(other);
        let n = prod.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod.get(i, j) - target).abs());
            }
        }
        worst
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }
}
