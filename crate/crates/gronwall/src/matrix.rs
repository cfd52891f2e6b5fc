//! Dense square matrices, a partial-pivot solver, and the nonnegative-matrix
//! wrapper used as the positive operator K.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lattice::OrderedVec;
use crate::spectral::{self, SpectralBracket};

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Parameter("matrix must have positive dimension".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            data.extend_from_slice(row);
        }
        let m = Matrix { dim, data };
        m.check_finite()?;
        Ok(m)
    }

    fn check_finite(&self) -> Result<()> {
        if let Some(bad) = self.data.iter().find(|v| !v.is_finite()) {
            return Err(Error::Invariant(format!("non-finite matrix entry {bad}")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        let mut y = vec![0.0; self.dim];
        for i in 0..self.dim {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            y[i] = row.iter().zip(x).map(|(&a, &b)| a * b).sum();
        }
        y
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Max absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .map(|v| v.abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().map(|&v| c * v).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// `self - c * I`.
    pub fn sub_scaled_identity(&self, c: f64) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.dim {
            let v = m.get(i, i);
            m.set(i, i, v - c);
        }
        m
    }

    fn is_lower_triangular(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (i + 1..n).all(|j| self.data[i * n + j] == 0.0))
    }

    /// Solve `self * x = b`: forward substitution when the matrix is lower
    /// triangular (no pivoting, so the arithmetic matches the defining
    /// recursions of triangular systems digit for digit), Gaussian
    /// elimination with partial pivoting otherwise.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: b.len() });
        }
        let n = self.dim;
        if self.is_lower_triangular() {
            let mut x = vec![0.0; n];
            for i in 0..n {
                let d = self.data[i * n + i];
                if d.abs() < f64::EPSILON * self.inf_norm().max(1.0) {
                    return Err(Error::Numeric("singular system in linear solve".into()));
                }
                let s: f64 = (0..i).map(|j| self.data[i * n + j] * x[j]).sum();
                x[i] = (b[i] - s) / d;
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::Numeric("non-finite solution in linear solve".into()));
            }
            return Ok(x);
        }
        let mut a = self.data.clone();
        let mut x: Vec<f64> = b.to_vec();
        for col in 0..n {
            let (pivot_row, pivot) = (col..n)
                .map(|r| (r, a[r * n + col].abs()))
                .max_by(|l, r| l.1.total_cmp(&r.1))
                .unwrap();
            if pivot < f64::EPSILON * self.inf_norm().max(1.0) {
                return Err(Error::Numeric("singular system in linear solve".into()));
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                x.swap(col, pivot_row);
            }
            let d = a[col * n + col];
            for r in col + 1..n {
                let f = a[r * n + col] / d;
                if f == 0.0 {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] -= f * a[col * n + j];
                }
                x[r] -= f * x[col];
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= a[i * n + j] * x[j];
            }
            x[i] = s / a[i * n + i];
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite solution in linear solve".into()));
        }
        Ok(x)
    }
}

/// Dense nonnegative matrix acting as the positive operator K.
///
/// The Perron-root bracket is computed lazily and cached; the matrix is
/// immutable after construction, so the value is safe to share.
#[derive(Debug)]
pub struct NonnegMatrix {
    inner: Matrix,
    bracket: OnceLock<SpectralBracket>,
}

impl Clone for NonnegMatrix {
    fn clone(&self) -> Self {
        NonnegMatrix { inner: self.inner.clone(), bracket: self.bracket.clone() }
    }
}

impl NonnegMatrix {
    pub fn new(inner: Matrix) -> Result<Self> {
        inner.check_finite()?;
        for i in 0..inner.dim() {
            for j in 0..inner.dim() {
                if inner.get(i, j) < 0.0 {
                    return Err(Error::Invariant(format!(
                        "negative entry {} at ({i},{j}) in nonnegative matrix",
                        inner.get(i, j)
                    )));
                }
            }
        }
        Ok(NonnegMatrix { inner, bracket: OnceLock::new() })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        NonnegMatrix::new(Matrix::from_rows(rows)?)
    }

    pub fn zero(dim: usize) -> Self {
        NonnegMatrix { inner: Matrix::zeros(dim), bracket: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        self.inner.matvec(x)
    }

    pub fn apply(&self, x: &OrderedVec) -> Result<OrderedVec> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: x.len() });
        }
        OrderedVec::new(self.matvec(x.as_slice()))
    }

    /// Cached Perron-root bracket at the default tolerance (1e-10).
    ///
    /// The bracket endpoints are valid bounds even when the iteration did not
    /// meet the tolerance, so callers may rely on `upper` unconditionally.
    pub fn spectral_bracket(&self) -> SpectralBracket {
        *self
            .bracket
            .get_or_init(|| spectral::spectral_bound(self, 1e-10, 50_000).expect(
                "spectral bracketing cannot overflow on a normalized nonnegative iterate",
            ))
    }
}
