//! Dense row-major matrices and the symmetric factorization used by the
//! precision-form normal sampler.
//!
//! The design matrices here are tiny (tens of rows) but the precision matrix
//! is n x n, so the Cholesky below is the scalability bottleneck of a
//! surrogate fit. That is a deliberate trade: it is the simplest correct
//! route at the network sizes this crate targets.

use crate::scalar::Scalar;
use std::ops::{Index, IndexMut};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    /// Build from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Column copied out; draw matrices are stored row-per-sweep, so
    /// per-coordinate summaries read columns.
    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;

    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Lower Cholesky factor of a symmetric positive-definite matrix.
///
/// Returns `Err(j)` with the offending pivot index when the matrix is not
/// numerically positive definite; callers decide whether to retry with
/// jitter on the diagonal.
pub(crate) fn cholesky_lower<F: Scalar>(a: &Matrix<F>) -> Result<Matrix<F>, usize> {
    let n = a.rows();
    debug_assert_eq!(n, a.cols());
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d = d - l[(j, k)] * l[(j, k)];
        }
        if !(d > F::zero()) || !d.is_finite() {
            return Err(j);
        }
        let djj = d.sqrt();
        l[(j, j)] = djj;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s = s - l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Solve L w = b with L lower triangular.
pub(crate) fn solve_lower<F: Scalar>(l: &Matrix<F>, b: &[F]) -> Vec<F> {
    let n = l.rows();
    let mut w = vec![F::zero(); n];
    for i in 0..n {
        let mut s = b[i];
        let row = l.row(i);
        for k in 0..i {
            s = s - row[k] * w[k];
        }
        w[i] = s / row[i];
    }
    w
}

/// Solve L^T x = b with L lower triangular (back substitution on the
/// transpose).
pub(crate) fn solve_lower_transpose<F: Scalar>(l: &Matrix<F>, b: &[F]) -> Vec<F> {
    let n = l.rows();
    let mut x = vec![F::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in (i + 1)..n {
            s = s - l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}
