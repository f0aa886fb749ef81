use num_traits::{Float, Zero};

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::{inner, Real, Scalar};
use crate::tol::Tolerances;

/// A dense self-adjoint operator on an n-dimensional space.
///
/// Construction checks the Hermitian tolerance and then stores the exact
/// average `(M + M*)/2`, so the stored entries are self-adjoint bit for bit
/// and the diagonal is real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<S> {
    matrix: DenseMatrix<S>,
}

impl<S: Scalar> HermitianOperator<S> {
    pub fn new(matrix: DenseMatrix<S>, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        if !matrix.data().iter().all(|x| x.finite()) {
            return Err(Error::NonFinite);
        }
        let limit: S::Real = Tolerances::get(tol.hermitian);
        let n = matrix.rows();
        for i in 0..n {
            for j in i..n {
                let deviation = (matrix[(i, j)] - matrix[(j, i)].conj()).modulus();
                if deviation.is_nan() || deviation > limit {
                    return Err(Error::NonHermitianInput {
                        row: i,
                        col: j,
                        deviation: deviation.to_f64_lossy(),
                    });
                }
            }
        }
        Ok(Self::symmetrized(matrix))
    }

    /// Builds the operator from a matrix already known to be Hermitian up to rounding.
    pub(crate) fn symmetrized(matrix: DenseMatrix<S>) -> Self {
        let n = matrix.rows();
        let half = crate::scalar::real::<S::Real>(0.5);
        let m = DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                S::from_real(matrix[(i, i)].re())
            } else {
                (matrix[(i, j)] + matrix[(j, i)].conj()).scale(half)
            }
        });
        Self { matrix: m }
    }

    /// Builds the operator from its upper triangle, mirroring conjugates below.
    pub(crate) fn from_upper(n: usize, mut upper: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::from_real(upper(i, i).re());
            for j in i + 1..n {
                let v = upper(i, j);
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
        Self { matrix: m }
    }

    /// `V diag(values) V*`.
    pub fn from_spectral(values: &[S::Real], vectors: &DenseMatrix<S>) -> Self {
        let n = vectors.rows();
        debug_assert_eq!(values.len(), vectors.cols());
        Self::from_upper(n, |i, j| {
            let mut acc = S::zero();
            for (k, &lambda) in values.iter().enumerate() {
                acc += (vectors[(i, k)] * vectors[(j, k)].conj()).scale(lambda);
            }
            acc
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DenseMatrix::identity(n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            matrix: DenseMatrix::zeros(n, n),
        }
    }

    pub fn from_diagonal(diag: &[S::Real]) -> Self {
        Self {
            matrix: DenseMatrix::from_diagonal(diag),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &DenseMatrix<S> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix<S> {
        self.matrix
    }

    pub fn trace(&self) -> S::Real {
        (0..self.dim()).fold(S::Real::zero(), |acc, i| acc + self.matrix[(i, i)].re())
    }

    /// `⟨Hx, x⟩`, which is real for Hermitian `H`.
    pub fn quadratic_form(&self, x: &[S]) -> Result<S::Real> {
        let hx = self.matrix.mul_vec(x)?;
        Ok(inner(&hx, x).re())
    }

    pub fn apply(&self, x: &[S]) -> Result<Vec<S>> {
        self.matrix.mul_vec(x)
    }

    pub fn max_abs_diff(&self, other: &Self) -> S::Real {
        self.matrix.max_abs_diff(&other.matrix)
    }

    pub fn diagonal(&self) -> Vec<S::Real> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re()).collect()
    }

    /// `U* H U`.
    pub fn conjugate_by(&self, u: &DenseMatrix<S>) -> Result<Self> {
        let m = u.adjoint().mul(&self.matrix)?.mul(u)?;
        Ok(Self::symmetrized(m))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let n = self.dim();
        Ok(Self::from_upper(n, |i, j| {
            self.matrix[(i, j)] + other.matrix[(i, j)]
        }))
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut DenseMatrix<S> {
        &mut self.matrix
    }
}

/// Largest modulus among real values; used as a scale for relative checks.
pub(crate) fn spectral_scale<R: Real>(values: &[R]) -> R {
    values
        .iter()
        .fold(R::zero(), |m, &v| Float::max(m, Float::abs(v)))
}
