use std::ops::{Index, IndexMut};

use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::scalar::{inner, norm, Scalar};

/// Row-major dense matrix over ℝ or ℂ.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if !data.iter().all(|x| x.finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::from_row_major(rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Result<Self> {
        for c in columns {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i]))
    }

    pub fn from_diagonal(diag: &[S::Real]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                S::from_real(diag[i])
            } else {
                S::zero()
            }
        })
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

    /// Entries in row-major order.
    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == S::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs[(k, j)];
                    out[(i, j)] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    pub fn scaled(&self, s: S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn max_abs(&self) -> S::Real {
        self.data
            .iter()
            .fold(S::Real::zero(), |m, x| m.max(x.modulus()))
    }

    /// Largest entrywise modulus of `self − other`; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> S::Real {
        if self.rows != other.rows || self.cols != other.cols {
            return S::Real::infinity();
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(S::Real::zero(), |m, (&a, &b)| m.max((a - b).modulus()))
    }

    pub fn frobenius_norm(&self) -> S::Real {
        norm(&self.data)
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Restricts to the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])])
    }

    /// `self ← W* · self · W` for a unitary acting on one coordinate plane.
    pub fn congruence(&mut self, w: &PlaneUnitary<S>) {
        debug_assert!(self.is_square());
        self.right_multiply(w);
        let (p, q) = (w.p, w.q);
        for k in 0..self.cols {
            let ap = self[(p, k)];
            let aq = self[(q, k)];
            self[(p, k)] = w.pp.conj() * ap + w.qp.conj() * aq;
            self[(q, k)] = w.pq.conj() * ap + w.qq.conj() * aq;
        }
    }

    /// `self ← self · W`.
    pub fn right_multiply(&mut self, w: &PlaneUnitary<S>) {
        let (p, q) = (w.p, w.q);
        for k in 0..self.rows {
            let ap = self[(k, p)];
            let aq = self[(k, q)];
            self[(k, p)] = ap * w.pp + aq * w.qp;
            self[(k, q)] = ap * w.pq + aq * w.qq;
        }
    }

    /// Orthonormalizes the columns in place with two passes of modified Gram-Schmidt.
    ///
    /// Returns `false` if a column became numerically dependent on its predecessors.
    pub fn orthonormalize_columns(&mut self) -> bool {
        let eps = S::Real::epsilon() * crate::scalar::real::<S::Real>(1e3);
        let mut cols = self.columns();
        for j in 0..cols.len() {
            let original = norm(&cols[j]);
            for _pass in 0..2 {
                for i in 0..j {
                    let (done, rest) = cols.split_at_mut(j);
                    let proj = inner(&rest[0], &done[i]);
                    for (x, &e) in rest[0].iter_mut().zip(&done[i]) {
                        *x -= proj * e;
                    }
                }
            }
            let nrm = norm(&cols[j]);
            if nrm <= eps * original || nrm == S::Real::zero() {
                return false;
            }
            for x in cols[j].iter_mut() {
                *x = x.scale(nrm.recip());
            }
        }
        *self = Self::from_fn(self.rows, self.cols, |i, j| cols[j][i]);
        true
    }
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

/// A unitary that differs from the identity only in rows and columns `p`, `q`.
///
/// The 2×2 block is `[[pp, pq], [qp, qq]]` indexed as `W[(p,p)]`, `W[(p,q)]`, ...
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneUnitary<S> {
    pub p: usize,
    pub q: usize,
    pub pp: S,
    pub pq: S,
    pub qp: S,
    pub qq: S,
}

impl<S: Scalar> PlaneUnitary<S> {
    pub fn to_matrix(&self, n: usize) -> DenseMatrix<S> {
        let mut m = DenseMatrix::identity(n);
        m[(self.p, self.p)] = self.pp;
        m[(self.p, self.q)] = self.pq;
        m[(self.q, self.p)] = self.qp;
        m[(self.q, self.q)] = self.qq;
        m
    }
}
