use num_traits::{Float, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{
    hermitian_eigen, operator_power, rank, DenseMatrix, HermitianOperator, Power,
};
use crate::scalar::{inner, norm_sq, Scalar};
use crate::tol::Tolerances;

/// An ordered list of N vectors in an n-dimensional space.
///
/// Zero vectors and non-spanning lists are representable; the spanning flag
/// is computed once on construction with the default rank tolerance, and
/// operations that need a genuine frame check it.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<S: Scalar> {
    dim: usize,
    vectors: Vec<Vec<S>>,
    rank: usize,
}

/// Optimal frame bounds: the extreme eigenvalues of the frame operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds<R> {
    pub lower: R,
    pub upper: R,
}

impl<S: Scalar> Frame<S> {
    pub fn new(dim: usize, vectors: Vec<Vec<S>>) -> Result<Self> {
        if vectors.is_empty() || dim == 0 {
            return Err(Error::EmptyInput);
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if !v.iter().all(|x| x.finite()) {
                return Err(Error::NonFinite);
            }
        }
        let rank = rank(&DenseMatrix::from_columns(dim, &vectors)?, None);
        Ok(Self { dim, vectors, rank })
    }

    /// The standard orthonormal basis.
    pub fn standard_basis(dim: usize) -> Result<Self> {
        Self::new(dim, (0..dim).map(|i| unit_vector(dim, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors N.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<S>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[S] {
        &self.vectors[i]
    }

    pub fn into_vectors(self) -> Vec<Vec<S>> {
        self.vectors
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_spanning(&self) -> bool {
        self.rank == self.dim
    }

    pub fn require_spanning(&self) -> Result<()> {
        if self.is_spanning() {
            Ok(())
        } else {
            Err(Error::NotAFrame {
                rank: self.rank,
                dim: self.dim,
            })
        }
    }

    pub fn is_zero_vector(&self, i: usize) -> bool {
        self.vectors[i].iter().all(|x| *x == S::zero())
    }

    pub fn zero_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.is_zero_vector(i))
            .collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.len() - self.zero_indices().len()
    }

    pub fn require_zero_free(&self) -> Result<()> {
        match self.zero_indices().first() {
            Some(&index) => Err(Error::ZeroVectorPresent { index }),
            None => Ok(()),
        }
    }

    pub fn norms_sq(&self) -> Vec<S::Real> {
        self.vectors.iter().map(|v| norm_sq(v)).collect()
    }

    /// The n×N synthesis matrix with the frame vectors as columns.
    pub fn synthesis_matrix(&self) -> DenseMatrix<S> {
        DenseMatrix::from_fn(self.dim, self.len(), |i, j| self.vectors[j][i])
    }

    /// `(⟨x, φ_i⟩)_i`.
    pub fn analysis(&self, x: &[S]) -> Result<Vec<S>> {
        self.check_dim(x.len())?;
        Ok(self.vectors.iter().map(|v| inner(x, v)).collect())
    }

    /// `Σ c_i φ_i`.
    pub fn synthesis(&self, c: &[S]) -> Result<Vec<S>> {
        if c.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: c.len(),
            });
        }
        let mut out = vec![S::zero(); self.dim];
        for (&ci, v) in c.iter().zip(&self.vectors) {
            for (o, &vi) in out.iter_mut().zip(v) {
                *o += ci * vi;
            }
        }
        Ok(out)
    }

    /// `S = Σ φ_i φ_i*`.
    pub fn frame_operator(&self) -> HermitianOperator<S> {
        self.weighted_outer_sum(|_| Some(S::Real::one()))
    }

    /// `S̃ = Σ φ_i φ_i* / ‖φ_i‖²` over the nonzero vectors: the sum of the
    /// orthogonal projections onto their spans.
    pub fn normalized_frame_operator(&self) -> HermitianOperator<S> {
        let norms = self.norms_sq();
        self.weighted_outer_sum(|i| (norms[i] > S::Real::zero()).then(|| norms[i].recip()))
    }

    fn weighted_outer_sum(
        &self,
        weight: impl Fn(usize) -> Option<S::Real>,
    ) -> HermitianOperator<S> {
        let weights: Vec<Option<S::Real>> = (0..self.len()).map(weight).collect();
        HermitianOperator::from_upper(self.dim, |r, c| {
            let mut acc = S::zero();
            for (v, w) in self.vectors.iter().zip(&weights) {
                if let Some(w) = *w {
                    acc += (v[r] * v[c].conj()).scale(w);
                }
            }
            acc
        })
    }

    pub fn frame_bounds(&self, tol: &Tolerances) -> Result<FrameBounds<S::Real>> {
        self.require_spanning()?;
        let eig = hermitian_eigen(&self.frame_operator(), tol)?;
        Ok(FrameBounds {
            lower: eig.min(),
            upper: eig.max(),
        })
    }

    /// `(S⁻¹ φ_i)_i`.
    pub fn canonical_dual(&self, tol: &Tolerances) -> Result<Self> {
        self.require_spanning()?;
        let inverse = operator_power(&self.frame_operator(), Power::Inverse, tol)?;
        self.apply_operator(inverse.matrix())
    }

    /// `(T φ_i)_i`; the spanning flag is recomputed, so a singular `T` may clear it.
    pub fn apply_operator(&self, t: &DenseMatrix<S>) -> Result<Self> {
        if t.rows() != self.dim || t.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: t.rows().max(t.cols()),
            });
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| t.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, vectors)
    }

    /// `(c_i φ_i)_i`.
    pub fn scale_vectors(&self, c: &[S]) -> Result<Self> {
        if c.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: c.len(),
            });
        }
        let vectors = self
            .vectors
            .iter()
            .zip(c)
            .map(|(v, &ci)| v.iter().map(|&x| x * ci).collect())
            .collect();
        Self::new(self.dim, vectors)
    }

    /// `(φ_{π(i)})_i` for a permutation `π` of `0..N`.
    pub fn permute(&self, pi: &[usize]) -> Result<Self> {
        if pi.len() != self.len() {
            return Err(Error::InvalidPermutation);
        }
        let mut seen = vec![false; pi.len()];
        for &p in pi {
            if p >= pi.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation);
            }
        }
        Ok(Self {
            dim: self.dim,
            vectors: pi.iter().map(|&p| self.vectors[p].clone()).collect(),
            rank: self.rank,
        })
    }

    /// Every nonzero vector divided by its norm; zero vectors stay zero.
    pub fn normalized(&self) -> Self {
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                let n = norm_sq(v);
                if n > S::Real::zero() {
                    let inv = n.sqrt().recip();
                    v.iter().map(|&x| x.scale(inv)).collect()
                } else {
                    v.clone()
                }
            })
            .collect();
        Self {
            dim: self.dim,
            vectors,
            rank: self.rank,
        }
    }

    /// The concatenated list `self ∪ other`.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let mut vectors = self.vectors.clone();
        vectors.extend(other.vectors.iter().cloned());
        Self::new(self.dim, vectors)
    }

    /// The vectors at `indices`, in order. May be non-spanning.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::InvalidParameter(format!("index {bad} out of range")));
        }
        Self::new(
            self.dim,
            indices.iter().map(|&i| self.vectors[i].clone()).collect(),
        )
    }

    /// Largest entrywise modulus of the difference, vector by vector.
    pub fn max_abs_diff(&self, other: &Self) -> S::Real {
        if self.dim != other.dim || self.len() != other.len() {
            return S::Real::infinity();
        }
        self.vectors
            .iter()
            .zip(&other.vectors)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| (x - y).modulus()))
            .fold(S::Real::zero(), Float::max)
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: len,
            })
        }
    }
}

pub(crate) fn unit_vector<S: Scalar>(dim: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); dim];
    v[i] = S::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn e(dim: usize, i: usize) -> Vec<f64> {
        unit_vector(dim, i)
    }

    #[test]
    fn construction_and_spanning_flag() {
        let onb = Frame::<f64>::standard_basis(3).unwrap();
        assert!(onb.is_spanning());
        assert_eq!(onb.len(), 3);

        let twice = Frame::new(2, vec![e(2, 0), e(2, 0)]).unwrap();
        assert!(!twice.is_spanning());

        let with_zero = Frame::new(2, vec![e(2, 0), vec![0.0, 0.0], e(2, 1)]).unwrap();
        assert!(with_zero.is_spanning());
        assert_eq!(with_zero.zero_indices(), vec![1]);
        assert_eq!(with_zero.nonzero_count(), 2);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Frame::<f64>::new(2, vec![]), Err(Error::EmptyInput));
        assert!(matches!(
            Frame::new(2, vec![vec![1.0, 0.0], vec![1.0]]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
        assert_eq!(
            Frame::new(1, vec![vec![f64::INFINITY]]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn analysis_and_synthesis() {
        let onb = Frame::<f64>::standard_basis(3).unwrap();
        assert_eq!(onb.analysis(&e(3, 0)).unwrap(), vec![1.0, 0.0, 0.0]);
        assert_eq!(onb.analysis(&[0.0; 3]).unwrap(), vec![0.0; 3]);
        assert_eq!(onb.synthesis(&[1.0; 3]).unwrap(), vec![1.0; 3]);
        assert!(onb.analysis(&[1.0]).is_err());
        assert!(onb.synthesis(&[1.0]).is_err());
    }

    #[test]
    fn complex_analysis_uses_conjugate_in_second_slot() {
        let i = Complex64::new(0.0, 1.0);
        let f = Frame::new(1, vec![vec![i]]).unwrap();
        // ⟨1, i⟩ = conj(i)
        assert_eq!(f.analysis(&[Complex64::new(1.0, 0.0)]).unwrap(), vec![-i]);
    }

    #[test]
    fn frame_operator_by_hand() {
        let f = Frame::new(2, vec![vec![2.0, 0.0], e(2, 1)]).unwrap();
        assert_eq!(
            f.frame_operator(),
            HermitianOperator::from_diagonal(&[4.0, 1.0])
        );
        assert_eq!(
            f.normalized_frame_operator(),
            HermitianOperator::identity(2)
        );
        let b = Frame::new(2, vec![e(2, 0), e(2, 0), e(2, 1)])
            .unwrap()
            .frame_bounds(&tol())
            .unwrap();
        assert_eq!((b.lower, b.upper), (1.0, 2.0));
    }

    #[test]
    fn normalized_operator_skips_zero_vectors() {
        let f = Frame::new(2, vec![vec![3.0, 4.0], vec![0.0, 0.0], e(2, 1)]).unwrap();
        let s = f.normalized_frame_operator();
        assert!((s.trace() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn canonical_dual_of_scaled_basis() {
        let f = Frame::new(2, vec![vec![2.0, 0.0], e(2, 1)]).unwrap();
        let d = f.canonical_dual(&tol()).unwrap();
        let expected = Frame::new(2, vec![vec![0.5, 0.0], e(2, 1)]).unwrap();
        assert!(d.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn non_spanning_operations_fail() {
        let f = Frame::new(2, vec![e(2, 0), e(2, 0)]).unwrap();
        assert!(matches!(
            f.frame_bounds(&tol()),
            Err(Error::NotAFrame { rank: 1, dim: 2 })
        ));
        assert!(matches!(
            f.canonical_dual(&tol()),
            Err(Error::NotAFrame { .. })
        ));
    }

    #[test]
    fn transforms() {
        let onb = Frame::<f64>::standard_basis(3).unwrap();
        let rev = onb.permute(&[2, 1, 0]).unwrap();
        assert_eq!(rev.vectors(), &[e(3, 2), e(3, 1), e(3, 0)]);
        assert_eq!(onb.permute(&[0, 0, 1]), Err(Error::InvalidPermutation));
        assert_eq!(onb.permute(&[0, 1]), Err(Error::InvalidPermutation));

        let (c, s) = (0.6, 0.8);
        let rot = DenseMatrix::from_rows(&[vec![c, -s], vec![s, c]]).unwrap();
        let rotated = Frame::<f64>::standard_basis(2)
            .unwrap()
            .apply_operator(&rot)
            .unwrap();
        assert!(rotated.is_spanning());
        assert_eq!(rotated.vector(0), &[c, s]);

        let singular = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let squashed = Frame::<f64>::standard_basis(2)
            .unwrap()
            .apply_operator(&singular)
            .unwrap();
        assert!(!squashed.is_spanning());
    }
}
