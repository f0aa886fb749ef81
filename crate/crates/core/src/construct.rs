//! Unit-norm frames with a prescribed normalized frame operator spectrum or
//! prescribed redundancy pair.

use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::framecore::Frame;
use crate::numkernel::{
    givens_equalize_diagonal, rotations_to_unitary, HermitianOperator, PlaneRotation,
};
use crate::scalar::{Real, Scalar};
use crate::tol::Tolerances;

/// A target spectrum `λ₁ ≤ … ≤ λₙ` together with the vector count `N = Σλ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSpec<R> {
    eigenvalues: Vec<R>,
    vector_count: usize,
}

impl<R: Real> SpectrumSpec<R> {
    /// Sorts `eigenvalues` ascending and checks positivity, `N ≥ n` and
    /// `Σλ = N` within `spectrum_sum · max(1, N)`.
    pub fn new(mut eigenvalues: Vec<R>, vector_count: usize, tol: &Tolerances) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidSpectrum("the spectrum is empty".into()));
        }
        if let Some(bad) = eigenvalues
            .iter()
            .find(|l| !(Float::is_finite(**l) && **l > R::zero()))
        {
            return Err(Error::InvalidSpectrum(format!(
                "eigenvalue {bad} is not strictly positive"
            )));
        }
        let n = eigenvalues.len();
        if vector_count < n {
            return Err(Error::InvalidSpectrum(format!(
                "vector count {vector_count} is below the dimension {n}"
            )));
        }
        let sum = eigenvalues.iter().fold(R::zero(), |a, &b| a + b);
        let count = R::from_usize_lossy(vector_count);
        let allowed = Tolerances::get::<R>(tol.spectrum_sum) * count.max(R::one());
        if (sum - count).is_nan() || (sum - count).abs() > allowed {
            return Err(Error::InvalidSpectrum(format!(
                "eigenvalues sum to {sum}, expected {vector_count}"
            )));
        }
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        Ok(Self {
            eigenvalues,
            vector_count,
        })
    }

    pub fn eigenvalues(&self) -> &[R] {
        &self.eigenvalues
    }

    pub fn vector_count(&self) -> usize {
        self.vector_count
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// A request for a unit-norm frame with `ℛ⁻ = r1` and `ℛ⁺ = r2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedundancyRequest<R> {
    pub dim: usize,
    pub vector_count: usize,
    pub r1: R,
    pub r2: R,
}

impl<R: Real> RedundancyRequest<R> {
    pub fn new(dim: usize, vector_count: usize, r1: R, r2: R) -> Self {
        Self {
            dim,
            vector_count,
            r1,
            r2,
        }
    }

    /// The spectrum `(r1, m, …, m, r2)` with constant middle fill
    /// `m = (N − r1 − r2)/(n − 2)`, after checking feasibility.
    ///
    /// Feasibility needs `r1 ∈ (0, N/n]`, `r2 ∈ [N/n, N)`,
    /// `(n−1)·r1 + r2 ≤ N` and `N ≤ r1 + (n−1)·r2`; in dimension two the
    /// last pair collapses to `r1 + r2 = N`.
    pub fn spectrum(&self, tol: &Tolerances) -> Result<Vec<R>> {
        let (n, big_n) = (self.dim, self.vector_count);
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "dimension must be at least 2, got {n}"
            )));
        }
        if big_n < n {
            return Err(Error::InvalidParameter(format!(
                "vector count {big_n} is below the dimension {n}"
            )));
        }
        let (r1, r2) = (self.r1, self.r2);
        if !(Float::is_finite(r1) && Float::is_finite(r2)) {
            return Err(Error::NonFinite);
        }
        let nr = R::from_usize_lossy(n);
        let count = R::from_usize_lossy(big_n);
        let mean = count / nr;
        let slack: R = Tolerances::get(tol.feasibility);
        if !(r1 > R::zero() && r1 <= mean + slack) {
            return Err(Error::InfeasibleRequest(format!(
                "r1 = {r1} must lie in (0, N/n] = (0, {mean}]"
            )));
        }
        if !(r2 >= mean - slack && r2 < count) {
            return Err(Error::InfeasibleRequest(format!(
                "r2 = {r2} must lie in [N/n, N) = [{mean}, {big_n})"
            )));
        }
        let lhs = (nr - R::one()) * r1 + r2;
        if lhs > count + slack {
            return Err(Error::InfeasibleRequest(format!(
                "(n-1)*r1 + r2 = {lhs} exceeds N = {big_n}"
            )));
        }
        if n == 2 {
            let sum = r1 + r2;
            if (sum - count).abs() > Tolerances::get::<R>(tol.planar_sum) {
                return Err(Error::InfeasibleRequest(format!(
                    "in dimension 2 the redundancies must satisfy r1 + r2 = N, got {sum} vs {big_n}"
                )));
            }
            return Ok(vec![r1, r2]);
        }
        let rhs = r1 + (nr - R::one()) * r2;
        if count > rhs + slack {
            return Err(Error::InfeasibleRequest(format!(
                "N = {big_n} exceeds r1 + (n-1)*r2 = {rhs}, so no middle eigenvalues in [r1, r2] exist"
            )));
        }
        let m = ((count - r1 - r2) / (nr - R::from_usize_lossy(2)))
            .max(r1)
            .min(r2);
        let mut values = vec![m; n];
        values[0] = r1;
        values[n - 1] = r2;
        Ok(values)
    }
}

/// A unit-norm frame of N vectors whose frame operator has the spectrum of `spec`.
///
/// The N×N matrix `D = diag(λ₁, …, λₙ, 0, …, 0)` is rotated to `G = Q* D Q`
/// with unit diagonal. `G` is then the Gram matrix of the columns of the
/// first n rows of `D^{1/2} Q`, which are unit vectors whose frame operator
/// is `diag(λ)`.
pub fn frame_with_spectrum<S: Scalar>(
    spec: &SpectrumSpec<S::Real>,
    tol: &Tolerances,
) -> Result<Frame<S>> {
    frame_with_spectrum_logged(spec, tol).map(|(f, _)| f)
}

/// [`frame_with_spectrum`] together with the rotation log of the equalization step.
pub fn frame_with_spectrum_logged<S: Scalar>(
    spec: &SpectrumSpec<S::Real>,
    tol: &Tolerances,
) -> Result<(Frame<S>, Vec<PlaneRotation<S>>)> {
    let n = spec.dim();
    let big_n = spec.vector_count();
    let mut padded = spec.eigenvalues().to_vec();
    padded.resize(big_n, S::Real::zero());
    let d = HermitianOperator::<S>::from_diagonal(&padded);
    let (_, log) = givens_equalize_diagonal(&d, S::Real::one(), tol)?;
    let q = rotations_to_unitary(big_n, &log);
    let roots: Vec<S::Real> = spec.eigenvalues().iter().map(|l| l.sqrt()).collect();
    let vectors = (0..big_n)
        .map(|col| (0..n).map(|r| q[(r, col)].scale(roots[r])).collect())
        .collect();
    Ok((Frame::new(n, vectors)?, log))
}

/// A unit-norm frame with `ℛ⁻ = r1` and `ℛ⁺ = r2`.
pub fn frame_with_redundancies<S: Scalar>(
    req: &RedundancyRequest<S::Real>,
    tol: &Tolerances,
) -> Result<Frame<S>> {
    frame_with_redundancies_logged(req, tol).map(|(f, _)| f)
}

pub fn frame_with_redundancies_logged<S: Scalar>(
    req: &RedundancyRequest<S::Real>,
    tol: &Tolerances,
) -> Result<(Frame<S>, Vec<PlaneRotation<S>>)> {
    let values = req.spectrum(tol)?;
    let spec = SpectrumSpec::new(values, req.vector_count, tol).map_err(|e| match e {
        Error::InvalidSpectrum(msg) => Error::InfeasibleRequest(msg),
        other => other,
    })?;
    frame_with_spectrum_logged(&spec, tol)
}

/// A unit-norm tight frame of N vectors in dimension n, `ℛ± = N/n`.
pub fn tight_witness<S: Scalar>(n: usize, count: usize, tol: &Tolerances) -> Result<Frame<S>> {
    tight_witness_logged(n, count, tol).map(|(f, _)| f)
}

pub fn tight_witness_logged<S: Scalar>(
    n: usize,
    count: usize,
    tol: &Tolerances,
) -> Result<(Frame<S>, Vec<PlaneRotation<S>>)> {
    if n < 1 || count < n {
        return Err(Error::InvalidParameter(format!(
            "need N ≥ n ≥ 1, got n = {n}, N = {count}"
        )));
    }
    let level = S::Real::from_usize_lossy(count) / S::Real::from_usize_lossy(n);
    let spec = SpectrumSpec::new(vec![level; n], count, tol)?;
    frame_with_spectrum_logged(&spec, tol)
}
