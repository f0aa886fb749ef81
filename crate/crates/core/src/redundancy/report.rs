use num_traits::{Float, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framecore::Frame;
use crate::numkernel::hermitian_eigen;
use crate::scalar::{inner, norm, norm_sq, Real, Scalar};
use crate::tol::Tolerances;

/// Upper and lower redundancy of a frame, with the full spectrum they come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RedundancyReport<R> {
    pub lower: R,
    pub upper: R,
    /// Eigenvalues of the normalized frame operator, ascending.
    pub spectrum: Vec<R>,
    pub uniform: bool,
    pub nonzero_count: usize,
}

/// `ℛ_Φ(x) = Σ ‖P_{⟨φ_i⟩} x‖²` for a unit vector `x`.
///
/// Only nonzero vectors contribute. The value equals `⟨S̃x, x⟩`.
pub fn redundancy_at<S: Scalar>(f: &Frame<S>, x: &[S], tol: &Tolerances) -> Result<S::Real> {
    if x.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: x.len(),
        });
    }
    let nrm = norm(x);
    let limit: S::Real = Tolerances::get(tol.unit_norm);
    if nrm.is_nan() || (nrm - S::Real::one()).abs() > limit {
        return Err(Error::NotUnitVector {
            norm: nrm.to_f64_lossy(),
        });
    }
    Ok(projection_sum(f, x))
}

/// The redundancy function extended quadratically to all of the space:
/// `0` at the origin, `‖x‖² ℛ_Φ(x/‖x‖)` elsewhere.
pub fn quadratic_extension<S: Scalar>(f: &Frame<S>, x: &[S]) -> Result<S::Real> {
    if x.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: x.len(),
        });
    }
    Ok(projection_sum(f, x))
}

fn projection_sum<S: Scalar>(f: &Frame<S>, x: &[S]) -> S::Real {
    f.vectors().iter().fold(S::Real::zero(), |acc, v| {
        let nv = norm_sq(v);
        if nv > S::Real::zero() {
            acc + inner(x, v).abs_sq() / nv
        } else {
            acc
        }
    })
}

/// ℛ⁻ and ℛ⁺ as the extreme eigenvalues of the normalized frame operator.
pub fn redundancy_report<S: Scalar>(
    f: &Frame<S>,
    tol: &Tolerances,
) -> Result<RedundancyReport<S::Real>> {
    f.require_spanning()?;
    let eig = hermitian_eigen(&f.normalized_frame_operator(), tol)?;
    let lower = eig.min();
    let upper = eig.max();
    let rel: S::Real = Tolerances::get(tol.uniform);
    Ok(RedundancyReport {
        lower,
        upper,
        uniform: upper - lower <= rel * upper,
        spectrum: eig.values,
        nonzero_count: f.nonzero_count(),
    })
}

/// Equal redundancy functions, decided on the normalized frame operators.
///
/// Frames with different numbers of nonzero vectors are never equivalent.
pub fn equivalent<S: Scalar>(f: &Frame<S>, g: &Frame<S>, tol: &Tolerances) -> Result<bool> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    if f.nonzero_count() != g.nonzero_count() {
        return Ok(false);
    }
    let gap = f
        .normalized_frame_operator()
        .max_abs_diff(&g.normalized_frame_operator());
    Ok(gap <= Tolerances::get(tol.equivalence))
}

impl<R: Real> RedundancyReport<R> {
    /// Mean of ℛ over the sphere, `trace(S̃)/n`.
    pub fn mean(&self) -> R {
        let sum = self.spectrum.iter().fold(R::zero(), |a, &b| a + b);
        sum / R::from_usize_lossy(self.spectrum.len())
    }
}
