use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::framecore::Frame;
use crate::numkernel::{condition_number, operator_power, DenseMatrix, Power};
use crate::scalar::{Real, Scalar};
use crate::tol::Tolerances;

use super::report::redundancy_report;

/// How far a value sits inside the interval `[κ⁻² r, κ² r]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slack<R> {
    /// `value − κ⁻² r`.
    pub below: R,
    /// `κ² r − value`.
    pub above: R,
}

impl<R: Real> Slack<R> {
    fn new(value: R, reference: R, kappa_sq: R) -> Self {
        Self {
            below: value - reference / kappa_sq,
            above: kappa_sq * reference - value,
        }
    }

    pub fn min(&self) -> R {
        self.below.min(self.above)
    }
}

/// Redundancies of a frame and of its image under `T`, with the slack of
/// the bound `κ(T)⁻² ℛ± ≤ ℛ±(TΦ) ≤ κ(T)² ℛ±`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichMargins<R> {
    pub kappa: R,
    pub original: (R, R),
    pub transformed: (R, R),
    pub lower: Slack<R>,
    pub upper: Slack<R>,
}

impl<R: Real> SandwichMargins<R> {
    /// The smallest of the four slacks; nonnegative when the bound holds.
    pub fn min_margin(&self) -> R {
        self.lower.min().min(self.upper.min())
    }
}

pub fn conditioning_sandwich<S: Scalar>(
    f: &Frame<S>,
    t: &DenseMatrix<S>,
    tol: &Tolerances,
) -> Result<SandwichMargins<S::Real>> {
    f.require_spanning()?;
    f.require_zero_free()?;
    let kappa = condition_number(t, tol)?;
    let image = f.apply_operator(t)?;
    let before = redundancy_report(f, tol)?;
    let after = redundancy_report(&image, tol)?;
    let k2 = kappa * kappa;
    Ok(SandwichMargins {
        kappa,
        original: (before.lower, before.upper),
        transformed: (after.lower, after.upper),
        lower: Slack::new(after.lower, before.lower, k2),
        upper: Slack::new(after.upper, before.upper, k2),
    })
}

/// The sandwich for the canonical dual, which is the image under `T = S⁻¹`.
pub fn canonical_dual_sandwich<S: Scalar>(
    f: &Frame<S>,
    tol: &Tolerances,
) -> Result<SandwichMargins<S::Real>> {
    f.require_spanning()?;
    let inverse = operator_power(&f.frame_operator(), Power::Inverse, tol)?;
    conditioning_sandwich(f, inverse.matrix(), tol)
}
