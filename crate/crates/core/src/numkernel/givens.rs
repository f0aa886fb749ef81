use num_traits::{Float, One, Zero};

use super::hermitian::HermitianOperator;
use super::matrix::{DenseMatrix, PlaneUnitary};
use crate::error::{Error, Result};
use crate::scalar::{real, Real, Scalar};
use crate::tol::Tolerances;

/// One step of diagonal equalization, recorded for audit and replay.
///
/// The step applies the plane unitary with columns
/// `q_i = cos θ · e_i + sin θ · phase · e_j` and
/// `q_j = −sin θ · e_i + cos θ · phase · e_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneRotation<S: Scalar> {
    pub i: usize,
    pub j: usize,
    pub angle: S::Real,
    pub phase: S,
}

impl<S: Scalar> PlaneRotation<S> {
    pub fn unitary(&self) -> PlaneUnitary<S> {
        let (c, s) = (self.angle.cos(), self.angle.sin());
        PlaneUnitary {
            p: self.i,
            q: self.j,
            pp: S::from_real(c),
            pq: S::from_real(-s),
            qp: self.phase.scale(s),
            qq: self.phase.scale(c),
        }
    }
}

/// The product `Q = Q₁Q₂⋯Q_k` of a rotation log, so that the equalized
/// operator equals `Q* G Q`.
pub fn rotations_to_unitary<S: Scalar>(dim: usize, log: &[PlaneRotation<S>]) -> DenseMatrix<S> {
    let mut q = DenseMatrix::identity(dim);
    for r in log {
        q.right_multiply(&r.unitary());
    }
    q
}

/// Rotates `g` into `Q* g Q` with every diagonal entry equal to `target`.
///
/// Each step pairs the smallest diagonal entry below the target with the
/// largest one above it (lowest index on ties) and rotates in their plane so
/// that the smaller one lands exactly on the target. A fixed entry is never
/// touched again, so at most `dim − 1` rotations are applied. Requires
/// `trace(g) = target · dim`.
pub fn givens_equalize_diagonal<S: Scalar>(
    g: &HermitianOperator<S>,
    target: S::Real,
    tol: &Tolerances,
) -> Result<(HermitianOperator<S>, Vec<PlaneRotation<S>>)> {
    let n = g.dim();
    let trace = g.trace();
    let expected = target * S::Real::from_usize_lossy(n);
    let rel: S::Real = Tolerances::get(tol.trace_match);
    let allowed = if expected == S::Real::zero() {
        rel
    } else {
        rel * expected.abs()
    };
    if (trace - expected).is_nan() || (trace - expected).abs() > allowed {
        return Err(Error::TraceMismatch {
            trace: trace.to_f64_lossy(),
            expected: expected.to_f64_lossy(),
        });
    }

    let mut out = g.clone();
    let mut log = Vec::new();
    let mut fixed = vec![false; n];
    let diag_scale = g
        .diagonal()
        .iter()
        .fold(target.abs(), |m, d| m.max(d.abs()));
    let settle = S::Real::epsilon() * real::<S::Real>(16.0) * diag_scale.max(S::Real::one());

    loop {
        let m = out.matrix();
        let mut low: Option<(usize, S::Real)> = None;
        let mut high: Option<(usize, S::Real)> = None;
        for k in (0..n).filter(|&k| !fixed[k]) {
            let d = m[(k, k)].re();
            if d < target - settle && low.is_none_or(|(_, best)| d < best) {
                low = Some((k, d));
            }
            if d > target + settle && high.is_none_or(|(_, best)| d > best) {
                high = Some((k, d));
            }
        }
        let (Some((i, a)), Some((j, c))) = (low, high) else {
            break;
        };
        let b = m[(i, j)];
        let rotation = PlaneRotation {
            i,
            j,
            angle: angle_to_target(a, c, b.modulus(), target),
            phase: b.phase().conj(),
        };
        let mm = out.matrix_mut();
        mm.congruence(&rotation.unitary());
        mm[(i, i)] = S::from_real(target);
        fixed[i] = true;
        log.push(rotation);
    }
    Ok((HermitianOperator::symmetrized(out.into_matrix()), log))
}

/// Smallest θ in [0, π/2] with `a cos²θ + c sin²θ + 2|b| sinθ cosθ = target`,
/// given `a < target < c`.
fn angle_to_target<R: Real>(a: R, c: R, b_abs: R, target: R) -> R {
    let two = real::<R>(2.0);
    let half_gap = (a - c) / two;
    let radius = half_gap.hypot(b_abs);
    let phi = b_abs.atan2(half_gap);
    let k = ((target - (a + c) / two) / radius)
        .max(-R::one())
        .min(R::one());
    (phi - k.acos()) / two
}
