//! Numerical tolerances used across the crate, gathered in one record.

use serde::{Deserialize, Serialize};

use crate::scalar::{real, Real};

/// Every threshold the library compares against.
///
/// Values are stored as `f64`. When read through [`Tolerances::get`] they are
/// floored at 32 ulps of the target real type, which leaves f64 defaults
/// untouched and keeps f32 instantiations meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Absolute per-entry deviation allowed between a matrix and its adjoint.
    pub hermitian: f64,
    /// Jacobi stops once every off-diagonal entry is below this times ‖H‖_F.
    pub jacobi_offdiag: f64,
    pub jacobi_max_sweeps: usize,
    /// Components below this modulus are skipped when fixing eigenvector phases.
    pub phase_threshold: f64,
    /// Negative powers need λ_min > this · λ_max.
    pub definiteness: f64,
    /// Relative trace mismatch accepted by diagonal equalization.
    pub trace_match: f64,
    /// Unit-vector check for the redundancy function argument.
    pub unit_norm: f64,
    /// ℛ⁺ − ℛ⁻ ≤ uniform · ℛ⁺ counts as uniform redundancy.
    pub uniform: f64,
    /// Max-entry distance between normalized frame operators for equivalence.
    pub equivalence: f64,
    /// Relative residual allowed on polarization probes.
    pub polarization: f64,
    /// Smallest eigenvalue must exceed this for strict positivity.
    pub positivity: f64,
    /// |trace − round(trace)| allowed for an integer trace.
    pub integer_trace: f64,
    /// Allowed error on Σλ = N for spectrum requests.
    pub spectrum_sum: f64,
    /// Slack on the feasibility inequalities of redundancy requests.
    pub feasibility: f64,
    /// Allowed error on r1 + r2 = N in dimension two.
    pub planar_sum: f64,
    /// Rank threshold override. `None` uses max(rows, cols)·ε·(largest column norm).
    pub rank: Option<f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            jacobi_offdiag: 1e-14,
            jacobi_max_sweeps: 100,
            phase_threshold: 1e-12,
            definiteness: 1e-10,
            trace_match: 1e-9,
            unit_norm: 1e-9,
            uniform: 1e-9,
            equivalence: 1e-9,
            polarization: 1e-8,
            positivity: 1e-9,
            integer_trace: 1e-6,
            spectrum_sum: 1e-9,
            feasibility: 1e-12,
            planar_sum: 1e-9,
            rank: None,
        }
    }
}

impl Tolerances {
    /// Reads `value` as a threshold for the real type `R`.
    pub fn get<R: Real>(value: f64) -> R {
        let floor = R::epsilon() * real::<R>(32.0);
        real::<R>(value).max(floor)
    }

    /// Sets a field by name, as used by `--tol key=value` on the command line.
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), String> {
        if !value.is_finite() || value < 0.0 {
            return Err(format!("tolerance {key} must be finite and non-negative"));
        }
        let slot = match key {
            "hermitian" => &mut self.hermitian,
            "jacobi_offdiag" => &mut self.jacobi_offdiag,
            "phase_threshold" => &mut self.phase_threshold,
            "definiteness" => &mut self.definiteness,
            "trace_match" => &mut self.trace_match,
            "unit_norm" => &mut self.unit_norm,
            "uniform" => &mut self.uniform,
            "equivalence" => &mut self.equivalence,
            "polarization" => &mut self.polarization,
            "positivity" => &mut self.positivity,
            "integer_trace" => &mut self.integer_trace,
            "spectrum_sum" => &mut self.spectrum_sum,
            "feasibility" => &mut self.feasibility,
            "planar_sum" => &mut self.planar_sum,
            "rank" => {
                self.rank = Some(value);
                return Ok(());
            }
            "jacobi_max_sweeps" => {
                self.jacobi_max_sweeps = value as usize;
                return Ok(());
            }
            _ => return Err(format!("unknown tolerance `{key}`")),
        };
        *slot = value;
        Ok(())
    }
}
