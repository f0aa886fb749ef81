use std::fmt;
use std::sync::Arc;

use num_traits::{Float, ToPrimitive, Zero};

use crate::construct::{frame_with_spectrum, SpectrumSpec};
use crate::error::{Error, Result};
use crate::framecore::random::{gaussian_vector, random_unitary, rng_from_seed};
use crate::framecore::Frame;
use crate::numkernel::{hermitian_eigen, HermitianOperator};
use crate::scalar::{norm_sq, real, Real, Scalar};
use crate::tol::Tolerances;

use super::report::quadratic_extension;

const PROBE_SEED: u64 = 0x9e37_79b9_7f4a_7c15;
const PROBE_COUNT: usize = 50;

type Evaluator<S> = dyn Fn(&[S]) -> <S as Scalar>::Real + Send + Sync;

/// A black-box real function on the space, expected to be a quadratic form.
#[derive(Clone)]
pub struct QuadraticFormOracle<S: Scalar> {
    dim: usize,
    evaluator: Arc<Evaluator<S>>,
}

impl<S: Scalar> fmt::Debug for QuadraticFormOracle<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuadraticFormOracle")
            .field("dim", &self.dim)
            .field("field", &S::FIELD)
            .finish()
    }
}

impl<S: Scalar> QuadraticFormOracle<S> {
    /// Wraps `evaluator`, checking that three fixed probe points evaluate
    /// identically on repeated calls.
    pub fn new(
        dim: usize,
        evaluator: impl Fn(&[S]) -> S::Real + Send + Sync + 'static,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "dimension must be at least 1".into(),
            ));
        }
        let oracle = Self {
            dim,
            evaluator: Arc::new(evaluator),
        };
        for probe in determinism_probes::<S>(dim) {
            let a = oracle.evaluate(&probe);
            let b = oracle.evaluate(&probe);
            if a.to_f64_lossy().to_bits() != b.to_f64_lossy().to_bits() {
                return Err(Error::NondeterministicOracle);
            }
        }
        Ok(oracle)
    }

    /// The quadratic extension of a frame's redundancy function.
    pub fn from_frame(frame: &Frame<S>) -> Self {
        let f = frame.clone();
        let dim = f.dim();
        Self::new(dim, move |x| {
            quadratic_extension(&f, x).expect("probe has frame dimension")
        })
        .expect("frame redundancy is deterministic")
    }

    /// `x ↦ ⟨Tx, x⟩`.
    pub fn from_operator(op: &HermitianOperator<S>) -> Self {
        let t = op.clone();
        Self::new(t.dim(), move |x| {
            t.quadratic_form(x).expect("probe has operator dimension")
        })
        .expect("operator form is deterministic")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn evaluate(&self, x: &[S]) -> S::Real {
        (self.evaluator)(x)
    }
}

fn determinism_probes<S: Scalar>(dim: usize) -> Vec<Vec<S>> {
    let first = (0..dim)
        .map(|i| if i == 0 { S::one() } else { S::zero() })
        .collect();
    let ones = vec![S::one(); dim];
    let alternating = (0..dim)
        .map(|i| {
            let base = if i % 2 == 0 { S::one() } else { -S::one() };
            match S::imaginary_unit() {
                Some(im) if i % 3 == 2 => im,
                _ => base,
            }
        })
        .collect();
    vec![first, ones, alternating]
}

/// Recovers the Hermitian operator `T` with `q(x) = ⟨Tx, x⟩` by polarization.
///
/// Entry `T_ij = ⟨T e_j, e_i⟩` is
/// `¼(q(e_j + e_i) − q(e_j − e_i)) + i/4 (q(e_j + i e_i) − q(e_j − i e_i))`,
/// the imaginary part only over ℂ. The result is checked against `q` on 50
/// seeded random probes; a relative residual above `polarization` means `q`
/// is not a quadratic form.
pub fn recover_operator<S: Scalar>(
    q: &QuadraticFormOracle<S>,
    tol: &Tolerances,
) -> Result<HermitianOperator<S>> {
    let n = q.dim();
    let quarter = real::<S::Real>(0.25);
    let basis = |k: usize| -> Vec<S> {
        (0..n)
            .map(|i| if i == k { S::one() } else { S::zero() })
            .collect()
    };
    let combine =
        |x: &[S], y: &[S], c: S| -> Vec<S> { x.iter().zip(y).map(|(&a, &b)| a + c * b).collect() };

    let t = HermitianOperator::from_upper(n, |i, j| {
        let (ej, ei) = (basis(j), basis(i));
        let re = (q.evaluate(&combine(&ej, &ei, S::one()))
            - q.evaluate(&combine(&ej, &ei, -S::one())))
            * quarter;
        let im = match S::imaginary_unit() {
            Some(iu) => {
                (q.evaluate(&combine(&ej, &ei, iu)) - q.evaluate(&combine(&ej, &ei, -iu))) * quarter
            }
            None => S::Real::zero(),
        };
        S::from_parts(re, im)
    });

    let residual = probe_residual(q, &t)?;
    if residual > Tolerances::get::<S::Real>(tol.polarization) {
        return Err(Error::NotAQuadraticForm {
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(t)
}

/// Largest relative residual `|⟨Tx,x⟩ − q(x)| / max(|q(x)|, ‖T‖_F ‖x‖²)` over the probes.
fn probe_residual<S: Scalar>(
    q: &QuadraticFormOracle<S>,
    t: &HermitianOperator<S>,
) -> Result<S::Real> {
    let mut rng = rng_from_seed(PROBE_SEED);
    let t_norm = t.matrix().frobenius_norm();
    let mut worst = S::Real::zero();
    for _ in 0..PROBE_COUNT {
        let x: Vec<S> = gaussian_vector(&mut rng, q.dim());
        let expected = q.evaluate(&x);
        if !Float::is_finite(expected) {
            return Ok(S::Real::infinity());
        }
        let got = t.quadratic_form(&x)?;
        let scale = expected.abs().max(t_norm * norm_sq(&x));
        if scale > S::Real::zero() {
            worst = worst.max((got - expected).abs() / scale);
        }
    }
    Ok(worst)
}

/// Outcome of checking whether a function is the redundancy function of some frame.
#[derive(Debug, Clone)]
pub struct ValidationVerdict<S: Scalar> {
    /// The recovered operator, when the function passed the parallelogram check.
    pub operator: Option<HermitianOperator<S>>,
    pub failure: Option<Error>,
    pub min_eigenvalue: Option<S::Real>,
    pub positive: bool,
    pub trace: Option<S::Real>,
    pub integer_trace: bool,
    pub accepted: bool,
    /// A unit-norm frame whose redundancy function is the input, when accepted.
    pub witness: Option<Frame<S>>,
}

impl<S: Scalar> ValidationVerdict<S> {
    pub fn quadratic(&self) -> bool {
        self.operator.is_some()
    }

    /// The vector count `N = trace`, when the trace passed the integer test.
    pub fn vector_count(&self) -> Option<usize> {
        if !self.integer_trace {
            return None;
        }
        self.trace.and_then(|t| t.round().to_usize())
    }
}

/// Decides whether `q`, restricted to the unit sphere, is the redundancy
/// function of a frame with N vectors.
///
/// Three conditions are checked: `q` is a quadratic form (polarization with
/// probe verification), its operator is strictly positive, and its trace is
/// an integer N ≥ n. When all hold, a unit-norm witness frame is built whose
/// normalized frame operator equals the recovered operator after rescaling
/// its spectrum to sum exactly to N.
pub fn validate_redundancy_function<S: Scalar>(
    q: &QuadraticFormOracle<S>,
    tol: &Tolerances,
) -> ValidationVerdict<S> {
    let mut verdict = ValidationVerdict {
        operator: None,
        failure: None,
        min_eigenvalue: None,
        positive: false,
        trace: None,
        integer_trace: false,
        accepted: false,
        witness: None,
    };
    let t = match recover_operator(q, tol) {
        Ok(t) => t,
        Err(e) => {
            verdict.failure = Some(e);
            return verdict;
        }
    };
    let eig = match hermitian_eigen(&t, tol) {
        Ok(e) => e,
        Err(e) => {
            verdict.failure = Some(e);
            verdict.operator = Some(t);
            return verdict;
        }
    };
    let n = t.dim();
    let trace = t.trace();
    let rounded = trace.round();
    verdict.min_eigenvalue = Some(eig.min());
    verdict.positive = eig.min() > Tolerances::get(tol.positivity);
    verdict.trace = Some(trace);
    verdict.integer_trace = (trace - rounded).abs() <= Tolerances::get(tol.integer_trace)
        && rounded >= S::Real::from_usize_lossy(n);
    verdict.accepted = verdict.positive && verdict.integer_trace;

    if verdict.accepted {
        let count = rounded.to_usize().expect("rounded positive trace");
        let factor = rounded / trace;
        let values: Vec<S::Real> = eig.values.iter().map(|&v| v * factor).collect();
        let witness = SpectrumSpec::new(values, count, tol)
            .and_then(|spec| frame_with_spectrum::<S>(&spec, tol))
            .and_then(|f| f.apply_operator(&eig.vectors));
        match witness {
            Ok(w) => verdict.witness = Some(w),
            Err(e) => {
                verdict.accepted = false;
                verdict.failure = Some(e);
            }
        }
    }
    verdict.operator = Some(t);
    verdict
}

/// Sums of `q` over random orthonormal bases.
///
/// For a redundancy function every such sum equals N. The converse, that a
/// positive function with constant orthonormal-basis sums comes from a frame,
/// rests on Gleason's theorem and needs dimension at least 3; `conclusive`
/// records whether that holds.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSumDiagnostic<R> {
    pub sums: Vec<R>,
    pub spread: R,
    pub consistent: bool,
    pub conclusive: bool,
}

pub fn orthonormal_basis_sums<S: Scalar>(
    q: &QuadraticFormOracle<S>,
    bases: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<BasisSumDiagnostic<S::Real>> {
    let n = q.dim();
    let mut rng = rng_from_seed(seed);
    let mut sums = Vec::with_capacity(bases);
    for _ in 0..bases {
        let u = random_unitary::<S>(&mut rng, n)?;
        let s = (0..n).fold(S::Real::zero(), |acc, k| acc + q.evaluate(&u.column(k)));
        sums.push(s);
    }
    let lo = sums.iter().copied().fold(S::Real::infinity(), Float::min);
    let hi = sums
        .iter()
        .copied()
        .fold(S::Real::neg_infinity(), Float::max);
    let spread = if sums.is_empty() {
        S::Real::zero()
    } else {
        hi - lo
    };
    let scale = hi.abs().max(S::Real::from_usize_lossy(1));
    Ok(BasisSumDiagnostic {
        consistent: spread <= Tolerances::get::<S::Real>(tol.integer_trace) * scale,
        spread,
        sums,
        conclusive: n >= 3,
    })
}
