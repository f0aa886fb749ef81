//! Seeded generators for frames and operators.

use num_traits::{Float, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::frame::Frame;
use crate::error::{Error, Result};
use crate::numkernel::DenseMatrix;
use crate::scalar::{Field, Real, Scalar};

const MAX_ATTEMPTS: usize = 100;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A standard normal scalar; complex scalars get independent real and imaginary parts.
pub fn gaussian<S: Scalar>(rng: &mut impl Rng) -> S {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = match S::FIELD {
        Field::Real => 0.0,
        Field::Complex => rng.sample(StandardNormal),
    };
    S::from_f64_parts(re, im)
}

pub fn gaussian_vector<S: Scalar>(rng: &mut impl Rng, n: usize) -> Vec<S> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// N Gaussian vectors in dimension n, resampled until they span.
pub fn random_frame<S: Scalar>(n: usize, count: usize, seed: u64) -> Result<Frame<S>> {
    if n < 1 || count < n {
        return Err(Error::InvalidParameter(format!(
            "need N ≥ n ≥ 1, got n = {n}, N = {count}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    random_frame_from(&mut rng, n, count)
}

pub fn random_frame_from<S: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    count: usize,
) -> Result<Frame<S>> {
    for _ in 0..MAX_ATTEMPTS {
        let f = Frame::new(n, (0..count).map(|_| gaussian_vector(rng, n)).collect())?;
        if f.is_spanning() {
            return Ok(f);
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
    })
}

/// A Haar-like random unitary (orthogonal for real scalars).
pub fn random_unitary<S: Scalar>(rng: &mut impl Rng, n: usize) -> Result<DenseMatrix<S>> {
    for _ in 0..MAX_ATTEMPTS {
        let mut m = DenseMatrix::from_fn(n, n, |_, _| gaussian::<S>(rng));
        if m.orthonormalize_columns() {
            return Ok(m);
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
    })
}

/// `U diag(d) V*` with singular values spread over `[1, max_condition]`.
pub fn random_invertible<S: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    max_condition: f64,
) -> Result<DenseMatrix<S>> {
    if max_condition.is_nan() || max_condition < 1.0 {
        return Err(Error::InvalidParameter(
            "condition bound must be at least 1".into(),
        ));
    }
    let u = random_unitary::<S>(rng, n)?;
    let v = random_unitary::<S>(rng, n)?;
    let d: Vec<S::Real> = (0..n)
        .map(|i| {
            let x: f64 = match i {
                0 => 1.0,
                1 => max_condition,
                _ => rng.random_range(1.0..=max_condition),
            };
            S::Real::from_f64_lossy(x)
        })
        .collect();
    let scale = S::Real::from_f64_lossy(rng.random_range(0.5..2.0));
    let d: Vec<S::Real> = d.into_iter().map(|x| x * scale).collect();
    u.mul(&DenseMatrix::from_diagonal(&d))?.mul(&v.adjoint())
}

/// Nonzero scalars with random modulus in `[0.1, 10]` and random sign or phase.
pub fn random_nonzero_scalars<S: Scalar>(rng: &mut impl Rng, count: usize) -> Vec<S> {
    (0..count)
        .map(|_| {
            let modulus: f64 = 10f64.powf(rng.random_range(-1.0..=1.0));
            match S::FIELD {
                Field::Real => {
                    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                    S::from_f64_parts(sign * modulus, 0.0)
                }
                Field::Complex => {
                    let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                    S::from_f64_parts(modulus * angle.cos(), modulus * angle.sin())
                }
            }
        })
        .collect()
}

/// A uniformly random permutation of `0..count`.
pub fn random_permutation(rng: &mut impl Rng, count: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..count).collect();
    p.shuffle(rng);
    p
}

/// Smallest singular value of `m`, used to skip nearly degenerate random draws.
pub fn smallest_singular_value<S: Scalar>(m: &DenseMatrix<S>) -> Result<S::Real> {
    let gram = if m.rows() <= m.cols() {
        m.mul(&m.adjoint())?
    } else {
        m.adjoint().mul(m)?
    };
    let h = crate::numkernel::HermitianOperator::symmetrized(gram);
    let eig = crate::numkernel::hermitian_eigen(&h, &crate::tol::Tolerances::default())?;
    Ok(eig.min().max(S::Real::zero()).sqrt())
}
