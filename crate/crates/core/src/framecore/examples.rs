//! Named example frames with explicit redundancy behavior.

use num_traits::{Float, One, Zero};

use super::frame::{unit_vector, Frame};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// `{e₁, …, e₁, e₂, …, eₙ}` with `e₁` repeated `s` times.
pub fn example_phi1<S: Scalar>(n: usize, s: usize) -> Result<Frame<S>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    if s < 1 {
        return Err(Error::InvalidParameter(
            "repetition count must be at least 1".into(),
        ));
    }
    let mut vectors: Vec<Vec<S>> = (0..s).map(|_| unit_vector(n, 0)).collect();
    vectors.extend((1..n).map(|i| unit_vector(n, i)));
    Frame::new(n, vectors)
}

/// `{e₁, e₁, e₂, e₂, …, eₙ, eₙ}`: two copies of the standard basis.
pub fn example_phi2<S: Scalar>(n: usize) -> Result<Frame<S>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    Frame::new(
        n,
        (0..n)
            .flat_map(|i| [unit_vector(n, i), unit_vector(n, i)])
            .collect(),
    )
}

/// `φ₁ = e₁` and `φ_i = √(1−ε²) e₁ + ε e_i` for `i ≥ 2`: n unit vectors
/// clustered around `e₁`.
pub fn example_phi3<S: Scalar>(n: usize, eps: S::Real) -> Result<Frame<S>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    let one = S::Real::one();
    if !(eps > S::Real::zero() && eps < one) {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1), got {}",
            eps.to_f64_lossy()
        )));
    }
    let lead = (one - eps * eps).sqrt();
    let mut vectors = vec![unit_vector::<S>(n, 0)];
    for i in 1..n {
        let mut v = vec![S::zero(); n];
        v[0] = S::from_real(lead);
        v[i] = S::from_real(eps);
        vectors.push(v);
    }
    Frame::new(n, vectors)
}
