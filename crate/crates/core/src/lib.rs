//! Quantitative redundancy of finite frames.
//!
//! The library is generic over the scalar field through [`scalar::Scalar`],
//! implemented for `f32`, `f64` and their complex counterparts. The aliases
//! below fix the common double-precision instantiations.

pub mod cli;
pub mod construct;
pub mod error;
pub mod framecore;
pub mod io;
pub mod numkernel;
pub mod partition;
pub mod redundancy;
pub mod scalar;
pub mod tol;

pub use error::{Error, Result};
pub use scalar::{Field, Real, Scalar};
pub use tol::Tolerances;

pub use num_complex::Complex64;

pub type RealFrame = framecore::Frame<f64>;
pub type ComplexFrame = framecore::Frame<Complex64>;
pub type RealOperator = numkernel::HermitianOperator<f64>;
pub type ComplexOperator = numkernel::HermitianOperator<Complex64>;
pub type RealMatrix = numkernel::DenseMatrix<f64>;
pub type ComplexMatrix = numkernel::DenseMatrix<Complex64>;
pub type Report = redundancy::RedundancyReport<f64>;
pub type Spectrum = construct::SpectrumSpec<f64>;
