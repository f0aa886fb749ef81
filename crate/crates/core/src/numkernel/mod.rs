//! Dense linear-algebra kernels over ℝ and ℂ.

mod eigen;
mod givens;
mod hermitian;
mod matrix;
mod rank;

pub use eigen::{condition_number, hermitian_eigen, operator_power, EigenDecomposition, Power};
pub use givens::{givens_equalize_diagonal, rotations_to_unitary, PlaneRotation};
pub use hermitian::HermitianOperator;
pub use matrix::{DenseMatrix, PlaneUnitary};
pub use rank::rank;
