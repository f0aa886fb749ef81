use thiserror::Error;

use crate::scalar::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "matrix is not Hermitian: entry ({row}, {col}) deviates from its adjoint by {deviation:e}"
    )]
    NonHermitianInput {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("operator is singular or not positive definite (smallest/largest eigenvalue ratio {ratio:e})")]
    SingularOperator { ratio: f64 },
    #[error("operator has a negative eigenvalue {eigenvalue:e}")]
    IndefiniteOperator { eigenvalue: f64 },
    #[error("trace {trace} does not equal target·dim = {expected}")]
    TraceMismatch { trace: f64, expected: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("empty input")]
    EmptyInput,
    #[error("non-finite value in input")]
    NonFinite,
    #[error("vectors do not span the space (rank {rank} < dim {dim})")]
    NotAFrame { rank: usize, dim: usize },
    #[error("invalid permutation")]
    InvalidPermutation,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("could not generate a spanning frame after {attempts} attempts")]
    GenerationFailed { attempts: usize },
    #[error("argument is not a unit vector (norm {norm})")]
    NotUnitVector { norm: f64 },
    #[error("function is not a quadratic form: probe residual {residual:e}")]
    NotAQuadraticForm { residual: f64 },
    #[error("quadratic form evaluator is not deterministic")]
    NondeterministicOracle,
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("infeasible request: {0}")]
    InfeasibleRequest(String),
    #[error("frame vector {index} is zero")]
    ZeroVectorPresent { index: usize },
    #[error("{count} subsets exceed the enumeration limit {limit}")]
    TooManySubsets { count: u128, limit: u128 },
    #[error("partition certificate failed: {0}")]
    InvalidCertificate(String),
    #[error("Jacobi iteration did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
