//! The redundancy function, upper and lower redundancy, equivalence of
//! frames, and recovery and validation of redundancy functions.

mod conditioning;
mod quadratic;
mod report;

pub use conditioning::{canonical_dual_sandwich, conditioning_sandwich, SandwichMargins, Slack};
pub use quadratic::{
    orthonormal_basis_sums, recover_operator, validate_redundancy_function, BasisSumDiagnostic,
    QuadraticFormOracle, ValidationVerdict,
};
pub use report::{
    equivalent, quadratic_extension, redundancy_at, redundancy_report, RedundancyReport,
};
