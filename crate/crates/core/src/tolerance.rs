//! Numerical tolerances shared by every module.

/// Structural validation: Hermiticity, unit trace, normalization.
pub const STRUCTURAL: f64 = 1e-12;

/// Smallest eigenvalue a density matrix may have.
pub const PSD_SLACK: f64 = -1e-10;

/// Agreement between two independent routes to the same quantity.
pub const ORACLE: f64 = 1e-10;

/// Hermiticity accepted by the eigensolver.
pub const HERMITIAN_INPUT: f64 = 1e-10;

/// Eigen-ensemble weights below this are dropped.
pub const EIGEN_WEIGHT_CUTOFF: f64 = 1e-12;

/// Measurement outcomes below this probability have no conditional state.
pub const ZERO_PROBABILITY: f64 = 1e-14;
