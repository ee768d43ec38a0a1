//! Maximizers used by the singlet-fraction metrics.

mod angles;
mod nelder_mead;
mod unitary;

pub use angles::{maximize_over_angles, AngleSearch, AngleOptimum};
pub use nelder_mead::{NelderMead, SimplexResult};
pub use unitary::{expi_hermitian, hermitian_from_params, LocalUnitarySearch, UnitaryOptimum};
