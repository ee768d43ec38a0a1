//! Dense complex linear algebra on qubit registers.
//!
//! Basis ordering is big-endian: the leftmost qubit of `|q0 q1 ... q(n-1)>`
//! is the most significant bit of the basis index.

mod ops;
mod random;
mod spectrum;
mod types;

pub use ops::{
    apply, dagger, inner, is_unitary, kron, kron_all, kron_vec, max_abs_diff, max_abs_diff_vec,
    outer, partial_trace, partial_transpose, trace,
};
pub use random::{
    ginibre_density, haar_state, haar_unitary, sample_random, Sample, SampleKind,
};
pub use spectrum::{hermitian_eigen, hermitian_spectrum, trace_norm, Eigen};
pub use types::{qubit_count, DensityMatrix, StateVector, SubsystemMask};

pub use num_complex::Complex64 as C64;

pub type CMatrix = nalgebra::DMatrix<C64>;
pub type CVector = nalgebra::DVector<C64>;

/// Square complex matrix: Paulis, rotations, recovery operators, unitaries.
pub type LinearOperator = CMatrix;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Builds a matrix from real row-major entries.
pub fn real_matrix(dim: usize, rows: &[f64]) -> CMatrix {
    assert_eq!(rows.len(), dim * dim);
    CMatrix::from_fn(dim, dim, |i, j| re(rows[i * dim + j]))
}
