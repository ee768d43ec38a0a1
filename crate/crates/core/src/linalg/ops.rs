use super::{qubit_count, CMatrix, CVector, DensityMatrix, SubsystemMask, C64};
use crate::error::{Error, Result};
use crate::tolerance;

/// Kronecker product; `a` is the more significant register.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let nb = b.len();
    CVector::from_fn(a.len() * nb, |i, _| a[i / nb] * b[i % nb])
}

/// Left-to-right Kronecker product of a list of factors.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a CMatrix>) -> CMatrix {
    factors
        .into_iter()
        .fold(CMatrix::identity(1, 1), |acc, f| kron(&acc, f))
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().sum()
}

/// `<a|b>`.
pub fn inner(a: &CVector, b: &CVector) -> C64 {
    a.dotc(b)
}

/// `|a><b|`.
pub fn outer(a: &CVector, b: &CVector) -> CMatrix {
    a * b.adjoint()
}

pub fn apply(m: &CMatrix, v: &CVector) -> CVector {
    m * v
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff_vec(a: &CVector, b: &CVector) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    u.is_square() && max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(u.nrows(), u.ncols())) <= tol
}

fn check_mask(dim: usize, mask: &SubsystemMask) -> Result<usize> {
    let n = qubit_count(dim)?;
    if mask.n_qubits() != n {
        return Err(Error::MaskLength { mask: mask.n_qubits(), operator: n });
    }
    Ok(n)
}

/// Bit position (from the least significant end) of qubit `q` in an `n`-qubit index.
fn bit_of(n: usize, q: usize) -> usize {
    n - 1 - q
}

/// Traces out every qubit not selected by `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &SubsystemMask) -> Result<DensityMatrix> {
    let n = check_mask(rho.dim(), keep)?;
    if !keep.is_proper() {
        return Err(Error::DegeneratePartialTrace);
    }
    let kept: Vec<usize> = (0..n).filter(|&q| keep.is_selected(q)).collect();
    let traced: Vec<usize> = (0..n).filter(|&q| !keep.is_selected(q)).collect();

    // Scatter a compact index over `qubits` into a full-register index.
    let scatter = |compact: usize, qubits: &[usize]| -> usize {
        let k = qubits.len();
        qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
            let bit = (compact >> (k - 1 - pos)) & 1;
            acc | (bit << bit_of(n, q))
        })
    };

    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let m = rho.matrix();
    let out = CMatrix::from_fn(dk, dk, |r, c| {
        let (rf, cf) = (scatter(r, &kept), scatter(c, &kept));
        (0..dt)
            .map(|t| {
                let tf = scatter(t, &traced);
                m[(rf | tf, cf | tf)]
            })
            .sum()
    });
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Transposes the selected qubits' row and column indices.
///
/// Works on any square operator so that it can be applied twice.
pub fn partial_transpose(m: &CMatrix, transposed: &SubsystemMask) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::InvalidArgument("partial transpose of non-square matrix".into()));
    }
    let n = check_mask(m.nrows(), transposed)?;
    let swap_bits: usize = (0..n)
        .filter(|&q| transposed.is_selected(q))
        .map(|q| 1usize << bit_of(n, q))
        .sum();
    let dim = m.nrows();
    Ok(CMatrix::from_fn(dim, dim, |r, c| {
        let r2 = (r & !swap_bits) | (c & swap_bits);
        let c2 = (c & !swap_bits) | (r & swap_bits);
        m[(r2, c2)]
    }))
}

/// Hermitian part deviation, used in debug checks.
pub(crate) fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

#[allow(dead_code)]
pub(crate) fn is_hermitian(m: &CMatrix) -> bool {
    hermiticity_defect(m) <= tolerance::STRUCTURAL
}
