use nalgebra::SymmetricEigen;

use super::{ops::hermiticity_defect, CMatrix, C64};
use crate::error::{Error, Result};
use crate::tolerance;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending, eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigen {
    /// `V diag(values) V^dagger`.
    pub fn reconstruct(&self) -> CMatrix {
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&x| C64::new(x, 0.0)),
        ));
        &self.vectors * d * self.vectors.adjoint()
    }
}

/// Eigendecomposition with a certified reconstruction residual.
pub fn hermitian_eigen(h: &CMatrix) -> Result<Eigen> {
    if !h.is_square() {
        return Err(Error::InvalidArgument("eigendecomposition of non-square matrix".into()));
    }
    let defect = hermiticity_defect(h);
    if defect > tolerance::HERMITIAN_INPUT {
        return Err(Error::NotHermitian(defect));
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    let sym = (h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..h.nrows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(h.nrows(), h.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    let out = Eigen { values, vectors };

    let scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let residual = super::max_abs_diff(h, &out.reconstruct());
    if residual > tolerance::ORACLE * scale {
        return Err(Error::EigenResidual(residual));
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_spectrum(h: &CMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(h)?.values)
}

/// Sum of absolute eigenvalues.
pub fn trace_norm(h: &CMatrix) -> Result<f64> {
    Ok(hermitian_spectrum(h)?.iter().map(|x| x.abs()).sum())
}
