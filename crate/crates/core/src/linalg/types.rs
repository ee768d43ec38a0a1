use super::{dagger, hermitian_spectrum, trace, CMatrix, CVector, C64};
use crate::error::{Error, Result};
use crate::tolerance;

/// Number of qubits for a power-of-two dimension.
pub fn qubit_count(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

fn all_finite<'a>(it: impl IntoIterator<Item = &'a C64>) -> bool {
    it.into_iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Pure state on a register of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: CVector,
}

impl StateVector {
    /// Wraps amplitudes without normalizing them.
    pub fn new(amps: CVector) -> Result<Self> {
        qubit_count(amps.len())?;
        if !all_finite(amps.iter()) {
            return Err(Error::NonFinite("state vector"));
        }
        Ok(Self { amps })
    }

    /// Wraps and rescales to unit norm.
    pub fn normalized(amps: CVector) -> Result<Self> {
        let norm = amps.norm();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero vector cannot be normalized".into()));
        }
        Self::new(amps / C64::new(norm, 0.0))
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(CVector::from_iterator(
            amps.len(),
            amps.iter().map(|&x| C64::new(x, 0.0)),
        ))
    }

    /// Computational basis state `|index>` on `dim` levels.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        let mut v = CVector::zeros(dim);
        if index >= dim {
            return Err(Error::InvalidArgument(format!("basis index {index} >= {dim}")));
        }
        v[index] = C64::new(1.0, 0.0);
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn is_normalized(&self) -> bool {
        (self.amps.norm_squared() - 1.0).abs() <= tolerance::STRUCTURAL
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.dotc(&other.amps)
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from_matrix_unchecked(&self.amps * self.amps.adjoint())
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        StateVector {
            amps: super::kron_vec(&self.amps, &other.amps),
        }
    }

    /// `op |self>`.
    pub fn apply(&self, op: &CMatrix) -> StateVector {
        StateVector { amps: op * &self.amps }
    }
}

/// Mixed state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates all invariants.
    pub fn new(m: CMatrix) -> Result<Self> {
        validate(&m)?;
        Ok(Self { m })
    }

    /// Skips validation in release builds; debug and test builds still check.
    pub fn from_matrix_unchecked(m: CMatrix) -> Self {
        #[cfg(debug_assertions)]
        if let Err(e) = validate(&m) {
            panic!("density matrix invariant violated: {e}");
        }
        Self { m }
    }

    /// Rescales a positive semidefinite matrix to unit trace.
    pub fn from_unnormalized(m: CMatrix) -> Result<Self> {
        let t = trace(&m).re;
        if !(t > 0.0) {
            return Err(Error::InvalidDensity(format!("trace {t} is not positive")));
        }
        Self::new(m / C64::new(t, 0.0))
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        qubit_count(dim)?;
        Ok(Self {
            m: CMatrix::identity(dim, dim) / C64::new(dim as f64, 0.0),
        })
    }

    /// Convex combination `w * a + (1 - w) * b`.
    pub fn mix(w: f64, a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::WeightOutOfRange(w));
        }
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        Ok(Self::from_matrix_unchecked(
            a.matrix() * C64::new(w, 0.0) + b.matrix() * C64::new(1.0 - w, 0.0),
        ))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn trace(&self) -> f64 {
        trace(&self.m).re
    }

    pub fn purity(&self) -> f64 {
        trace(&(&self.m * &self.m)).re
    }

    /// `<psi| rho |psi>`.
    pub fn expectation(&self, psi: &StateVector) -> f64 {
        psi.amplitudes().dotc(&(&self.m * psi.amplitudes())).re
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix { m: super::kron(&self.m, &other.m) }
    }

    /// `U rho U^dagger`.
    pub fn conjugate_by(&self, u: &CMatrix) -> DensityMatrix {
        DensityMatrix::from_matrix_unchecked(u * &self.m * dagger(u))
    }
}

/// Checks the density-matrix invariants at the shared tolerances.
pub fn validate(m: &CMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::InvalidDensity("matrix is not square".into()));
    }
    qubit_count(m.nrows())?;
    if !all_finite(m.iter()) {
        return Err(Error::NonFinite("density matrix"));
    }
    let herm = super::max_abs_diff(m, &dagger(m));
    if herm > tolerance::STRUCTURAL {
        return Err(Error::InvalidDensity(format!("not Hermitian (deviation {herm:e})")));
    }
    let t = trace(m);
    if (t.re - 1.0).abs() > tolerance::STRUCTURAL || t.im.abs() > tolerance::STRUCTURAL {
        return Err(Error::InvalidDensity(format!("trace {t} != 1")));
    }
    let spectrum = hermitian_spectrum(m)?;
    if spectrum[0] < tolerance::PSD_SLACK {
        return Err(Error::InvalidDensity(format!(
            "minimum eigenvalue {:e} below {:e}",
            spectrum[0],
            tolerance::PSD_SLACK
        )));
    }
    Ok(())
}

/// Which qubits an operation acts on, indexed left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsystemMask {
    selected: Vec<bool>,
}

impl SubsystemMask {
    pub fn new(selected: Vec<bool>) -> Self {
        Self { selected }
    }

    /// Mask over `n_qubits` with the listed qubit positions selected.
    pub fn from_indices(n_qubits: usize, indices: &[usize]) -> Result<Self> {
        let mut selected = vec![false; n_qubits];
        for &i in indices {
            if i >= n_qubits {
                return Err(Error::InvalidArgument(format!("qubit {i} >= {n_qubits}")));
            }
            selected[i] = true;
        }
        Ok(Self { selected })
    }

    pub fn n_qubits(&self) -> usize {
        self.selected.len()
    }

    pub fn is_selected(&self, qubit: usize) -> bool {
        self.selected[qubit]
    }

    pub fn count(&self) -> usize {
        self.selected.iter().filter(|&&s| s).count()
    }

    pub fn complement(&self) -> Self {
        Self { selected: self.selected.iter().map(|s| !s).collect() }
    }

    /// True when at least one qubit is selected and at least one is not.
    pub fn is_proper(&self) -> bool {
        let k = self.count();
        k > 0 && k < self.selected.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_dimensions() {
        assert_eq!(qubit_count(6), Err(Error::NotPowerOfTwo(6)));
        assert!(StateVector::from_real(&[1.0, 0.0, 0.0]).is_err());
        assert_eq!(qubit_count(16), Ok(4));
    }

    #[test]
    fn rejects_non_density() {
        let m = super::super::real_matrix(2, &[1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidDensity(_))));
        let neg = super::super::real_matrix(2, &[1.5, 0.0, 0.0, -0.5]);
        assert!(DensityMatrix::new(neg).is_err());
        let nonherm = super::super::real_matrix(2, &[0.5, 0.1, 0.0, 0.5]);
        assert!(DensityMatrix::new(nonherm).is_err());
    }

    #[test]
    fn mask_complement_and_properness() {
        let m = SubsystemMask::from_indices(4, &[0, 2]).unwrap();
        assert!(m.is_proper());
        assert_eq!(m.complement().count(), 2);
        assert!(!SubsystemMask::new(vec![true, true]).is_proper());
        assert!(SubsystemMask::from_indices(2, &[5]).is_err());
    }
}
