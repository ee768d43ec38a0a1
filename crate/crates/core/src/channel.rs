//! Teleportation channels.
//!
//! Single-qubit protocols act through a two-qubit resource `χ`; the two-qubit
//! protocol acts through a four-qubit resource `Ξ` on `A3 A4 B1 B2`. The
//! closed-form channels are cross-checked by [`protocol_oracle`], which
//! simulates Alice's sixteen-outcome measurement on all six qubits.

use crate::error::{Error, Result};
use crate::linalg::{
    dagger, hermitian_eigen, identity, is_unitary, kron, trace, CMatrix, CVector, DensityMatrix, StateVector, C64,
};
use crate::states::{bell, pauli, pauli_pair, pi_basis, rotations, upsilon_basis, AnglePair, PauliIndex, PauliPairIndex};
use crate::tolerance;

fn check_dim(found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn check_unitaries(ops: &[CMatrix], dim: usize) -> Result<()> {
    for op in ops {
        check_dim(op.nrows(), dim)?;
        if !is_unitary(op, tolerance::STRUCTURAL) {
            return Err(Error::InvalidArgument("recovery operator is not unitary".into()));
        }
    }
    Ok(())
}

/// Bob's four single-qubit recovery unitaries `r^μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoverySet2 {
    ops: Vec<CMatrix>,
}

impl RecoverySet2 {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        check_dim(ops.len(), 4)?;
        check_unitaries(&ops, 2)?;
        Ok(Self { ops })
    }

    /// `r^μ = u^μ`, the standard protocol.
    pub fn paulis() -> Self {
        Self { ops: PauliIndex::ALL.iter().map(|&m| pauli(m)).collect() }
    }

    pub fn get(&self, mu: PauliIndex) -> &CMatrix {
        &self.ops[mu.get()]
    }
}

/// Bob's sixteen two-qubit recovery unitaries `R^{μν}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoverySet4 {
    ops: Vec<CMatrix>,
}

impl RecoverySet4 {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        check_dim(ops.len(), 16)?;
        check_unitaries(&ops, 4)?;
        Ok(Self { ops })
    }

    /// `R^{μν} = U^{μν}`, the protocol `E0`.
    pub fn paulis() -> Self {
        Self { ops: PauliPairIndex::all().map(pauli_pair).collect() }
    }

    /// The same unitary for every outcome.
    pub fn constant(op: CMatrix) -> Result<Self> {
        Self::new(vec![op; 16])
    }

    pub fn get(&self, p: PauliPairIndex) -> &CMatrix {
        &self.ops[p.index()]
    }
}

/// `Σ_μ <Ψ^μ|χ|Ψ^μ> u^μ† ρ u^μ`.
pub fn channel_t0(chi: &DensityMatrix, rho_in: &DensityMatrix) -> Result<DensityMatrix> {
    check_dim(chi.dim(), 4)?;
    check_dim(rho_in.dim(), 2)?;
    let mut out = CMatrix::zeros(2, 2);
    for mu in PauliIndex::ALL {
        let w = chi.expectation(&bell(mu));
        let u = pauli(mu);
        out += (dagger(&u) * rho_in.matrix() * &u) * C64::new(w, 0.0);
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// `¼ Σ_{αβ} <Ψ^α|χ|Ψ^β> Σ_μ r^μ u^α† u^μ† ρ u^μ u^β r^μ†`.
pub fn channel_t1(chi: &DensityMatrix, rho_in: &DensityMatrix, r: &RecoverySet2) -> Result<DensityMatrix> {
    check_dim(chi.dim(), 4)?;
    check_dim(rho_in.dim(), 2)?;
    let bells: Vec<StateVector> = PauliIndex::ALL.iter().map(|&m| bell(m)).collect();
    let us: Vec<CMatrix> = PauliIndex::ALL.iter().map(|&m| pauli(m)).collect();
    let mut out = CMatrix::zeros(2, 2);
    for mu in PauliIndex::ALL {
        let twirled = dagger(&us[mu.get()]) * rho_in.matrix() * &us[mu.get()];
        let rm = r.get(mu);
        for a in 0..4 {
            let left = rm * dagger(&us[a]);
            for b in 0..4 {
                let w = bells[a].amplitudes().dotc(&(chi.matrix() * bells[b].amplitudes()));
                if w.norm() == 0.0 {
                    continue;
                }
                out += (&left * &twirled * &us[b] * dagger(rm)) * w;
            }
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out * C64::new(0.25, 0.0)))
}

/// Matrix of `<Υ^{αβ}(a)|Ξ|Υ^{γδ}(a)>`, rows and columns in flat pair order.
pub fn upsilon_matrix_elements(xi: &DensityMatrix, a: AnglePair) -> Result<CMatrix> {
    check_dim(xi.dim(), 16)?;
    let basis = upsilon_basis(a);
    let b = CMatrix::from_fn(16, 16, |r, c| basis[c].amplitudes()[r]);
    Ok(b.adjoint() * xi.matrix() * b)
}

/// Weights `<Υ^{μν}|Ξ|Υ^{μν}>` of the depolarizing bichannel, in flat pair order.
pub fn bichannel_weights(xi: &DensityMatrix, a: AnglePair) -> Result<Vec<f64>> {
    check_dim(xi.dim(), 16)?;
    Ok(upsilon_basis(a).iter().map(|v| xi.expectation(v)).collect())
}

/// `Σ_{μν} <Υ^{μν}|Ξ|Υ^{μν}> U^{μν†} ρ U^{μν}`.
pub fn bichannel_e0(xi: &DensityMatrix, rho_in: &DensityMatrix, a: AnglePair) -> Result<DensityMatrix> {
    check_dim(rho_in.dim(), 4)?;
    let weights = bichannel_weights(xi, a)?;
    let mut out = CMatrix::zeros(4, 4);
    for (p, w) in PauliPairIndex::all().zip(weights) {
        let u = pauli_pair(p);
        out += (dagger(&u) * rho_in.matrix() * &u) * C64::new(w, 0.0);
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// General recovery: `1/16 Σ_{αβγδ} <Υ^{αβ}|Ξ|Υ^{γδ}> Σ_{μν} R U^{αβ†} U^{μν†} ρ U^{μν} U^{γδ} R†`.
pub fn bichannel_e1(
    xi: &DensityMatrix,
    rho_in: &DensityMatrix,
    a: AnglePair,
    recovery: &RecoverySet4,
) -> Result<DensityMatrix> {
    check_dim(rho_in.dim(), 4)?;
    let m = upsilon_matrix_elements(xi, a)?;
    let us: Vec<CMatrix> = PauliPairIndex::all().map(pauli_pair).collect();
    let us_dag: Vec<CMatrix> = us.iter().map(dagger).collect();
    let mut out = CMatrix::zeros(4, 4);
    for p in PauliPairIndex::all() {
        let k = p.index();
        let twirled = &us_dag[k] * rho_in.matrix() * &us[k];
        let mut inner = CMatrix::zeros(4, 4);
        for ab in 0..16 {
            let left = &us_dag[ab] * &twirled;
            for gd in 0..16 {
                let w = m[(ab, gd)];
                if w.norm() == 0.0 {
                    continue;
                }
                inner += (&left * &us[gd]) * w;
            }
        }
        let r = recovery.get(p);
        out += r * inner * dagger(r);
    }
    Ok(DensityMatrix::from_matrix_unchecked(out * C64::new(1.0 / 16.0, 0.0)))
}

/// Coefficient matrix of a resource vector: `(C)_{mn,kl}` multiplies `|kl>_{A3A4} ⊗ |mn>_{B1B2}`.
pub fn coefficient_matrix(xi: &StateVector) -> Result<CMatrix> {
    check_dim(xi.dim(), 16)?;
    Ok(CMatrix::from_fn(4, 4, |mn, kl| xi.amplitudes()[4 * kl + mn]))
}

/// Eigen-ensemble `{(p_λ, |ξ_λ>)}` of a density matrix, dropping negligible weights.
pub fn eigen_ensemble(rho: &DensityMatrix) -> Result<Vec<(f64, StateVector)>> {
    let eig = hermitian_eigen(rho.matrix())?;
    let mut out = Vec::new();
    for (j, &p) in eig.values.iter().enumerate().rev() {
        if p > tolerance::EIGEN_WEIGHT_CUTOFF {
            out.push((p, StateVector::new(eig.vectors.column(j).into_owned())?));
        }
    }
    Ok(out)
}

/// The same matrix as [`upsilon_matrix_elements`], computed from the ensemble's
/// coefficient matrices:
/// `¼ Σ_λ p_λ tr[U^{αβ} C S T⁻¹] tr[U^{γδ†} T S⁻¹ C†]`.
///
/// Note the dagger placement: `<Υ^{αβ}|ξ> = ½ tr[U^{αβ} C S T⁻¹]` because
/// `Υ^{αβ}` carries `U^{αβ†}` on the `B1B2` side.
pub fn upsilon_elements_from_coefficients(ensemble: &[(f64, StateVector)], a: AnglePair) -> Result<CMatrix> {
    let (s, t) = rotations(a);
    let s_t_inv = &s * t.transpose();
    let t_s_inv = &t * s.transpose();
    let us: Vec<CMatrix> = PauliPairIndex::all().map(pauli_pair).collect();
    let mut out = CMatrix::zeros(16, 16);
    for (p, v) in ensemble {
        let cm = coefficient_matrix(v)?;
        let left: Vec<C64> = us.iter().map(|u| trace(&(u * &cm * &s_t_inv))).collect();
        let right: Vec<C64> = us.iter().map(|u| trace(&(dagger(u) * &t_s_inv * dagger(&cm)))).collect();
        for i in 0..16 {
            for j in 0..16 {
                out[(i, j)] += left[i] * right[j] * C64::new(0.25 * p, 0.0);
            }
        }
    }
    Ok(out)
}

/// One of Alice's sixteen measurement outcomes and Bob's corrected state.
#[derive(Debug, Clone)]
pub struct OutcomeRecord {
    pub outcome: PauliPairIndex,
    pub probability: f64,
    /// `None` when the outcome has (numerically) zero probability.
    pub conditional_state: Option<DensityMatrix>,
}

#[derive(Debug, Clone)]
pub struct ProtocolRun {
    pub outcomes: Vec<OutcomeRecord>,
    /// `Σ p_{μν} ρ_{μν}` over outcomes with a defined conditional state.
    pub output: DensityMatrix,
}

impl ProtocolRun {
    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }
}

/// Six-qubit simulation of the protocol with the resource's eigen-ensemble.
pub fn protocol_oracle(
    xi: &DensityMatrix,
    psi_in: &StateVector,
    a: AnglePair,
    recovery: &RecoverySet4,
) -> Result<ProtocolRun> {
    check_dim(xi.dim(), 16)?;
    protocol_oracle_with_ensemble(&eigen_ensemble(xi)?, psi_in, a, recovery)
}

/// As [`protocol_oracle`], for an explicit ensemble `Ξ = Σ p_λ |ξ_λ><ξ_λ|`.
pub fn protocol_oracle_with_ensemble(
    ensemble: &[(f64, StateVector)],
    psi_in: &StateVector,
    a: AnglePair,
    recovery: &RecoverySet4,
) -> Result<ProtocolRun> {
    check_dim(psi_in.dim(), 4)?;
    // |Ψ>_{A1A2} ⊗ |ξ_λ>_{A3A4B1B2}
    let branches: Vec<(f64, CVector)> = ensemble
        .iter()
        .map(|(p, v)| {
            check_dim(v.dim(), 16)?;
            Ok((*p, psi_in.tensor(v).into_amplitudes()))
        })
        .collect::<Result<_>>()?;

    let mut outcomes = Vec::with_capacity(16);
    let mut output = CMatrix::zeros(4, 4);
    for (p, pi) in PauliPairIndex::all().zip(pi_basis(a)) {
        let r = recovery.get(p);
        let mut bob = CMatrix::zeros(4, 4);
        for (weight, full) in &branches {
            // (<Π^{μν}|_{A1..A4} ⊗ I_{B1B2}) |full>
            let amp = CVector::from_fn(4, |k, _| {
                (0..16).map(|j| pi.amplitudes()[j].conj() * full[4 * j + k]).sum()
            });
            let corrected = r * amp;
            bob += (&corrected * corrected.adjoint()) * C64::new(*weight, 0.0);
        }
        let probability = trace(&bob).re;
        let conditional_state = if probability > tolerance::ZERO_PROBABILITY {
            output += &bob;
            Some(DensityMatrix::from_matrix_unchecked(&bob / C64::new(probability, 0.0)))
        } else {
            None
        };
        outcomes.push(OutcomeRecord { outcome: p, probability, conditional_state });
    }
    let total: f64 = outcomes.iter().filter(|o| o.conditional_state.is_some()).map(|o| o.probability).sum();
    Ok(ProtocolRun { outcomes, output: DensityMatrix::from_matrix_unchecked(output / C64::new(total, 0.0)) })
}

/// Identity on every outcome; used by tests and the oracle check.
pub fn trivial_recovery() -> RecoverySet4 {
    RecoverySet4 { ops: vec![identity(4); 16] }
}

/// Kronecker helper for `U^{00}_{A3A4} ⊗ op_{B1B2}`.
pub fn on_bob(op: &CMatrix) -> CMatrix {
    kron(&identity(4), op)
}
