//! Singlet fractions and their maximizations.

use crate::channel::eigen_ensemble;
use crate::error::{Error, Result};
use crate::linalg::{identity, kron, CMatrix, CVector, DensityMatrix};
use crate::optimize::{maximize_over_angles, AngleSearch, LocalUnitarySearch};
use crate::par::Exec;
use crate::rng::RandomStream;
use crate::states::{bell, upsilon00, AnglePair, PauliIndex};

/// Outcome of a maximization.
#[derive(Debug, Clone)]
pub struct OptResult {
    pub value: f64,
    pub argmax_angles: Option<AnglePair>,
    pub argmax_unitary: Option<CMatrix>,
    /// Always false for the unitary-group searches, which are heuristic.
    pub certified: bool,
    pub evaluations: usize,
    pub flat_theta: bool,
    pub flat_phi: bool,
}

fn check_dim(found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `<Ψ⁰|χ|Ψ⁰>`.
pub fn singlet_fraction(chi: &DensityMatrix) -> Result<f64> {
    check_dim(chi.dim(), 4)?;
    Ok(chi.expectation(&bell(PauliIndex::ALL[0])))
}

fn ensemble(rho: &DensityMatrix) -> Result<Vec<(f64, CVector)>> {
    Ok(eigen_ensemble(rho)?.into_iter().map(|(p, v)| (p, v.into_amplitudes())).collect())
}

/// Heuristic maximum of `<Ψ⁰|(I ⊗ u) χ (I ⊗ u†)|Ψ⁰>` over `u ∈ U(2)`.
pub fn max_singlet_fraction(chi: &DensityMatrix, restarts: usize, stream: RandomStream, exec: Exec) -> Result<OptResult> {
    check_dim(chi.dim(), 4)?;
    let search = LocalUnitarySearch { restarts, ..Default::default() };
    let target = bell(PauliIndex::ALL[0]).into_amplitudes();
    let r = search.maximize(&target, &ensemble(chi)?, 2, stream, exec)?;
    Ok(OptResult {
        value: r.value,
        argmax_angles: None,
        argmax_unitary: Some(r.unitary),
        certified: false,
        evaluations: r.evaluations,
        flat_theta: false,
        flat_phi: false,
    })
}

/// Basis indices carrying the eight nonzero amplitudes of `Υ⁰⁰`.
const SUPPORT: [usize; 8] = [0b0000, 0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100, 0b1111];

/// `Υ⁰⁰(θ, φ)` restricted to [`SUPPORT`]; all amplitudes are real.
fn support_amplitudes(theta: f64, phi: f64) -> [f64; 8] {
    let (ct, st, cp, sp) = (theta.cos(), theta.sin(), phi.cos(), phi.sin());
    [ct, -st, -sp, cp, cp, sp, st, ct].map(|x| 0.5 * x)
}

/// Real part of `Ξ` on the support of `Υ⁰⁰`, enough to evaluate the overlap.
struct OverlapSurface([[f64; 8]; 8]);

impl OverlapSurface {
    fn new(xi: &DensityMatrix) -> Self {
        let m = xi.matrix();
        let mut r = [[0.0; 8]; 8];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = m[(SUPPORT[i], SUPPORT[j])].re;
            }
        }
        Self(r)
    }

    fn at(&self, theta: f64, phi: f64) -> f64 {
        let v = support_amplitudes(theta, phi);
        let mut s = 0.0;
        for i in 0..8 {
            let mut row = 0.0;
            for j in 0..8 {
                row += self.0[i][j] * v[j];
            }
            s += v[i] * row;
        }
        s
    }
}

/// `<Υ⁰⁰(θ, φ)|Ξ|Υ⁰⁰(θ, φ)>`.
pub fn gsf_objective(xi: &DensityMatrix, a: AnglePair) -> f64 {
    OverlapSurface::new(xi).at(a.theta(), a.phi())
}

pub fn generalized_singlet_fraction(xi: &DensityMatrix) -> Result<OptResult> {
    generalized_singlet_fraction_with(xi, &AngleSearch::default())
}

/// Maximum of [`gsf_objective`] over the open square of angles.
pub fn generalized_singlet_fraction_with(xi: &DensityMatrix, search: &AngleSearch) -> Result<OptResult> {
    check_dim(xi.dim(), 16)?;
    let surface = OverlapSurface::new(xi);
    let r = maximize_over_angles(|t, p| surface.at(t, p), search);
    let a = AnglePair::new(r.theta, r.phi)?;
    Ok(OptResult {
        value: surface.at(a.theta(), a.phi()),
        argmax_angles: Some(a),
        argmax_unitary: None,
        certified: false,
        evaluations: r.evaluations,
        flat_theta: r.flat_theta,
        flat_phi: r.flat_phi,
    })
}

/// Heuristic maximum of `<Υ⁰⁰|(I ⊗ U) Ξ (I ⊗ U†)|Υ⁰⁰>` over angles and `U ∈ U(4)` on `B1B2`.
///
/// `Υ⁰⁰(θ, φ)` is maximally entangled across `A3A4 : B1B2` for every angle pair,
/// so the angles can be fixed at the angle-only optimum and the search runs
/// over `U` alone. The identity start guarantees the result is at least
/// the angle-only optimum.
pub fn max_generalized_singlet_fraction(
    xi: &DensityMatrix,
    restarts: usize,
    stream: RandomStream,
    exec: Exec,
) -> Result<OptResult> {
    let g = generalized_singlet_fraction(xi)?;
    let a = g.argmax_angles.expect("angle search reports angles");
    let search = LocalUnitarySearch { restarts, ..Default::default() };
    let target = upsilon00(a).into_amplitudes();
    let r = search.maximize(&target, &ensemble(xi)?, 4, stream, exec)?;
    let value = xi.conjugate_by(&kron(&identity(4), &r.unitary)).expectation(&upsilon00(a));
    Ok(OptResult {
        value,
        argmax_angles: Some(a),
        argmax_unitary: Some(r.unitary),
        certified: false,
        evaluations: g.evaluations + r.evaluations,
        flat_theta: g.flat_theta,
        flat_phi: g.flat_phi,
    })
}

/// Two-qubit teleportation fidelity reached at generalized singlet fraction `g`.
pub fn fidelity_from_gsf(g: f64) -> f64 {
    0.2 + 0.8 * g
}
