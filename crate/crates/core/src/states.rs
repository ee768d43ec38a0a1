//! Operator and state families: Paulis, Bell states, the S/T rotations, the
//! four-qubit resource basis `Υ^{μν}`, Alice's measurement basis `Π^{μν}`,
//! generalized Smolin states, GHZ/W states and the two mixture families.
//!
//! Registers follow the particle labels left to right: resources live on
//! `A3 A4 B1 B2`, measurement states on `A1 A2 A3 A4`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::linalg::{dagger, identity, kron, kron_vec, real_matrix, CMatrix, CVector, DensityMatrix, StateVector, C64};

/// One of `u0 = I`, `u1 = σ1`, `u2 = iσ2`, `u3 = σ3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliIndex(u8);

impl PauliIndex {
    pub const ALL: [PauliIndex; 4] = [PauliIndex(0), PauliIndex(1), PauliIndex(2), PauliIndex(3)];

    pub fn new(mu: u8) -> Result<Self> {
        if mu > 3 {
            return Err(Error::PauliIndex(mu));
        }
        Ok(Self(mu))
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }
}

/// `(μ, ν)` labelling outcomes, recovery operators and the `Υ`/`Π` bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliPairIndex {
    pub mu: PauliIndex,
    pub nu: PauliIndex,
}

impl PauliPairIndex {
    pub fn new(mu: u8, nu: u8) -> Result<Self> {
        Ok(Self { mu: PauliIndex::new(mu)?, nu: PauliIndex::new(nu)? })
    }

    pub const fn identity() -> Self {
        Self { mu: PauliIndex(0), nu: PauliIndex(0) }
    }

    /// Flat index `4μ + ν`.
    pub fn index(self) -> usize {
        4 * self.mu.get() + self.nu.get()
    }

    pub fn from_index(i: usize) -> Self {
        assert!(i < 16);
        Self { mu: PauliIndex((i / 4) as u8), nu: PauliIndex((i % 4) as u8) }
    }

    /// All sixteen pairs in flat-index order.
    pub fn all() -> impl Iterator<Item = PauliPairIndex> {
        (0..16).map(Self::from_index)
    }
}

impl std::fmt::Display for PauliPairIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.mu.0, self.nu.0)
    }
}

/// Angle differences `(θ12, φ12)`, each strictly inside `(-π/2, π/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePair {
    theta: f64,
    phi: f64,
}

impl AnglePair {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        for value in [theta, phi] {
            if !(value.is_finite() && value > -FRAC_PI_2 && value < FRAC_PI_2) {
                return Err(Error::AngleOutOfRange { value });
            }
        }
        Ok(Self { theta, phi })
    }

    pub fn zero() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Input-state angle `ε ∈ [0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputAngle(f64);

impl InputAngle {
    pub fn new(eps: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&eps) {
            return Err(Error::InputAngleOutOfRange(eps));
        }
        Ok(Self(eps))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

pub fn pauli(mu: PauliIndex) -> CMatrix {
    match mu.0 {
        0 => real_matrix(2, &[1.0, 0.0, 0.0, 1.0]),
        1 => real_matrix(2, &[0.0, 1.0, 1.0, 0.0]),
        2 => real_matrix(2, &[0.0, 1.0, -1.0, 0.0]),
        _ => real_matrix(2, &[1.0, 0.0, 0.0, -1.0]),
    }
}

/// `U^{μν} = u^μ ⊗ u^ν`.
pub fn pauli_pair(p: PauliPairIndex) -> CMatrix {
    kron(&pauli(p.mu), &pauli(p.nu))
}

/// `(u^μ ⊗ u^0)(|00> + |11>)/√2`.
pub fn bell(mu: PauliIndex) -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let phi_plus = CVector::from_vec(vec![C64::new(h, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(h, 0.0)]);
    let op = kron(&pauli(mu), &identity(2));
    StateVector::new(op * phi_plus).expect("Bell state is well formed")
}

pub fn rotation_s(theta: f64, phi: f64) -> CMatrix {
    let (ct, st, cp, sp) = (theta.cos(), theta.sin(), phi.cos(), phi.sin());
    #[rustfmt::skip]
    let m = real_matrix(4, &[
        ct,  0.0, 0.0, -st,
        0.0, cp,  -sp, 0.0,
        0.0, sp,  cp,  0.0,
        st,  0.0, 0.0, ct,
    ]);
    m
}

pub fn rotation_t(theta: f64, phi: f64) -> CMatrix {
    let (ct, st, cp, sp) = (theta.cos(), theta.sin(), phi.cos(), phi.sin());
    #[rustfmt::skip]
    let m = real_matrix(4, &[
        ct,  0.0, 0.0, -st,
        0.0, sp,  cp,  0.0,
        0.0, cp,  -sp, 0.0,
        st,  0.0, 0.0, ct,
    ]);
    m
}

/// `S(θ12, φ12)` and `T(0, 0)`: only angle differences are physical.
pub fn rotations(a: AnglePair) -> (CMatrix, CMatrix) {
    (rotation_s(a.theta, a.phi), rotation_t(0.0, 0.0))
}

fn column(m: &CMatrix, j: usize) -> CVector {
    m.column(j).into_owned()
}

/// `|Υ^{00}> = ½ Σ_J |J>_{A3A4} ⊗ |J'>_{B1B2}` with `|J> = S|ij>`, `|J'> = T|ij>`, `J = 2i + j`.
pub fn upsilon00(a: AnglePair) -> StateVector {
    let (s, t) = rotations(a);
    let mut v = CVector::zeros(16);
    for j in 0..4 {
        v += kron_vec(&column(&s, j), &column(&t, j));
    }
    StateVector::new(v * C64::new(0.5, 0.0)).expect("16 amplitudes")
}

/// The ζ-form: `(|ζ0> + |ζ1>)/√2`, written out in computational amplitudes.
pub fn upsilon00_zeta(a: AnglePair) -> StateVector {
    let (ct, st, cp, sp) = (a.theta.cos(), a.theta.sin(), a.phi.cos(), a.phi.sin());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut zeta0 = [0.0; 16];
    zeta0[0b0000] = ct * h;
    zeta0[0b0011] = -st * h;
    zeta0[0b0101] = -sp * h;
    zeta0[0b0110] = cp * h;
    let mut zeta1 = [0.0; 16];
    zeta1[0b1001] = cp * h;
    zeta1[0b1010] = sp * h;
    zeta1[0b1100] = st * h;
    zeta1[0b1111] = ct * h;
    let amps: Vec<f64> = zeta0.iter().zip(zeta1.iter()).map(|(x, y)| (x + y) * h).collect();
    StateVector::from_real(&amps).expect("16 amplitudes")
}

/// `|Υ^{μν}> = (U^{00} ⊗ U^{μν†}) |Υ^{00}>`.
pub fn upsilon(a: AnglePair, p: PauliPairIndex) -> StateVector {
    let op = kron(&identity(4), &dagger(&pauli_pair(p)));
    upsilon00(a).apply(&op)
}

/// The sixteen `Υ^{μν}` in flat-index order.
pub fn upsilon_basis(a: AnglePair) -> Vec<StateVector> {
    let base = upsilon00(a);
    PauliPairIndex::all()
        .map(|p| base.apply(&kron(&identity(4), &dagger(&pauli_pair(p)))))
        .collect()
}

/// `|Π^{00}> = ½ Σ_K |K'>_{A1A2} ⊗ |K>_{A3A4}`.
pub fn pi00(a: AnglePair) -> StateVector {
    let (s, t) = rotations(a);
    let mut v = CVector::zeros(16);
    for k in 0..4 {
        v += kron_vec(&column(&t, k), &column(&s, k));
    }
    StateVector::new(v * C64::new(0.5, 0.0)).expect("16 amplitudes")
}

/// `|Π^{μν}> = (U^{μν}_{A1A2} ⊗ U^{00}_{A3A4}) |Π^{00}>`.
pub fn pi_state(a: AnglePair, p: PauliPairIndex) -> StateVector {
    pi00(a).apply(&kron(&pauli_pair(p), &identity(4)))
}

pub fn pi_basis(a: AnglePair) -> Vec<StateVector> {
    let base = pi00(a);
    PauliPairIndex::all()
        .map(|p| base.apply(&kron(&pauli_pair(p), &identity(4))))
        .collect()
}

/// Equal mixture of `(U^{00} ⊗ U^{μμ†})|Υ^{00}(a)>` over `μ`.
pub fn generalized_smolin(a: AnglePair) -> DensityMatrix {
    let base = upsilon00(a);
    let mut m = CMatrix::zeros(16, 16);
    for mu in PauliIndex::ALL {
        let v = base.apply(&kron(&identity(4), &dagger(&pauli_pair(PauliPairIndex { mu, nu: mu }))));
        m += v.amplitudes() * v.amplitudes().adjoint();
    }
    DensityMatrix::from_matrix_unchecked(m * C64::new(0.25, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedState {
    Ghz4,
    W0,
    W1,
    Smolin,
}

/// Pure named states; `None` for the mixed Smolin state.
pub fn named_vector(kind: NamedState) -> Option<StateVector> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = [0.0; 16];
    match kind {
        NamedState::Ghz4 => {
            amps[0b0000] = h;
            amps[0b1111] = h;
        }
        NamedState::W0 | NamedState::W1 => {
            for i in [0b0001, 0b0010, 0b0100, 0b1000] {
                amps[i] = 0.5;
            }
        }
        NamedState::Smolin => return None,
    }
    let v = StateVector::from_real(&amps).expect("16 amplitudes");
    Some(if kind == NamedState::W1 {
        let flip_first = kron(&kron(&pauli(PauliIndex(1)), &pauli(PauliIndex(0))), &identity(4));
        v.apply(&flip_first)
    } else {
        v
    })
}

pub fn named_state(kind: NamedState) -> DensityMatrix {
    match named_vector(kind) {
        Some(v) => v.projector(),
        None => generalized_smolin(AnglePair::zero()),
    }
}

/// `cos ε |00> + sin ε |11>`.
pub fn input_state(eps: InputAngle) -> StateVector {
    StateVector::from_real(&[eps.0.cos(), 0.0, 0.0, eps.0.sin()]).expect("4 amplitudes")
}

fn check_weight(q: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::WeightOutOfRange(q));
    }
    Ok(())
}

/// `q |Υ^{00}(a)><Υ^{00}(a)| + (1 - q) I/16`.
pub fn iso_mixture(a: AnglePair, q: f64) -> Result<DensityMatrix> {
    check_weight(q)?;
    DensityMatrix::mix(q, &upsilon00(a).projector(), &DensityMatrix::maximally_mixed(16)?)
}

/// `q |Υ^{00}(pure)><Υ^{00}(pure)| + (1 - q) Ξ^GS(smolin)`.
pub fn gs_mixture(pure: AnglePair, smolin: AnglePair, q: f64) -> Result<DensityMatrix> {
    check_weight(q)?;
    DensityMatrix::mix(q, &upsilon00(pure).projector(), &generalized_smolin(smolin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_spectrum, max_abs_diff, max_abs_diff_vec, trace};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_4;

    fn angle_grid(n: usize) -> Vec<AnglePair> {
        let step = std::f64::consts::PI / (n as f64 + 1.0);
        let pts: Vec<f64> = (1..=n).map(|k| -FRAC_PI_2 + step * k as f64).collect();
        pts.iter()
            .flat_map(|&t| pts.iter().map(move |&p| AnglePair::new(t, p).unwrap()))
            .collect()
    }

    fn gram_defect(states: &[StateVector]) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.inner(b) - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    #[test]
    fn pauli_matrices() {
        assert_eq!(pauli(PauliIndex(0)), identity(2));
        assert_eq!(pauli(PauliIndex(2)), real_matrix(2, &[0.0, 1.0, -1.0, 0.0]));
        assert!(PauliIndex::new(4).is_err());
    }

    #[test]
    fn pauli_completeness_relation() {
        // Σ_μ (u^μ†)_{ji} (u^μ)_{mn} = 2 δ_im δ_jn
        for i in 0..2 {
            for j in 0..2 {
                for m in 0..2 {
                    for n in 0..2 {
                        let s: C64 = PauliIndex::ALL
                            .iter()
                            .map(|&mu| dagger(&pauli(mu))[(j, i)] * pauli(mu)[(m, n)])
                            .sum();
                        let expect = if i == m && j == n { 2.0 } else { 0.0 };
                        assert_abs_diff_eq!(s.re, expect);
                        assert_abs_diff_eq!(s.im, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn pauli_pair_trace_orthogonality() {
        assert_eq!(pauli_pair(PauliPairIndex::identity()), identity(4));
        for p in PauliPairIndex::all() {
            for r in PauliPairIndex::all() {
                let t = trace(&(dagger(&pauli_pair(p)) * pauli_pair(r)));
                let expect = if p == r { 4.0 } else { 0.0 };
                assert_abs_diff_eq!(t.re, expect);
                assert_abs_diff_eq!(t.im, 0.0);
            }
        }
    }

    #[test]
    fn pauli_pair_matches_index_oracle() {
        let p = PauliPairIndex::new(1, 3).unwrap();
        let (a, b) = (pauli(p.mu), pauli(p.nu));
        let m = pauli_pair(p);
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(m[(r, c)], a[(r / 2, c / 2)] * b[(r % 2, c % 2)]);
            }
        }
    }

    #[test]
    fn bell_basis() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(bell(PauliIndex(0)), StateVector::from_real(&[h, 0.0, 0.0, h]).unwrap());
        let states: Vec<_> = PauliIndex::ALL.iter().map(|&m| bell(m)).collect();
        assert!(gram_defect(&states) < 1e-15);
    }

    #[test]
    fn computational_basis_from_bell_states() {
        for i in 0..2 {
            for j in 0..2 {
                let mut v = CVector::zeros(4);
                for mu in PauliIndex::ALL {
                    v += bell(mu).amplitudes() * dagger(&pauli(mu))[(j, i)];
                }
                v *= C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                let target = StateVector::basis(4, 2 * i + j).unwrap();
                assert!(max_abs_diff_vec(&v, target.amplitudes()) < 1e-15);
            }
        }
    }

    #[test]
    fn rotations_at_zero() {
        assert_eq!(rotation_s(0.0, 0.0), identity(4));
        #[rustfmt::skip]
        let swap_middle = real_matrix(4, &[
            1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
        ]);
        assert_eq!(rotation_t(0.0, 0.0), swap_middle);
    }

    #[test]
    fn rotations_are_orthogonal() {
        for k in 0..50 {
            let t = -1.5 + 0.061 * k as f64;
            let p = 1.3 - 0.047 * k as f64;
            for m in [rotation_s(t, p), rotation_t(t, p)] {
                assert!(max_abs_diff(&(m.transpose() * &m), &identity(4)) < 1e-14);
            }
        }
    }

    #[test]
    fn upsilon_reduces_to_bell_pair() {
        let v = upsilon00(AnglePair::zero());
        let mut expect = [0.0; 16];
        for i in [0b0000, 0b0110, 0b1001, 0b1111] {
            expect[i] = 0.5;
        }
        assert!(max_abs_diff_vec(v.amplitudes(), StateVector::from_real(&expect).unwrap().amplitudes()) < 1e-15);
    }

    #[test]
    fn upsilon_basis_orthonormal_at_sample_angles() {
        let a = AnglePair::new(0.3, -0.7).unwrap();
        assert!(gram_defect(&upsilon_basis(a)) < 1e-14);
    }

    #[test]
    fn zeta_form_matches_construction() {
        for a in angle_grid(5) {
            assert!(max_abs_diff_vec(upsilon00(a).amplitudes(), upsilon00_zeta(a).amplitudes()) < 1e-14);
        }
    }

    #[test]
    fn bases_orthonormal_and_complete_on_grid() {
        for a in angle_grid(9) {
            for basis in [upsilon_basis(a), pi_basis(a)] {
                assert!(gram_defect(&basis) < 1e-12);
                let mut sum = CMatrix::zeros(16, 16);
                for v in &basis {
                    sum += v.amplitudes() * v.amplitudes().adjoint();
                }
                assert!(max_abs_diff(&sum, &identity(16)) < 1e-12);
            }
        }
    }

    #[test]
    fn upsilon_at_zero_is_paulied_wiring_state() {
        let wiring = upsilon00(AnglePair::zero());
        for p in PauliPairIndex::all() {
            let expect = wiring.apply(&kron(&identity(4), &dagger(&pauli_pair(p))));
            assert_eq!(upsilon(AnglePair::zero(), p), expect);
        }
    }

    #[test]
    fn pi00_projection_returns_quarter_input() {
        let a = AnglePair::new(0.2, 0.4).unwrap();
        let mut rng = crate::rng::RandomStream::from_seed(9).rng();
        let bra: CMatrix = pi00(a).amplitudes().adjoint().resize(1, 16, C64::new(0.0, 0.0));
        let proj = kron(&bra, &identity(4));
        for _ in 0..20 {
            let psi = crate::linalg::haar_state(4, &mut rng).unwrap();
            let full = psi.tensor(&upsilon00(a));
            let out = &proj * full.amplitudes();
            let expect = psi.amplitudes() * C64::new(0.25, 0.0);
            assert!(max_abs_diff_vec(&out, &expect) < 1e-14);
        }
    }

    #[test]
    fn computational_kets_from_pi00() {
        // |ijkl> = ½ Σ_{μν} (u^μ†)_{ki} (u^ν†)_{lj} (U^{μν} T^{-1} ⊗ S^{-1}) |Π^{00}>
        let a = AnglePair::new(0.35, -0.6).unwrap();
        let (s, t) = rotations(a);
        let (s_inv, t_inv) = (s.transpose(), t.transpose());
        let base = pi00(a);
        for idx in 0..16 {
            let (i, j, k, l) = ((idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1);
            let mut v = CVector::zeros(16);
            for p in PauliPairIndex::all() {
                let coef = dagger(&pauli(p.mu))[(k, i)] * dagger(&pauli(p.nu))[(l, j)];
                if coef.norm() == 0.0 {
                    continue;
                }
                let op = kron(&(pauli_pair(p) * &t_inv), &s_inv);
                v += (&op * base.amplitudes()) * coef;
            }
            v *= C64::new(0.5, 0.0);
            let target = StateVector::basis(16, idx).unwrap();
            assert!(max_abs_diff_vec(&v, target.amplitudes()) < 1e-12, "ket {idx}");
        }
    }

    #[test]
    fn smolin_spectrum_and_overlap() {
        let a = AnglePair::new(-0.4, 0.9).unwrap();
        let gs = generalized_smolin(a);
        let s = hermitian_spectrum(gs.matrix()).unwrap();
        for (n, x) in s.iter().enumerate() {
            let expect = if n >= 12 { 0.25 } else { 0.0 };
            assert_abs_diff_eq!(*x, expect, epsilon = 1e-13);
        }
        assert_abs_diff_eq!(gs.expectation(&upsilon00(a)), 0.25, epsilon = 1e-14);
    }

    #[test]
    fn named_states() {
        let ghz = named_state(NamedState::Ghz4);
        assert_abs_diff_eq!(ghz.trace(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ghz.purity(), 1.0, epsilon = 1e-15);
        let w1 = named_vector(NamedState::W1).unwrap();
        for i in 0..16 {
            let expect = if [0b1001, 0b1010, 0b1100, 0b0000].contains(&i) { 0.5 } else { 0.0 };
            assert_abs_diff_eq!(w1.amplitudes()[i].re, expect);
        }
        assert_eq!(named_state(NamedState::Smolin), generalized_smolin(AnglePair::zero()));
    }

    #[test]
    fn input_states() {
        assert_eq!(input_state(InputAngle::new(0.0).unwrap()), StateVector::basis(4, 0).unwrap());
        let v = input_state(InputAngle::new(FRAC_PI_4).unwrap());
        assert!(max_abs_diff_vec(v.amplitudes(), bell(PauliIndex(0)).amplitudes()) < 1e-15);
        assert!(InputAngle::new(-0.1).is_err());
        assert!(InputAngle::new(1.6).is_err());
    }

    #[test]
    fn angle_bounds_are_open() {
        assert!(AnglePair::new(FRAC_PI_2, 0.0).is_err());
        assert!(AnglePair::new(0.0, -FRAC_PI_2).is_err());
        assert!(AnglePair::new(f64::NAN, 0.0).is_err());
        assert!(AnglePair::new(FRAC_PI_2 - 1e-9, -FRAC_PI_2 + 1e-9).is_ok());
    }

    #[test]
    fn iso_mixture_overlap_closed_form() {
        let (alpha, beta) = (0.3, -0.5);
        for &q in &[0.0, 0.25, 7.0 / 15.0, 1.0] {
            let xi = iso_mixture(AnglePair::new(alpha, beta).unwrap(), q).unwrap();
            for a in angle_grid(5) {
                let expect = (1.0 - q) / 16.0
                    + q / 4.0 * ((a.theta() - alpha).cos() + (a.phi() - beta).cos()).powi(2);
                assert_abs_diff_eq!(xi.expectation(&upsilon00(a)), expect, epsilon = 1e-14);
            }
        }
        let zero = iso_mixture(AnglePair::zero(), 0.0).unwrap();
        assert!(max_abs_diff(zero.matrix(), &(identity(16) / C64::new(16.0, 0.0))) < 1e-16);
        let crit = iso_mixture(AnglePair::zero(), 7.0 / 15.0).unwrap();
        assert_abs_diff_eq!(crit.expectation(&upsilon00(AnglePair::zero())), 0.5, epsilon = 1e-15);
        assert!(iso_mixture(AnglePair::zero(), 1.1).is_err());
    }

    #[test]
    fn gs_mixture_overlap_closed_form() {
        let (alpha, beta, gamma, delta) = (0.2, 1.1, -0.3, 0.45);
        let q = 0.37;
        let xi = gs_mixture(AnglePair::new(alpha, beta).unwrap(), AnglePair::new(gamma, delta).unwrap(), q).unwrap();
        for a in angle_grid(7) {
            let (t, p) = (a.theta(), a.phi());
            let expect = q / 4.0 * ((t - alpha).cos() + (p - beta).cos()).powi(2)
                + (1.0 - q) / 8.0 * ((t - gamma).cos().powi(2) + (p - delta).cos().powi(2));
            assert_abs_diff_eq!(xi.expectation(&upsilon00(a)), expect, epsilon = 1e-14);
        }
        let pure = gs_mixture(AnglePair::new(alpha, beta).unwrap(), AnglePair::zero(), 1.0).unwrap();
        assert!(max_abs_diff(pure.matrix(), upsilon00(AnglePair::new(alpha, beta).unwrap()).projector().matrix()) < 1e-16);
        assert!(gs_mixture(AnglePair::zero(), AnglePair::zero(), -0.01).is_err());
    }

    #[test]
    fn gs_mixture_optimum_at_half_arccos_angle() {
        for &q in &[0.1, 0.2, 0.5, 0.8, 0.95] {
            let r = (17.0 * q * q - 2.0 * q + 1.0f64).sqrt();
            let ang = 0.5 * ((1.0 - q) / r).acos();
            let a = AnglePair::new(ang, ang).unwrap();
            let xi = gs_mixture(AnglePair::new(FRAC_PI_4, FRAC_PI_4).unwrap(), AnglePair::zero(), q).unwrap();
            assert_abs_diff_eq!(xi.expectation(&upsilon00(a)), (1.0 + 3.0 * q + r) / 8.0, epsilon = 1e-14);
        }
    }
}
