//! Teleportation fidelities and their Haar Monte Carlo cross-checks.

use crate::channel::{RecoverySet2, RecoverySet4};
use crate::error::{Error, Result};
use crate::linalg::{dagger, haar_state, identity, kron, trace, CMatrix, CVector, DensityMatrix, C64};
use crate::par::{map_indexed, Exec};
use crate::rng::RandomStream;
use crate::states::{bell, pauli, pauli_pair, upsilon00, AnglePair, PauliIndex, PauliPairIndex};

fn check_dim(found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `1/3 + 1/6 Σ_μ <Ψ⁰|(I ⊗ u^μ† r^μ) χ (I ⊗ r^μ† u^μ)|Ψ⁰>`.
pub fn fidelity_single(chi: &DensityMatrix, r: &RecoverySet2) -> Result<f64> {
    check_dim(chi.dim(), 4)?;
    let phi = bell(PauliIndex::ALL[0]);
    let mut s = 0.0;
    for mu in PauliIndex::ALL {
        let w = kron(&identity(2), &(dagger(r.get(mu)) * pauli(mu)));
        s += chi.conjugate_by(&dagger(&w)).expectation(&phi);
    }
    Ok(1.0 / 3.0 + s / 6.0)
}

/// `1/5 + 1/20 Σ_{μν} <Υ⁰⁰|(I ⊗ U^{μν†} R^{μν}) Ξ (I ⊗ R^{μν†} U^{μν})|Υ⁰⁰>`.
pub fn fidelity_pair(xi: &DensityMatrix, a: AnglePair, r: &RecoverySet4) -> Result<f64> {
    check_dim(xi.dim(), 16)?;
    let ups = upsilon00(a);
    let mut s = 0.0;
    for p in PauliPairIndex::all() {
        let w = kron(&identity(4), &(dagger(r.get(p)) * pauli_pair(p)));
        s += xi.conjugate_by(&dagger(&w)).expectation(&ups);
    }
    Ok(0.2 + s / 20.0)
}

/// Matrix of a linear map on `d x d` matrices acting on row-major vectorizations.
///
/// The map is only ever called on density matrices: the `d²` states
/// `|i><i|`, `(|i>+|j>)(<i|+<j|)/2` and `(|i>+i|j>)(<i|−i<j|)/2` span every
/// matrix unit.
pub fn superoperator<F>(d: usize, map: F) -> Result<CMatrix>
where
    F: Fn(&DensityMatrix) -> Result<DensityMatrix>,
{
    let unit = |i: usize, j: usize| {
        let mut m = CMatrix::zeros(d, d);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    };
    let diag: Vec<CMatrix> = (0..d)
        .map(|i| map(&DensityMatrix::new(unit(i, i))?).map(DensityMatrix::into_matrix))
        .collect::<Result<_>>()?;
    let mut s = CMatrix::zeros(d * d, d * d);
    let mut put = |i: usize, j: usize, out: &CMatrix| {
        for k in 0..d {
            for l in 0..d {
                s[(k * d + l, i * d + j)] = out[(k, l)];
            }
        }
    };
    for i in 0..d {
        put(i, i, &diag[i]);
        for j in 0..d {
            if i == j {
                continue;
            }
            let plus = (unit(i, i) + unit(i, j) + unit(j, i) + unit(j, j)) * C64::new(0.5, 0.0);
            let im = (unit(i, i) + unit(i, j) * C64::new(0.0, -1.0) + unit(j, i) * C64::new(0.0, 1.0) + unit(j, j))
                * C64::new(0.5, 0.0);
            let p = map(&DensityMatrix::new(plus)?)?.into_matrix();
            let q = map(&DensityMatrix::new(im)?)?.into_matrix();
            // |i><j| = P+ + i·P_i − (1+i)/2 (|i><i| + |j><j|)
            let out = p + q * C64::new(0.0, 1.0) - (&diag[i] + &diag[j]) * C64::new(0.5, 0.5);
            put(i, j, &out);
        }
    }
    Ok(s)
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl McEstimate {
    fn from_sums(sum: f64, sum_sq: f64, n: usize) -> Self {
        let nf = n as f64;
        let mean = sum / nf;
        let var = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
        Self { mean, std_error: (var / nf).sqrt(), samples: n }
    }

    /// `|mean − value| ≤ k·SE`.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_error
    }
}

/// Samples per random stream. Part of the reproducibility contract.
const BLOCK: usize = 4096;

/// Runs `f` on `samples` Haar-random pure states of dimension `d`, in fixed
/// blocks each owning `stream.child(block)`, and returns per-sample values in order.
fn haar_blocks<T, F>(d: usize, samples: usize, stream: RandomStream, exec: Exec, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&CVector) -> T + Sync + Send,
{
    let blocks = samples.div_ceil(BLOCK);
    let out = map_indexed(exec, blocks, |b| -> Result<Vec<T>> {
        let mut rng = stream.child(b as u64).rng();
        let n = BLOCK.min(samples - b * BLOCK);
        (0..n)
            .map(|_| {
                let psi = haar_state(d, &mut rng)?.into_amplitudes();
                Ok(f(&psi))
            })
            .collect()
    });
    let mut all = Vec::with_capacity(samples);
    for block in out {
        all.extend(block?);
    }
    Ok(all)
}

/// Haar average of `<ψ|Λ(|ψ><ψ|)|ψ>` for a map given by its [`superoperator`].
pub fn fidelity_monte_carlo(
    superop: &CMatrix,
    d: usize,
    samples: usize,
    stream: RandomStream,
    exec: Exec,
) -> Result<McEstimate> {
    check_dim(superop.nrows(), d * d)?;
    if samples < 2 {
        return Err(Error::InvalidArgument("at least two samples are needed".into()));
    }
    let values = haar_blocks(d, samples, stream, exec, |psi| {
        let x = CVector::from_fn(d * d, |k, _| psi[k / d] * psi[k % d].conj());
        x.dotc(&(superop * &x)).re
    })?;
    let (sum, sum_sq) = values.iter().fold((0.0, 0.0), |(s, q), v| (s + v, q + v * v));
    Ok(McEstimate::from_sums(sum, sum_sq, samples))
}

/// Analytic and sampled values of `∫dΨ <Ψ|A|Ψ><Ψ|B|Ψ>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoDesignCheck {
    /// `(tr A tr B + tr AB) / (d(d+1))`, i.e. `/20` for two qubits.
    pub analytic: C64,
    pub empirical_re: McEstimate,
    pub empirical_im: McEstimate,
}

impl TwoDesignCheck {
    pub fn agrees(&self, k: f64) -> bool {
        self.empirical_re.agrees_with(self.analytic.re, k) && self.empirical_im.agrees_with(self.analytic.im, k)
    }
}

pub fn haar_two_design_check(
    a: &CMatrix,
    b: &CMatrix,
    samples: usize,
    stream: RandomStream,
    exec: Exec,
) -> Result<TwoDesignCheck> {
    let d = a.nrows();
    check_dim(b.nrows(), d)?;
    if samples < 1000 {
        return Err(Error::InvalidArgument(format!("two-design check needs at least 1000 samples, got {samples}")));
    }
    let analytic = (trace(a) * trace(b) + trace(&(a * b))) / C64::new((d * (d + 1)) as f64, 0.0);
    let values = haar_blocks(d, samples, stream, exec, |psi| psi.dotc(&(a * psi)) * psi.dotc(&(b * psi)))?;
    let stats = |part: fn(&C64) -> f64| {
        let (s, q) = values.iter().map(part).fold((0.0, 0.0), |(s, q), v| (s + v, q + v * v));
        McEstimate::from_sums(s, q, samples)
    };
    Ok(TwoDesignCheck { analytic, empirical_re: stats(|z| z.re), empirical_im: stats(|z| z.im) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{bichannel_e1, channel_t0, channel_t1};
    use crate::linalg::{ginibre_density, haar_unitary, max_abs_diff};
    use crate::metrics::singlet_fraction;
    use crate::states::{generalized_smolin, named_state, NamedState};
    use approx::assert_abs_diff_eq;

    #[test]
    fn perfect_resources() {
        let chi = bell(PauliIndex::ALL[0]).projector();
        assert_abs_diff_eq!(fidelity_single(&chi, &RecoverySet2::paulis()).unwrap(), 1.0, epsilon = 1e-12);
        let a = AnglePair::new(0.4, -0.9).unwrap();
        let xi = upsilon00(a).projector();
        assert_abs_diff_eq!(fidelity_pair(&xi, a, &RecoverySet4::paulis()).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn smolin_pair_fidelity() {
        let xi = named_state(NamedState::Smolin);
        let f = fidelity_pair(&xi, AnglePair::zero(), &RecoverySet4::paulis()).unwrap();
        assert_abs_diff_eq!(f, 0.4, epsilon = 1e-12);
        let g = generalized_smolin(AnglePair::zero());
        assert_abs_diff_eq!(fidelity_pair(&g, AnglePair::zero(), &RecoverySet4::paulis()).unwrap(), 0.4, epsilon = 1e-12);
    }

    #[test]
    fn single_fidelity_follows_singlet_fraction() {
        let stream = RandomStream::new(11, 0);
        for k in 0..20 {
            let mut rng = stream.child(k).rng();
            let chi = ginibre_density(4, 1 + (k as usize % 4), &mut rng).unwrap();
            let f = fidelity_single(&chi, &RecoverySet2::paulis()).unwrap();
            assert_abs_diff_eq!(f, 1.0 / 3.0 + 2.0 * singlet_fraction(&chi).unwrap() / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pair_fidelity_with_paulis_uses_the_overlap() {
        let stream = RandomStream::new(12, 0);
        for k in 0..50 {
            let mut rng = stream.child(k).rng();
            let xi = ginibre_density(16, 1 + (k as usize % 16), &mut rng).unwrap();
            let a = AnglePair::new(0.3 * (k as f64).sin(), 1.2 * (k as f64).cos()).unwrap();
            let f = fidelity_pair(&xi, a, &RecoverySet4::paulis()).unwrap();
            assert_abs_diff_eq!(f, 0.2 + 0.8 * xi.expectation(&upsilon00(a)), epsilon = 1e-12);
        }
    }

    #[test]
    fn superoperator_reproduces_the_map() {
        let mut rng = RandomStream::new(13, 0).rng();
        let chi = ginibre_density(4, 2, &mut rng).unwrap();
        let s = superoperator(2, |rho| channel_t0(&chi, rho)).unwrap();
        let rho = ginibre_density(2, 2, &mut rng).unwrap();
        let direct = channel_t0(&chi, &rho).unwrap().into_matrix();
        let v = CVector::from_fn(4, |k, _| rho.matrix()[(k / 2, k % 2)]);
        let w = s * v;
        let via = CMatrix::from_fn(2, 2, |i, j| w[i * 2 + j]);
        assert!(max_abs_diff(&direct, &via) < 1e-14);
    }

    #[test]
    fn single_fidelity_monte_carlo() {
        let stream = RandomStream::new(14, 0);
        let mut rng = stream.rng();
        let chi = ginibre_density(4, 3, &mut rng).unwrap();
        let r = RecoverySet2::new((0..4).map(|_| haar_unitary(2, &mut rng)).collect()).unwrap();
        let s = superoperator(2, |rho| channel_t1(&chi, rho, &r)).unwrap();
        let mc = fidelity_monte_carlo(&s, 2, 20_000, stream.child(1), Exec::Parallel).unwrap();
        assert!(mc.agrees_with(fidelity_single(&chi, &r).unwrap(), 4.0), "{mc:?}");
    }

    #[test]
    fn pair_fidelity_monte_carlo() {
        let stream = RandomStream::new(15, 0);
        let mut rng = stream.rng();
        let xi = ginibre_density(16, 5, &mut rng).unwrap();
        let a = AnglePair::new(0.2, -0.5).unwrap();
        let r = RecoverySet4::new((0..16).map(|_| haar_unitary(4, &mut rng)).collect()).unwrap();
        let s = superoperator(4, |rho| bichannel_e1(&xi, rho, a, &r)).unwrap();
        let mc = fidelity_monte_carlo(&s, 4, 20_000, stream.child(1), Exec::Parallel).unwrap();
        assert!(mc.agrees_with(fidelity_pair(&xi, a, &r).unwrap(), 4.0), "{mc:?}");
    }

    #[test]
    fn two_design_trace_arithmetic() {
        let stream = RandomStream::new(16, 0);
        let id = identity(4);
        let c = haar_two_design_check(&id, &id, 1000, stream, Exec::Sequential).unwrap();
        assert_abs_diff_eq!(c.analytic.re, 1.0, epsilon = 1e-15);
        let u = pauli_pair(PauliPairIndex::new(1, 1).unwrap());
        let c = haar_two_design_check(&u, &dagger(&u), 1000, stream, Exec::Sequential).unwrap();
        assert_abs_diff_eq!(c.analytic.re, 0.2, epsilon = 1e-15);
        assert!(c.agrees(4.0));
    }

    #[test]
    fn two_design_random_unitaries() {
        let stream = RandomStream::new(17, 0);
        let mut rng = stream.rng();
        let a = haar_unitary(4, &mut rng);
        let b = haar_unitary(4, &mut rng);
        let c = haar_two_design_check(&a, &b, 20_000, stream.child(1), Exec::Parallel).unwrap();
        assert!(c.agrees(4.0), "{c:?}");
    }

    #[test]
    fn monte_carlo_is_exec_independent() {
        let chi = bell(PauliIndex::ALL[1]).projector();
        let s = superoperator(2, |rho| channel_t0(&chi, rho)).unwrap();
        let p = fidelity_monte_carlo(&s, 2, 9000, RandomStream::new(1, 2), Exec::Parallel).unwrap();
        let q = fidelity_monte_carlo(&s, 2, 9000, RandomStream::new(1, 2), Exec::Sequential).unwrap();
        assert_eq!(p.mean.to_bits(), q.mean.to_bits());
    }
}
