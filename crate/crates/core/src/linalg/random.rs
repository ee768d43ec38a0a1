//! Haar and Ginibre sampling.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{CMatrix, CVector, DensityMatrix, StateVector, C64};
use crate::error::{Error, Result};
use crate::rng::RandomStream;

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    // Column-major fill order is part of the reproducibility contract.
    let mut m = CMatrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = complex_normal(rng);
        }
    }
    m
}

/// Haar-random unit vector.
pub fn haar_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<StateVector> {
    let v = CVector::from_fn(dim, |_, _| complex_normal(rng));
    StateVector::normalized(v)
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of `R`'s diagonal
/// moved into `Q` so the distribution is exactly Haar.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let z = ginibre(dim, dim, rng);
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `G G^dagger / tr(G G^dagger)` with `G` a `dim x rank` Ginibre matrix.
pub fn ginibre_density<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    if rank == 0 || rank > dim {
        return Err(Error::Rank { rank, dim });
    }
    let g = ginibre(dim, rank, rng);
    let m = &g * g.adjoint();
    let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    DensityMatrix::from_unnormalized(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Pure,
    Unitary,
    Density { rank: usize },
}

#[derive(Debug, Clone)]
pub enum Sample {
    Pure(StateVector),
    Unitary(CMatrix),
    Density(DensityMatrix),
}

/// Draws one sample of `kind` from the given stream.
pub fn sample_random(kind: SampleKind, dim: usize, stream: RandomStream) -> Result<Sample> {
    let mut rng = stream.rng();
    Ok(match kind {
        SampleKind::Pure => Sample::Pure(haar_state(dim, &mut rng)?),
        SampleKind::Unitary => Sample::Unitary(haar_unitary(dim, &mut rng)),
        SampleKind::Density { rank } => Sample::Density(ginibre_density(dim, rank, &mut rng)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_spectrum, is_unitary};

    #[test]
    fn pure_samples_are_normalized() {
        let mut rng = RandomStream::from_seed(3).rng();
        for dim in [2, 4, 16, 64] {
            let v = haar_state(dim, &mut rng).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unitary_samples_are_unitary() {
        let mut rng = RandomStream::from_seed(4).rng();
        for dim in [2, 4, 16] {
            assert!(is_unitary(&haar_unitary(dim, &mut rng), 1e-10));
        }
    }

    #[test]
    fn density_rank_and_validity() {
        let mut rng = RandomStream::from_seed(5).rng();
        let rho = ginibre_density(16, 3, &mut rng).unwrap();
        let s = hermitian_spectrum(rho.matrix()).unwrap();
        assert_eq!(s.iter().filter(|&&x| x > 1e-10).count(), 3);
        assert!(ginibre_density(4, 0, &mut rng).is_err());
        assert!(ginibre_density(4, 5, &mut rng).is_err());
    }

    #[test]
    fn sampling_is_reproducible() {
        let s = RandomStream::new(11, 2);
        let a = match sample_random(SampleKind::Unitary, 4, s).unwrap() {
            Sample::Unitary(u) => u,
            _ => unreachable!(),
        };
        let b = match sample_random(SampleKind::Unitary, 4, s).unwrap() {
            Sample::Unitary(u) => u,
            _ => unreachable!(),
        };
        assert_eq!(a, b);
    }

    #[test]
    fn haar_first_moment() {
        // E<psi|A|psi> = tr(A)/dim; check within 4 standard errors.
        let a = CMatrix::from_fn(4, 4, |i, j| {
            if i == j { C64::new(i as f64 + 1.0, 0.0) } else { C64::new(0.3, 0.1 * (i as f64 - j as f64)) }
        });
        let a = (&a + a.adjoint()) * C64::new(0.5, 0.0);
        let mut rng = RandomStream::from_seed(17).rng();
        let n = 100_000;
        let xs: Vec<f64> = (0..n)
            .map(|_| {
                let v = haar_state(4, &mut rng).unwrap();
                v.amplitudes().dotc(&(&a * v.amplitudes())).re
            })
            .collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        let se = (var / n as f64).sqrt();
        let expected = 10.0 / 4.0;
        assert!((mean - expected).abs() <= 4.0 * se, "mean {mean} se {se}");
    }
}
