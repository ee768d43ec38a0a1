//! Sixth-order four-qubit filter expectations built from two-index E-tensors.

use crate::linalg::{kron_all, CMatrix, StateVector};
use crate::states::{pauli, PauliIndex};

/// Free-index slot pairs of the five E-tensors (qubits counted from 0).
pub const E_PATTERNS: [(usize, usize); 5] = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)];

/// Metric used to lower indices. The zero drops index 2 from every contraction.
pub const METRIC_G: [f64; 4] = [-1.0, 1.0, 0.0, 1.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterValues {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

impl FilterValues {
    /// Absolute values, the usual entanglement-measure reading of the filters.
    pub fn moduli(&self) -> FilterValues {
        FilterValues { f1: self.f1.abs(), f2: self.f2.abs(), f3: self.f3.abs() }
    }
}

/// Hermitian Pauli matrices `I, σx, σy, σz`.
fn sigma(i: usize) -> CMatrix {
    let mut m = pauli(PauliIndex::ALL[i]);
    if i == 2 {
        // u² = iσy
        m *= crate::linalg::c(0.0, -1.0);
    }
    m
}

/// `E[i][j] = <ψ|…σ^i…σ^j…|ψ>` with `σ^i, σ^j` on the given slots and `σy` elsewhere.
pub fn e_tensor(psi: &StateVector, slots: (usize, usize)) -> [[f64; 4]; 4] {
    let sig: Vec<CMatrix> = (0..4).map(sigma).collect();
    let mut e = [[0.0; 4]; 4];
    for (i, row) in e.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let ops: Vec<&CMatrix> = (0..4)
                .map(|q| if q == slots.0 { &sig[i] } else if q == slots.1 { &sig[j] } else { &sig[2] })
                .collect();
            let o = kron_all(ops);
            *v = psi.amplitudes().dotc(&(o * psi.amplitudes())).re;
        }
    }
    e
}

pub fn filter_expectations(psi: &StateVector) -> FilterValues {
    let g = METRIC_G;
    let [ea, eb, ec, ed, ee] = E_PATTERNS.map(|s| e_tensor(psi, s));
    let mut f1 = 0.0;
    let mut f2 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let low = g[a] * g[b] * ea[a][b];
            if low == 0.0 {
                continue;
            }
            for c in 0..4 {
                let beta = eb[a][c] * g[c];
                f1 += low * beta * ec[b][c];
                for d in 0..4 {
                    f2 += low * beta * ed[b][d] * g[d] * ee[c][d];
                }
            }
        }
    }
    let norm = |e: &[[f64; 4]; 4]| {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                s += g[i] * g[j] * e[i][j] * e[i][j];
            }
        }
        s
    };
    let f3 = 0.5 * norm(&ea) * norm(&eb) * norm(&ec);
    FilterValues { f1, f2, f3 }
}

/// Closed forms of the filters on the `Υ⁰⁰(θ, φ)` family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterClosedForms {
    pub f1: f64,
    pub f2: f64,
    /// As usually printed, with the factor `(1 − 2 cos2θ cos2φ)`.
    pub f3_printed: f64,
    /// What the contraction actually gives: the factor is `(1 − cos2θ cos2φ)`.
    pub f3: f64,
}

pub fn filter_closed_forms(theta: f64, phi: f64) -> FilterClosedForms {
    let (x, y) = ((2.0 * theta).cos(), (2.0 * phi).cos());
    let (s, t) = ((2.0 * theta).sin().powi(2), (2.0 * phi).sin().powi(2));
    let bracket = 2.0 * (s + t) - (x - y).powi(2);
    FilterClosedForms {
        f1: 0.5 * (x * t + y * s),
        f2: 0.5 * s * t + 0.25 * (1.0 - x * y) * (s + t),
        f3_printed: (1.0 - 2.0 * x * y) * (2.0 + x * y) * bracket / 8.0,
        f3: (1.0 - x * y) * (2.0 + x * y) * bracket / 8.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{named_vector, upsilon00, AnglePair, NamedState};
    use approx::assert_abs_diff_eq;

    #[test]
    fn ghz_and_w() {
        let ghz = filter_expectations(&named_vector(NamedState::Ghz4).unwrap());
        assert_abs_diff_eq!(ghz.f1, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ghz.f2, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ghz.f3, 0.5, epsilon = 1e-12);
        let m = ghz.moduli();
        assert_abs_diff_eq!(m.f1, 1.0, epsilon = 1e-12);
        for w in [NamedState::W0, NamedState::W1] {
            let f = filter_expectations(&named_vector(w).unwrap());
            assert_abs_diff_eq!(f.f1, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(f.f2, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(f.f3, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn vanish_at_zero_angles() {
        let f = filter_expectations(&upsilon00(AnglePair::zero()));
        assert_abs_diff_eq!(f.f1, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.f2, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.f3, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn contraction_matches_closed_forms() {
        let grid = [-1.2, -0.6, 0.0, 0.45, 1.1];
        for &t in &grid {
            for &p in &grid {
                let f = filter_expectations(&upsilon00(AnglePair::new(t, p).unwrap()));
                let c = filter_closed_forms(t, p);
                assert_abs_diff_eq!(f.f1, c.f1, epsilon = 1e-10);
                assert_abs_diff_eq!(f.f2, c.f2, epsilon = 1e-10);
                assert_abs_diff_eq!(f.f3, c.f3, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn printed_third_filter_differs_off_axis() {
        let c = filter_closed_forms(0.3, 0.5);
        let f = filter_expectations(&upsilon00(AnglePair::new(0.3, 0.5).unwrap()));
        assert!((f.f3 - c.f3_printed).abs() > 1e-3);
    }
}
