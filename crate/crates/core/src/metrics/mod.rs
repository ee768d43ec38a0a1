//! Scalar diagnostics: singlet fractions, fidelities, negativity and filters.

mod filters;
mod fidelity;
mod singlet;

pub use filters::{filter_closed_forms, filter_expectations, e_tensor, FilterClosedForms, FilterValues, E_PATTERNS, METRIC_G};
pub use fidelity::{
    fidelity_monte_carlo, fidelity_pair, fidelity_single, haar_two_design_check, superoperator, McEstimate,
    TwoDesignCheck,
};
pub use singlet::{
    fidelity_from_gsf, generalized_singlet_fraction, generalized_singlet_fraction_with, gsf_objective,
    max_generalized_singlet_fraction, max_singlet_fraction, singlet_fraction, OptResult,
};

use crate::error::Result;
use crate::linalg::{partial_transpose, trace_norm, DensityMatrix, SubsystemMask};

/// Fixed reference constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricContext {
    /// Best one-qubit fidelity without entanglement.
    pub classical_fidelity_1q: f64,
    /// Best two-qubit fidelity without entanglement.
    pub classical_fidelity_2q: f64,
    pub g_crit: f64,
    pub conjecture_threshold: f64,
}

pub const METRICS: MetricContext = MetricContext {
    classical_fidelity_1q: 2.0 / 3.0,
    classical_fidelity_2q: 3.0 / 5.0,
    g_crit: 0.5,
    conjecture_threshold: 0.25,
};

/// `‖ρ^{T_cut}‖₁ − 1`, twice the magnitude of the negative part of the spectrum.
pub fn negativity(rho: &DensityMatrix, cut: &SubsystemMask) -> Result<f64> {
    let pt = partial_transpose(rho.matrix(), cut)?;
    Ok(trace_norm(&pt)? - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::StateVector;
    use crate::states::{input_state, InputAngle};
    use approx::assert_abs_diff_eq;

    #[test]
    fn input_state_negativity_is_sin_2eps() {
        for k in 0..=8 {
            let eps = std::f64::consts::FRAC_PI_2 * k as f64 / 8.0;
            let rho = input_state(InputAngle::new(eps).unwrap()).projector();
            let n = negativity(&rho, &SubsystemMask::new(vec![true, false])).unwrap();
            assert_abs_diff_eq!(n, (2.0 * eps).sin(), epsilon = 1e-12);
        }
    }

    #[test]
    fn product_state_has_zero_negativity() {
        let a = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let b = StateVector::from_real(&[0.8, -0.6]).unwrap();
        let rho = a.tensor(&b).projector();
        let n = negativity(&rho, &SubsystemMask::new(vec![true, false])).unwrap();
        assert_abs_diff_eq!(n, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn constants() {
        assert_eq!(METRICS.classical_fidelity_2q, 0.6);
        assert_eq!(METRICS.conjecture_threshold, 0.25);
    }
}
