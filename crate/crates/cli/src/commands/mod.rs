pub mod conjecture;
pub mod oracle;
pub mod reproduce;
pub mod scan;

use std::f64::consts::FRAC_PI_2;

use qteleport_core::channel::bichannel_e0;
use qteleport_core::linalg::{DensityMatrix, SubsystemMask};
use qteleport_core::metrics::negativity;
use qteleport_core::states::{input_state, AnglePair, InputAngle};
use qteleport_core::Result;

/// `n` evenly spaced input angles on `[0, π/2]`.
pub fn eps_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| FRAC_PI_2 * (k as f64 / (n as f64 - 1.0))).collect()
}

/// `n` evenly spaced weights on `[0, 1]`.
pub fn q_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 / (n as f64 - 1.0)).collect()
}

/// `n` evenly spaced angles strictly inside `(−π/2, π/2)`.
pub fn open_angle_grid(n: usize) -> Vec<f64> {
    // Symmetric about zero, and hits zero exactly for odd `n`.
    let m = n as f64 + 1.0;
    (1..=n).map(|k| (2.0 * k as f64 - m) * std::f64::consts::PI / (2.0 * m)).collect()
}

/// Resource angles of the isotropic family; any interior pair works.
pub const ISO_ANGLES: (f64, f64) = (0.3, -0.7);

/// Optimal `θ = φ` for `q Υ⁰⁰(π/4, π/4) + (1 − q) Smolin`.
pub fn gs_optimum_angle(q: f64) -> f64 {
    0.5 * ((1.0 - q) / (17.0 * q * q - 2.0 * q + 1.0).sqrt()).acos()
}

/// The state Bob holds after `cos ε|00> + sin ε|11>` goes through the depolarizing bichannel.
pub fn teleported(xi: &DensityMatrix, a: AnglePair, eps: f64) -> Result<DensityMatrix> {
    bichannel_e0(xi, &input_state(InputAngle::new(eps)?).projector(), a)
}

/// Negativity of the teleported input state across `B1 : B2`.
pub fn teleported_negativity(xi: &DensityMatrix, a: AnglePair, eps: f64) -> Result<f64> {
    negativity(&teleported(xi, a, eps)?, &SubsystemMask::new(vec![true, false]))
}

/// Root of a function that changes sign on `[lo, hi]`, to `tol` in the argument.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
