//! Maximization over the open square of angle differences.

use std::f64::consts::FRAC_PI_2;

use super::NelderMead;

/// Grid-then-simplex search over `(-π/2, π/2)²`.
#[derive(Debug, Clone)]
pub struct AngleSearch {
    /// Points per axis of the coarse grid.
    pub grid_points: usize,
    /// Distance of the grid from the open boundary.
    pub grid_margin: f64,
    /// Number of best grid cells refined by the simplex.
    pub refine_from: usize,
    pub xtol: f64,
    pub max_evals: usize,
    /// Objective spread along an axis below which that axis counts as flat.
    pub flat_tol: f64,
}

impl Default for AngleSearch {
    fn default() -> Self {
        Self { grid_points: 61, grid_margin: 0.01, refine_from: 3, xtol: 1e-9, max_evals: 20_000, flat_tol: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleOptimum {
    pub value: f64,
    pub theta: f64,
    pub phi: f64,
    pub evaluations: usize,
    pub flat_theta: bool,
    pub flat_phi: bool,
}

/// Keeps simplex iterates strictly inside the open square.
const EDGE: f64 = 1e-9;

pub fn maximize_over_angles<F: Fn(f64, f64) -> f64>(f: F, search: &AngleSearch) -> AngleOptimum {
    let n = search.grid_points.max(2);
    let lo = -FRAC_PI_2 + search.grid_margin;
    let step = (2.0 * (FRAC_PI_2 - search.grid_margin)) / (n as f64 - 1.0);
    let axis: Vec<f64> = (0..n).map(|k| lo + step * k as f64).collect();

    let mut cells: Vec<(f64, f64, f64)> = Vec::with_capacity(n * n);
    for &t in &axis {
        for &p in &axis {
            cells.push((f(t, p), t, p));
        }
    }
    let mut evaluations = cells.len();
    // Descending value; ties go to the lexicographically smallest angles.
    cells.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2)));

    let nm = NelderMead {
        xtol: search.xtol,
        max_evals: search.max_evals,
        initial_step: step,
        lower: vec![-FRAC_PI_2 + EDGE; 2],
        upper: vec![FRAC_PI_2 - EDGE; 2],
    };
    let mut best: Option<(f64, f64, f64)> = None;
    for &(_, t, p) in cells.iter().take(search.refine_from.max(1)) {
        let r = nm.maximize(|x| f(x[0], x[1]), &[t, p]);
        evaluations += r.evaluations;
        let cand = (f(r.x[0], r.x[1]), r.x[0], r.x[1]);
        evaluations += 1;
        best = Some(match best {
            None => cand,
            Some(b) => {
                let better = cand.0 > b.0 || (cand.0 == b.0 && (cand.1, cand.2) < (b.1, b.2));
                if better { cand } else { b }
            }
        });
    }
    let (mut value, mut theta, mut phi) = best.expect("at least one refinement");

    // Flat directions: report the representative with the smallest magnitude.
    let probe: Vec<f64> = (0..=32).map(|k| -FRAC_PI_2 + EDGE + (FRAC_PI_2 - EDGE) * k as f64 / 16.0).collect();
    let spread = |g: &dyn Fn(f64) -> f64| {
        let vals: Vec<f64> = probe.iter().map(|&x| g(x)).collect();
        vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - vals.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    let flat_phi = spread(&|x| f(theta, x)) <= search.flat_tol;
    evaluations += probe.len();
    if flat_phi {
        phi = 0.0;
    }
    let flat_theta = spread(&|x| f(x, phi)) <= search.flat_tol;
    evaluations += probe.len();
    if flat_theta {
        theta = 0.0;
    }
    if flat_phi || flat_theta {
        value = f(theta, phi);
        evaluations += 1;
    }
    AngleOptimum { value, theta, phi, evaluations, flat_theta, flat_phi }
}
