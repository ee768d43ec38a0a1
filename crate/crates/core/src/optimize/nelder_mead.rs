/// Box-constrained Nelder–Mead minimizer.
///
/// Trial points are clamped into `[lower, upper]`. Terminates when every
/// vertex lies within `xtol` of the best one (max-norm) or after `max_evals`.
#[derive(Debug, Clone)]
pub struct NelderMead {
    pub xtol: f64,
    pub max_evals: usize,
    pub initial_step: f64,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn unbounded(dim: usize, initial_step: f64, xtol: f64, max_evals: usize) -> Self {
        Self {
            xtol,
            max_evals,
            initial_step,
            lower: vec![f64::NEG_INFINITY; dim],
            upper: vec![f64::INFINITY; dim],
        }
    }

    fn clamp(&self, x: &mut [f64]) {
        for (i, v) in x.iter_mut().enumerate() {
            *v = v.clamp(self.lower[i], self.upper[i]);
        }
    }

    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, start: &[f64]) -> SimplexResult {
        let n = start.len();
        let mut evals = 0usize;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            f(x)
        };

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        let mut x0 = start.to_vec();
        self.clamp(&mut x0);
        simplex.push(x0.clone());
        for i in 0..n {
            let mut v = x0.clone();
            v[i] += self.initial_step;
            if v[i] > self.upper[i] {
                v[i] = x0[i] - self.initial_step;
            }
            self.clamp(&mut v);
            simplex.push(v);
        }
        let mut values: Vec<f64> = simplex.iter().map(|v| eval(v, &mut evals)).collect();

        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
        let mut converged = false;
        loop {
            // Stable sort keeps earlier vertices first among ties.
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            let diameter = simplex[1..]
                .iter()
                .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if diameter < self.xtol {
                converged = true;
                break;
            }
            if evals >= self.max_evals {
                break;
            }

            let centroid: Vec<f64> = (0..n)
                .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
                .collect();
            let towards = |coef: f64, from: &[f64]| -> Vec<f64> {
                let mut p: Vec<f64> = centroid.iter().zip(from).map(|(c, w)| c + coef * (c - w)).collect();
                self.clamp(&mut p);
                p
            };

            let worst = simplex[n].clone();
            let xr = towards(alpha, &worst);
            let fr = eval(&xr, &mut evals);
            if fr < values[0] {
                let xe = towards(gamma, &worst);
                let fe = eval(&xe, &mut evals);
                if fe < fr {
                    simplex[n] = xe;
                    values[n] = fe;
                } else {
                    simplex[n] = xr;
                    values[n] = fr;
                }
                continue;
            }
            if fr < values[n - 1] {
                simplex[n] = xr;
                values[n] = fr;
                continue;
            }
            let (xc, fc) = if fr < values[n] {
                let xc = towards(rho, &xr);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = towards(-rho, &worst);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc < values[n].min(fr) {
                simplex[n] = xc;
                values[n] = fc;
                continue;
            }
            // shrink towards the best vertex
            let best = simplex[0].clone();
            for i in 1..=n {
                let mut v: Vec<f64> = best.iter().zip(&simplex[i]).map(|(b, x)| b + sigma * (x - b)).collect();
                self.clamp(&mut v);
                values[i] = eval(&v, &mut evals);
                simplex[i] = v;
            }
        }
        SimplexResult { x: simplex[0].clone(), fx: values[0], evaluations: evals, converged }
    }

    pub fn maximize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, start: &[f64]) -> SimplexResult {
        let mut r = self.minimize(|x| -f(x), start);
        r.fx = -r.fx;
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rosenbrock() {
        let nm = NelderMead::unbounded(2, 0.5, 1e-10, 20_000);
        let r = nm.minimize(|x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2), &[-1.2, 1.0]);
        assert!(r.converged);
        assert_abs_diff_eq!(r.x[0], 1.0, epsilon = 1e-7);
        assert_abs_diff_eq!(r.x[1], 1.0, epsilon = 1e-7);
    }

    #[test]
    fn respects_bounds() {
        let nm = NelderMead { xtol: 1e-12, max_evals: 5000, initial_step: 0.1, lower: vec![0.5], upper: vec![2.0] };
        let r = nm.minimize(|x| x[0] * x[0], &[1.5]);
        assert_abs_diff_eq!(r.x[0], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn maximize_trig() {
        let nm = NelderMead::unbounded(2, 0.1, 1e-11, 5000);
        let r = nm.maximize(|x| (x[0] - 0.3).cos() + (x[1] + 0.2).cos(), &[0.0, 0.0]);
        assert_abs_diff_eq!(r.fx, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.x[0], 0.3, epsilon = 1e-7);
    }
}
