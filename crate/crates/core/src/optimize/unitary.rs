//! Maximization of `Σ_λ p_λ |<υ|(I ⊗ U)|ξ_λ>|²` over `U ∈ U(d)`.
//!
//! The objective is convex in `U`, so its linearization at `U_k` is a global
//! minorant. Maximizing the linearization gives `U_{k+1}`, the unitary polar
//! factor of the gradient, and the objective never decreases along the way.
//! Several starts (identity plus Haar-random ones) guard against poor local
//! maxima; the best point is then polished by a simplex search over
//! `U exp(iH)`. None of this is a certificate of global optimality.

use crate::error::Result;
use crate::linalg::{hermitian_eigen, haar_unitary, CMatrix, CVector, C64};
use crate::par::{map_indexed, Exec};
use crate::rng::RandomStream;

use super::NelderMead;

#[derive(Debug, Clone)]
pub struct LocalUnitarySearch {
    /// Haar-random starts in addition to the identity.
    pub restarts: usize,
    pub max_iterations: usize,
    /// Stop when an iteration gains less than this.
    pub tol: f64,
    /// Simplex evaluations spent polishing the best start; 0 disables it.
    pub polish_evals: usize,
}

impl Default for LocalUnitarySearch {
    fn default() -> Self {
        Self { restarts: 32, max_iterations: 2000, tol: 1e-15, polish_evals: 4000 }
    }
}

#[derive(Debug, Clone)]
pub struct UnitaryOptimum {
    pub value: f64,
    pub unitary: CMatrix,
    /// 0 is the identity start, `k` the `k`-th Haar start.
    pub start: usize,
    pub evaluations: usize,
}

/// Hermitian `d x d` matrix from `d²` real parameters:
/// the diagonal first, then real and imaginary parts of the upper triangle.
pub fn hermitian_from_params(params: &[f64], d: usize) -> CMatrix {
    assert_eq!(params.len(), d * d);
    let mut h = CMatrix::zeros(d, d);
    for i in 0..d {
        h[(i, i)] = C64::new(params[i], 0.0);
    }
    let mut k = d;
    for i in 0..d {
        for j in i + 1..d {
            let z = C64::new(params[k], params[k + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    h
}

/// `exp(iH)` for Hermitian `H`, through its eigendecomposition.
pub fn expi_hermitian(h: &CMatrix) -> Result<CMatrix> {
    let e = hermitian_eigen(h)?;
    let d = h.nrows();
    let phases = CMatrix::from_fn(d, d, |i, j| if i == j { C64::from_polar(1.0, e.values[i]) } else { C64::new(0.0, 0.0) });
    Ok(&e.vectors * phases * e.vectors.adjoint())
}

struct Objective {
    /// `(p_λ, L_λ)` with `<υ|(I ⊗ U)|ξ_λ> = tr(L_λ U)`.
    terms: Vec<(f64, CMatrix)>,
    d: usize,
}

impl Objective {
    fn new(target: &CVector, ensemble: &[(f64, CVector)], d: usize) -> Self {
        let da = target.len() / d;
        let reshape = |v: &CVector| CMatrix::from_fn(da, d, |a, b| v[a * d + b]);
        let t = reshape(target);
        let terms = ensemble
            .iter()
            .map(|(p, xi)| (*p, (t.adjoint() * reshape(xi)).transpose()))
            .collect();
        Self { terms, d }
    }

    fn overlap(l: &CMatrix, u: &CMatrix) -> C64 {
        let d = l.nrows();
        let mut s = C64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                s += l[(i, j)] * u[(j, i)];
            }
        }
        s
    }

    fn value(&self, u: &CMatrix) -> f64 {
        self.terms.iter().map(|(p, l)| p * Self::overlap(l, u).norm_sqr()).sum()
    }

    /// One minorize-maximize step; returns the new unitary.
    fn step(&self, u: &CMatrix) -> CMatrix {
        let mut k = CMatrix::zeros(self.d, self.d);
        for (p, l) in &self.terms {
            k += l * (Self::overlap(l, u).conj() * *p);
        }
        // Re tr(K U) is maximal at U = V W† for K = W Σ V†.
        let svd = k.svd(true, true);
        let (w, vt) = (svd.u.expect("left vectors"), svd.v_t.expect("right vectors"));
        vt.adjoint() * w.adjoint()
    }

    fn ascend(&self, mut u: CMatrix, search: &LocalUnitarySearch) -> (f64, CMatrix, usize) {
        let mut f = self.value(&u);
        let mut evals = 1;
        for _ in 0..search.max_iterations {
            let next = self.step(&u);
            let g = self.value(&next);
            evals += 1;
            if g < f {
                break;
            }
            let gain = g - f;
            u = next;
            f = g;
            if gain <= search.tol {
                break;
            }
        }
        (f, u, evals)
    }
}

impl LocalUnitarySearch {
    /// Maximizes over unitaries acting on the last tensor factor, of dimension `d`.
    ///
    /// Starts are derived from `stream.child(k)`, so the result is the same
    /// for every `exec`.
    pub fn maximize(
        &self,
        target: &CVector,
        ensemble: &[(f64, CVector)],
        d: usize,
        stream: RandomStream,
        exec: Exec,
    ) -> Result<UnitaryOptimum> {
        let obj = Objective::new(target, ensemble, d);
        let runs = map_indexed(exec, self.restarts + 1, |k| {
            let start = if k == 0 {
                CMatrix::identity(d, d)
            } else {
                haar_unitary(d, &mut stream.child(k as u64).rng())
            };
            obj.ascend(start, self)
        });

        let mut evaluations = 0;
        let mut best = 0;
        for (k, r) in runs.iter().enumerate() {
            evaluations += r.2;
            if r.0 > runs[best].0 {
                best = k;
            }
        }
        let (mut value, mut unitary, _) = runs[best].clone();

        if self.polish_evals > 0 {
            let nm = NelderMead::unbounded(d * d, 1e-3, 1e-12, self.polish_evals);
            let base = unitary.clone();
            let r = nm.maximize(
                |x| match expi_hermitian(&hermitian_from_params(x, d)) {
                    Ok(e) => obj.value(&(&base * e)),
                    Err(_) => f64::NEG_INFINITY,
                },
                &vec![0.0; d * d],
            );
            evaluations += r.evaluations;
            if r.fx > value {
                let polished = &base * expi_hermitian(&hermitian_from_params(&r.x, d))?;
                let v = obj.value(&polished);
                if v > value {
                    value = v;
                    unitary = polished;
                }
            }
        }
        Ok(UnitaryOptimum { value, unitary, start: best, evaluations })
    }
}
