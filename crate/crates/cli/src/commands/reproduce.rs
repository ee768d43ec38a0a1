//! The fixed list of reference checks.

use std::f64::consts::{FRAC_PI_4, PI};

use qteleport_core::channel::{bichannel_e0, RecoverySet4};
use qteleport_core::linalg::{
    ginibre_density, haar_state, max_abs_diff, partial_trace, DensityMatrix, SubsystemMask,
};
use qteleport_core::metrics::{
    filter_closed_forms, filter_expectations, fidelity_from_gsf, fidelity_pair, generalized_singlet_fraction,
    gsf_objective, negativity, METRICS,
};
use qteleport_core::rng::RandomStream;
use qteleport_core::states::{
    gs_mixture, input_state, iso_mixture, named_state, named_vector, upsilon00, AnglePair, InputAngle, NamedState,
};
use qteleport_core::Result;

use super::{bisect, q_grid, eps_grid, gs_optimum_angle, open_angle_grid, teleported, teleported_negativity, ISO_ANGLES};
use crate::config::RunConfig;
use crate::report::{Checks, Output};


pub fn run(cfg: &RunConfig) -> std::result::Result<Output, crate::CliError> {
    let mut c = Checks::default();
    perfect_resource(cfg, &mut c)?;
    isotropic(cfg, &mut c)?;
    gs_family(cfg, &mut c)?;
    ghz_and_w(cfg, &mut c)?;
    filters(cfg, &mut c);
    smolin(cfg, &mut c)?;
    thresholds(cfg, &mut c);
    Ok(Output { checks: c, ..Default::default() })
}

fn perfect_resource(cfg: &RunConfig, c: &mut Checks) -> Result<()> {
    let stream = RandomStream::new(cfg.seed, 1);
    let angles = [(0.0, 0.0), (0.4, -0.9), (-1.2, 0.3), (FRAC_PI_4, FRAC_PI_4), (1.5, -1.5)];
    let mut worst: f64 = 0.0;
    for (i, &(t, p)) in angles.iter().enumerate() {
        let a = AnglePair::new(t, p)?;
        let xi = upsilon00(a).projector();
        for k in 0..20u64 {
            let mut rng = stream.child(i as u64 * 100 + k).rng();
            let rho = if k % 2 == 0 {
                haar_state(4, &mut rng)?.projector()
            } else {
                ginibre_density(4, 1 + (k as usize / 2) % 4, &mut rng)?
            };
            let out = bichannel_e0(&xi, &rho, a)?;
            worst = worst.max(max_abs_diff(out.matrix(), rho.matrix()));
        }
    }
    c.push("perfect_resource_max_error", 0.0, worst, cfg.tol_or(1e-12), "faithful teleportation of arbitrary two-qubit states");
    Ok(())
}

fn isotropic(cfg: &RunConfig, c: &mut Checks) -> Result<()> {
    let a = AnglePair::new(ISO_ANGLES.0, ISO_ANGLES.1)?;
    let anchor_g = "isotropic mixture: G = (1+15q)/16 at matched angles";
    for q in q_grid(cfg.grid_points) {
        let g = generalized_singlet_fraction(&iso_mixture(a, q)?)?;
        c.push(format!("iso_gsf_q={q:.3}"), (1.0 + 15.0 * q) / 16.0, g.value, cfg.tol_or(1e-9), anchor_g);
    }
    let mut worst: f64 = 0.0;
    for q in q_grid(11) {
        let xi = iso_mixture(a, q)?;
        for eps in eps_grid(9) {
            let n = teleported_negativity(&xi, a, eps)?;
            let expected = (-(1.0 - q) / 2.0 + q * (2.0 * eps).sin()).max(0.0);
            worst = worst.max((n - expected).abs());
        }
    }
    c.push("iso_negativity_max_residual", 0.0, worst, cfg.tol_or(1e-9), "isotropic mixture: N = max{0, -(1-q)/2 + q sin 2eps}");

    let overlap = |q: f64| iso_mixture(a, q).map(|x| gsf_objective(&x, a)).unwrap_or(f64::NAN);
    let q_crit = bisect(|q| overlap(q) - 0.5, 0.0, 1.0, 1e-12);
    c.push("q_crit_iso", 7.0 / 15.0, q_crit, cfg.tol_or(1e-9), "G = 1/2 when q_crit = 7/15");
    let q_quarter = bisect(|q| overlap(q) - 0.25, 0.0, 1.0, 1e-12);
    c.push("q_gsf_quarter_iso", 0.2, q_quarter, cfg.tol_or(1e-9), "N = 0 whenever q <= 1/5, where G = 1/4");
    let xi = iso_mixture(a, q_quarter)?;
    let mut n_max: f64 = 0.0;
    for eps in eps_grid(9) {
        n_max = n_max.max(teleported_negativity(&xi, a, eps)?);
    }
    c.push("iso_negativity_at_gsf_quarter", 0.0, n_max, cfg.tol_or(1e-9), "no entanglement teleported when G = 1/4");
    let mut n_max: f64 = 0.0;
    for q in q_grid(11).into_iter().filter(|&q| q <= 0.5) {
        n_max = n_max.max(teleported_negativity(&iso_mixture(a, q)?, a, PI / 12.0)?);
    }
    c.push("iso_negativity_eps_pi_12_q_le_half", 0.0, n_max, cfg.tol_or(1e-9), "at eps = pi/12, N = 0 when q <= 1/2");
    Ok(())
}

fn gs_closed_overlap(q: f64, t: f64, p: f64) -> f64 {
    // pure part at (π/4, π/4), Smolin part at (0, 0)
    q / 4.0 * ((t - FRAC_PI_4).cos() + (p - FRAC_PI_4).cos()).powi(2)
        + (1.0 - q) / 8.0 * (t.cos().powi(2) + p.cos().powi(2))
}

fn gs_family(cfg: &RunConfig, c: &mut Checks) -> Result<()> {
    let pure = AnglePair::new(FRAC_PI_4, FRAC_PI_4)?;
    let xi_of = |q: f64| gs_mixture(pure, AnglePair::zero(), q);

    let mut worst: f64 = 0.0;
    for q in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let xi = xi_of(q)?;
        for &t in &open_angle_grid(9) {
            for &p in &open_angle_grid(9) {
                worst = worst.max((gsf_objective(&xi, AnglePair::new(t, p)?) - gs_closed_overlap(q, t, p)).abs());
            }
        }
    }
    c.push("gs_overlap_surface_max_residual", 0.0, worst, cfg.tol_or(1e-9), "pure plus generalized Smolin: overlap surface");

    let anchor = "G = (1 + 3q + sqrt(17q^2 - 2q + 1))/8";
    let root = |q: f64| (17.0 * q * q - 2.0 * q + 1.0).sqrt();
    for q in q_grid(cfg.grid_points) {
        let g = generalized_singlet_fraction(&xi_of(q)?)?;
        c.push(format!("gs_gsf_q={q:.3}"), (1.0 + 3.0 * q + root(q)) / 8.0, g.value, cfg.tol_or(1e-8), anchor);
    }
    let g = generalized_singlet_fraction(&xi_of(0.5)?)?;
    let a = g.argmax_angles.expect("angles");
    c.push("gs_argmax_theta_q=0.5", gs_optimum_angle(0.5), a.theta(), cfg.tol_or(1e-6), "optimal angle, half of arccos[(1-q)/sqrt(17q^2-2q+1)]");
    c.push("gs_argmax_phi_q=0.5", gs_optimum_angle(0.5), a.phi(), cfg.tol_or(1e-6), "optimal angle, half of arccos[(1-q)/sqrt(17q^2-2q+1)]");

    let q_crit = bisect(
        |q| xi_of(q).and_then(|x| generalized_singlet_fraction(&x)).map(|g| g.value - 0.5).unwrap_or(f64::NAN),
        0.0,
        1.0,
        1e-12,
    );
    c.push("q_crit_gs", 0.414214, q_crit, cfg.tol_or(1e-6), "0.414214 = q_crit");

    let mut worst: f64 = 0.0;
    let mut min_computed = f64::INFINITY;
    let mut min_expected = f64::INFINITY;
    for k in 1..10 {
        let q = k as f64 / 10.0;
        let th = gs_optimum_angle(q);
        let a = AnglePair::new(th, th)?;
        let xi = xi_of(q)?;
        let amp = (5.0 * q * q - 2.0 * q + 1.0) / root(q);
        for eps in eps_grid(9) {
            let n = teleported_negativity(&xi, a, eps)?;
            worst = worst.max((n - (amp * (2.0 * eps).sin()).max(0.0)).abs());
        }
        min_computed = min_computed.min(teleported_negativity(&xi, a, FRAC_PI_4)?);
        min_expected = min_expected.min(amp);
    }
    c.push("gs_negativity_max_residual", 0.0, worst, cfg.tol_or(1e-8), "N = (5q^2-2q+1)/sqrt(17q^2-2q+1) sin 2eps");
    c.push("gs_negativity_min_over_q", min_expected, min_computed, cfg.tol_or(1e-8), "nonzero for all 0 < q < 1");
    Ok(())
}

fn w_overlap(t: f64, p: f64) -> f64 {
    (2.0 + (2.0 * t).sin() + 2.0 * (t + p).sin() + 2.0 * (t - p).cos() + (2.0 * p).sin()) / 16.0
}

fn ghz_and_w(cfg: &RunConfig, c: &mut Checks) -> Result<()> {
    let ghz = named_state(NamedState::Ghz4);
    let w = named_state(NamedState::W1);
    let (mut dg, mut dw) = (0.0_f64, 0.0_f64);
    for &t in &open_angle_grid(9) {
        for &p in &open_angle_grid(9) {
            let a = AnglePair::new(t, p)?;
            dg = dg.max((gsf_objective(&ghz, a) - 0.5 * t.cos().powi(2)).abs());
            dw = dw.max((gsf_objective(&w, a) - w_overlap(t, p)).abs());
        }
    }
    c.push("ghz_overlap_max_residual", 0.0, dg, cfg.tol_or(1e-10), "GHZ overlap cos^2(theta)/2");
    c.push("w_overlap_max_residual", 0.0, dw, cfg.tol_or(1e-10), "W overlap [2 + sin2t + 2sin(t+p) + 2cos(t-p) + sin2p]/16");

    let g = generalized_singlet_fraction(&ghz)?;
    c.push("ghz_gsf", 0.5, g.value, cfg.tol_or(1e-8), "G[GHZ] = 1/2 when theta = 0");
    c.push("ghz_argmax_theta", 0.0, g.argmax_angles.expect("angles").theta(), cfg.tol_or(1e-6), "G[GHZ] = 1/2 when theta = 0");
    let g = generalized_singlet_fraction(&w)?;
    let a = g.argmax_angles.expect("angles");
    c.push("w_gsf", 0.5, g.value, cfg.tol_or(1e-8), "G[W] = 1/2 when theta = phi = pi/4");
    c.push("w_argmax_theta", FRAC_PI_4, a.theta(), cfg.tol_or(1e-6), "G[W] = 1/2 when theta = phi = pi/4");
    c.push("w_argmax_phi", FRAC_PI_4, a.phi(), cfg.tol_or(1e-6), "G[W] = 1/2 when theta = phi = pi/4");

    // printed form over the whole square, the same on the half where its
    // bracket is nonnegative, and the absolute-value form everywhere
    let (mut ng, mut ng_half, mut ng_abs) = (0.0_f64, 0.0_f64, 0.0_f64);
    let (mut nw, mut nw_half, mut nw_abs) = (0.0_f64, 0.0_f64, 0.0_f64);
    for &t in &open_angle_grid(7) {
        for &p in &open_angle_grid(7) {
            let a = AnglePair::new(t, p)?;
            let (bg, bw) = ((2.0 * t).cos(), 0.5 * (2.0 * p).sin());
            for eps in eps_grid(7) {
                let s = (2.0 * eps).sin();
                let (n_g, n_w) = (teleported_negativity(&ghz, a, eps)?, teleported_negativity(&w, a, eps)?);
                let (rg, rw) = ((n_g - (bg * s).max(0.0)).abs(), (n_w - (bw * s).max(0.0)).abs());
                ng = ng.max(rg);
                nw = nw.max(rw);
                if bg >= 0.0 {
                    ng_half = ng_half.max(rg);
                }
                if bw >= 0.0 {
                    nw_half = nw_half.max(rw);
                }
                ng_abs = ng_abs.max((n_g - (bg * s).abs()).abs());
                nw_abs = nw_abs.max((n_w - (bw * s).abs()).abs());
            }
        }
    }
    let tol = cfg.tol_or(1e-9);
    c.push("ghz_negativity_max_residual", 0.0, ng, tol, "GHZ: N = max{0, cos 2theta sin 2eps}");
    c.push("ghz_negativity_cos_nonneg_max_residual", 0.0, ng_half, tol, "GHZ: N = max{0, cos 2theta sin 2eps}, |theta| <= pi/4");
    c.push("ghz_negativity_abs_form_max_residual", 0.0, ng_abs, tol, "GHZ: N = |cos 2theta| sin 2eps");
    c.push("w_negativity_max_residual", 0.0, nw, tol, "W: N = max{0, sin 2phi sin 2eps / 2}");
    c.push("w_negativity_sin_nonneg_max_residual", 0.0, nw_half, tol, "W: N = max{0, sin 2phi sin 2eps / 2}, phi >= 0");
    c.push("w_negativity_abs_form_max_residual", 0.0, nw_abs, tol, "W: N = |sin 2phi| sin 2eps / 2");

    let origin = AnglePair::zero();
    c.push("w_overlap_origin", 0.25, gsf_objective(&w, origin), cfg.tol_or(1e-12), "W at theta = phi = 0: overlap 1/4");
    let mut n_max: f64 = 0.0;
    for eps in eps_grid(9) {
        n_max = n_max.max(teleported_negativity(&w, origin, eps)?);
    }
    c.push("w_negativity_origin", 0.0, n_max, cfg.tol_or(1e-12), "W at theta = phi = 0: no entanglement teleported");
    Ok(())
}

fn filters(cfg: &RunConfig, c: &mut Checks) {
    let grid = [-1.2, -0.6, 0.0, 0.45, 1.1];
    let (mut d1, mut d2, mut d3p, mut d3) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for &t in &grid {
        for &p in &grid {
            let f = filter_expectations(&upsilon00(AnglePair::new(t, p).expect("interior")));
            let cf = filter_closed_forms(t, p);
            d1 = d1.max((f.f1 - cf.f1).abs());
            d2 = d2.max((f.f2 - cf.f2).abs());
            d3p = d3p.max((f.f3 - cf.f3_printed).abs());
            d3 = d3.max((f.f3 - cf.f3).abs());
        }
    }
    let tol = cfg.tol_or(1e-10);
    c.push("filter_f1_closed_form_max_residual", 0.0, d1, tol, "F1 closed form on the Upsilon family");
    c.push("filter_f2_closed_form_max_residual", 0.0, d2, tol, "F2 closed form on the Upsilon family");
    c.push("filter_f3_closed_form_max_residual", 0.0, d3p, tol, "F3 closed form on the Upsilon family, factor (1 - 2 cos2t cos2p)");
    c.push("filter_f3_contraction_form_max_residual", 0.0, d3, tol, "F3 from its definition: factor (1 - cos2t cos2p)");

    let tol = cfg.tol_or(1e-12);
    let ghz = filter_expectations(&named_vector(NamedState::Ghz4).expect("pure")).moduli();
    c.push("filters_ghz_f1", 1.0, ghz.f1, tol, "GHZ filters 1, 1, 1/2");
    c.push("filters_ghz_f2", 1.0, ghz.f2, tol, "GHZ filters 1, 1, 1/2");
    c.push("filters_ghz_f3", 0.5, ghz.f3, tol, "GHZ filters 1, 1, 1/2");
    let w = filter_expectations(&named_vector(NamedState::W0).expect("pure"));
    c.push("filters_w_f1", 0.0, w.f1, tol, "filters vanish for the W state");
    c.push("filters_w_f2", 0.0, w.f2, tol, "filters vanish for the W state");
    c.push("filters_w_f3", 0.0, w.f3, tol, "filters vanish for the W state");
    let u = filter_expectations(&upsilon00(AnglePair::zero()));
    c.push("filters_upsilon_origin_f1", 0.0, u.f1, tol, "filters vanish only when theta = phi = 0");
    c.push("filters_upsilon_origin_f2", 0.0, u.f2, tol, "filters vanish only when theta = phi = 0");
    c.push("filters_upsilon_origin_f3", 0.0, u.f3, tol, "filters vanish only when theta = phi = 0");
}

fn smolin(cfg: &RunConfig, c: &mut Checks) -> Result<()> {
    let xi = named_state(NamedState::Smolin);
    let origin = AnglePair::zero();
    let g = generalized_singlet_fraction(&xi)?;
    c.push("smolin_gsf", 0.25, g.value, cfg.tol_or(1e-9), "G = 1/4 for the Smolin state");
    let f = fidelity_pair(&xi, origin, &RecoverySet4::paulis())?;
    c.push("smolin_fidelity", 0.4, f, cfg.tol_or(1e-12), "fidelity 2/5 at G = 1/4");

    let (mut df, mut dn) = (0.0_f64, 0.0_f64);
    for eps in eps_grid(9) {
        let out = teleported(&xi, origin, eps)?;
        let psi = input_state(InputAngle::new(eps)?);
        let s = (2.0 * eps).sin();
        df = df.max((out.expectation(&psi) - (1.0 + s * s) / 2.0).abs());
        dn = dn.max((teleported_negativity(&xi, origin, eps)? - s).abs());
    }
    c.push("smolin_teleported_fidelity_max_residual", 0.0, df, cfg.tol_or(1e-10), "<Psi|out|Psi> = (1 + sin^2 2eps)/2");
    c.push("smolin_teleported_negativity_max_residual", 0.0, dn, cfg.tol_or(1e-10), "N = max{0, sin 2eps} at q = 0");

    let n = negativity(&xi, &SubsystemMask::from_indices(4, &[0])?)?;
    c.push("smolin_negativity_one_qubit_cut", 1.0, n, cfg.tol_or(1e-10), "negativity between A3 and A4B1B2 is 1");
    let mut worst: f64 = 0.0;
    let mixed = DensityMatrix::maximally_mixed(8)?;
    for lost in 0..4 {
        let keep: Vec<usize> = (0..4).filter(|&q| q != lost).collect();
        let r = partial_trace(&xi, &SubsystemMask::from_indices(4, &keep)?)?;
        worst = worst.max(max_abs_diff(r.matrix(), mixed.matrix()));
    }
    c.push("smolin_one_particle_loss_max_deviation", 0.0, worst, cfg.tol_or(1e-12), "one particle loss gives the completely random state");
    Ok(())
}

fn thresholds(cfg: &RunConfig, c: &mut Checks) {
    let tol = cfg.tol_or(1e-15);
    c.push("fidelity_at_gsf_crit", METRICS.classical_fidelity_2q, fidelity_from_gsf(METRICS.g_crit), tol, "G_crit = 1/2 gives Phi_class = 3/5");
    c.push("fidelity_at_gsf_quarter", 0.4, fidelity_from_gsf(METRICS.conjecture_threshold), tol, "G = 1/4 gives fidelity 2/5");
}
