//! One CSV row per (family parameter, input angle) grid point.

use std::f64::consts::FRAC_PI_4;

use qteleport_core::metrics::{fidelity_from_gsf, generalized_singlet_fraction, gsf_objective};
use qteleport_core::states::{gs_mixture, iso_mixture, named_state, AnglePair, NamedState};

use super::{eps_grid, gs_optimum_angle, open_angle_grid, q_grid, teleported_negativity, ISO_ANGLES};
use crate::config::{Family, RunConfig};
use crate::report::{real, Checks, Output, Table};
use crate::CliError;

const COLUMNS: [&str; 10] = [
    "family",
    "param",
    "epsilon",
    "gsf",
    "overlap",
    "fidelity",
    "negativity",
    "analytic_negativity",
    "residual",
    "q_zero",
];

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Iso => "iso",
        Family::Gs => "gs",
        Family::Ghz => "ghz",
        Family::W => "w",
    }
}

pub fn run(cfg: &RunConfig, family: Family, eps_points: usize) -> Result<Output, CliError> {
    if eps_points < 2 {
        return Err(CliError::Usage("--eps-points must be at least 2".into()));
    }
    let name = family_name(family);
    let anchor = match family {
        Family::Iso => "isotropic mixture: N = max{0, -(1-q)/2 + q sin 2eps}",
        Family::Gs => "N = (5q^2-2q+1)/sqrt(17q^2-2q+1) sin 2eps",
        Family::Ghz => "GHZ: N = max{0, cos 2theta sin 2eps}",
        Family::W => "W: N = max{0, sin 2phi sin 2eps / 2}",
    };
    let tol = cfg.tol_or(1e-8);
    let mut table = Table { columns: COLUMNS.to_vec(), rows: Vec::new() };
    let mut checks = Checks::default();

    let params = match family {
        Family::Iso | Family::Gs => q_grid(cfg.grid_points),
        Family::Ghz | Family::W => open_angle_grid(cfg.grid_points),
    };
    let fixed_gsf = match family {
        Family::Ghz => Some(generalized_singlet_fraction(&named_state(NamedState::Ghz4))?.value),
        Family::W => Some(generalized_singlet_fraction(&named_state(NamedState::W1))?.value),
        _ => None,
    };
    for &x in &params {
        let (xi, a) = match family {
            Family::Iso => (iso_mixture(AnglePair::new(ISO_ANGLES.0, ISO_ANGLES.1)?, x)?, AnglePair::new(ISO_ANGLES.0, ISO_ANGLES.1)?),
            Family::Gs => {
                let th = gs_optimum_angle(x);
                (gs_mixture(AnglePair::new(FRAC_PI_4, FRAC_PI_4)?, AnglePair::zero(), x)?, AnglePair::new(th, th)?)
            }
            Family::Ghz => (named_state(NamedState::Ghz4), AnglePair::new(x, 0.0)?),
            Family::W => (named_state(NamedState::W1), AnglePair::new(FRAC_PI_4, x)?),
        };
        let gsf = match fixed_gsf {
            Some(g) => g,
            None => generalized_singlet_fraction(&xi)?.value,
        };
        let overlap = gsf_objective(&xi, a);
        for eps in eps_grid(eps_points) {
            let s = (2.0 * eps).sin();
            let analytic = match family {
                Family::Iso => (-(1.0 - x) / 2.0 + x * s).max(0.0),
                Family::Gs => ((5.0 * x * x - 2.0 * x + 1.0) / (17.0 * x * x - 2.0 * x + 1.0).sqrt() * s).max(0.0),
                Family::Ghz => ((2.0 * x).cos() * s).max(0.0),
                Family::W => (0.5 * (2.0 * x).sin() * s).max(0.0),
            };
            let n = teleported_negativity(&xi, a, eps)?;
            // weight below which nothing survives at this input angle
            let q_zero = match family {
                Family::Iso => real(1.0 / (1.0 + 2.0 * s)),
                _ => String::new(),
            };
            table.rows.push(vec![
                name.to_string(),
                real(x),
                real(eps),
                real(gsf),
                real(overlap),
                real(fidelity_from_gsf(overlap)),
                real(n),
                real(analytic),
                real((n - analytic).abs()),
                q_zero,
            ]);
            checks.push(format!("scan_{name}_param={x:.6}_eps={eps:.6}"), analytic, n, tol, anchor);
        }
    }
    Ok(Output { checks, table: Some(table), extra: None })
}
