//! Scan of random resources with gsf_max ≤ 1/4 for teleported entanglement.

use std::f64::consts::{FRAC_PI_4, PI};

use rand::Rng;
use serde::Serialize;

use qteleport_core::linalg::{ginibre_density, CMatrix, DensityMatrix, C64};
use qteleport_core::metrics::{generalized_singlet_fraction, max_generalized_singlet_fraction, METRICS};
use qteleport_core::par::{map_indexed, Exec};
use qteleport_core::rng::RandomStream;
use qteleport_core::states::{generalized_smolin, named_state, upsilon, AnglePair, NamedState, PauliPairIndex};
use qteleport_core::Result;

use super::{eps_grid, teleported_negativity};
use crate::config::{RunConfig, Sampler};
use crate::report::{real, Checks, Output, Table};
use crate::CliError;

/// Slack on the gsf_max ≤ 1/4 filter.
pub const CANDIDATE_MARGIN: f64 = 1e-9;
/// Resources whose gsf is this close to 1/4 are boundary cases, not counterexamples.
pub const BOUNDARY_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    AboveThreshold,
    Boundary,
    Candidate,
    Counterexample,
}

impl Class {
    fn name(self) -> &'static str {
        match self {
            Class::AboveThreshold => "above_threshold",
            Class::Boundary => "boundary",
            Class::Candidate => "candidate",
            Class::Counterexample => "counterexample",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureSample {
    pub index: Option<usize>,
    pub resource_descriptor: String,
    pub stream_seed: u64,
    pub stream_id: u64,
    pub gsf: f64,
    pub gsf_max: f64,
    pub max_output_negativity: f64,
    pub epsilon_at_max: f64,
    pub class: Class,
}

fn random_angles<R: Rng>(rng: &mut R) -> Result<AnglePair> {
    let mut draw = || (rng.random::<f64>() - 0.5) * PI * (1.0 - 1e-9);
    let t = draw();
    let p = draw();
    AnglePair::new(t, p)
}

fn draw_resource(sampler: Sampler, stream: RandomStream) -> Result<(DensityMatrix, String)> {
    let mut rng = stream.rng();
    match sampler {
        Sampler::Ginibre => {
            let rank = rng.random_range(1..=16);
            Ok((ginibre_density(16, rank, &mut rng)?, format!("ginibre rank={rank}")))
        }
        Sampler::UpsMixture => {
            let a = random_angles(&mut rng)?;
            // flat Dirichlet weights over the 16 Υ states
            let raw: Vec<f64> = (0..16).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
            let total: f64 = raw.iter().sum();
            let mut m = CMatrix::zeros(16, 16);
            for (p, w) in PauliPairIndex::all().zip(&raw) {
                let v = upsilon(a, p);
                m += v.amplitudes() * v.amplitudes().adjoint() * C64::new(w / total, 0.0);
            }
            let wmax = raw.iter().cloned().fold(0.0, f64::max) / total;
            let desc = format!("ups_mixture theta={:.6} phi={:.6} wmax={wmax:.6}", a.theta(), a.phi());
            Ok((DensityMatrix::from_unnormalized(m)?, desc))
        }
        Sampler::SmolinMixture => {
            let a = random_angles(&mut rng)?;
            let q: f64 = rng.random();
            let noise = ginibre_density(16, 16, &mut rng)?;
            let xi = DensityMatrix::mix(q, &generalized_smolin(a), &noise)?;
            let desc = format!("smolin_mixture theta={:.6} phi={:.6} q={q:.6}", a.theta(), a.phi());
            Ok((xi, desc))
        }
    }
}

fn assess(
    xi: &DensityMatrix,
    descriptor: String,
    index: Option<usize>,
    stream: RandomStream,
    restarts: usize,
    eps: &[f64],
    tol: f64,
) -> Result<ConjectureSample> {
    let g = generalized_singlet_fraction(xi)?;
    let gmax = max_generalized_singlet_fraction(xi, restarts, stream.child(1), Exec::Sequential)?;
    let a = g.argmax_angles.expect("angle search reports angles");
    let mut best = (f64::NEG_INFINITY, 0.0);
    for &e in eps {
        let n = teleported_negativity(xi, a, e)?;
        if n > best.0 {
            best = (n, e);
        }
    }
    let class = if gmax.value > METRICS.conjecture_threshold + CANDIDATE_MARGIN {
        Class::AboveThreshold
    } else if (g.value - METRICS.conjecture_threshold).abs() <= BOUNDARY_BAND {
        Class::Boundary
    } else if best.0 > tol {
        Class::Counterexample
    } else {
        Class::Candidate
    };
    Ok(ConjectureSample {
        index,
        resource_descriptor: descriptor,
        stream_seed: stream.seed,
        stream_id: stream.stream_id,
        gsf: g.value,
        gsf_max: gmax.value,
        max_output_negativity: best.0,
        epsilon_at_max: best.1,
        class,
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ConjectureSummary {
    pub samples: usize,
    pub candidates: usize,
    pub boundary: usize,
    pub counterexamples: usize,
}

/// Runs the scan and returns the Smolin reference row followed by one row per sample.
pub fn scan(
    cfg: &RunConfig,
    sampler: Sampler,
    restarts: usize,
    exec: Exec,
) -> Result<(Vec<ConjectureSample>, ConjectureSummary)> {
    let tol = cfg.tol_or(1e-8);
    let eps = eps_grid(cfg.grid_points);
    let base = RandomStream::new(cfg.seed, 4);
    let smolin_stream = base.child(u64::MAX);
    let mut rows = vec![assess(&named_state(NamedState::Smolin), "smolin".into(), None, smolin_stream, restarts, &eps, tol)?];
    let drawn = map_indexed(exec, cfg.samples, |i| {
        let s = base.child(i as u64);
        let (xi, desc) = draw_resource(sampler, s)?;
        assess(&xi, desc, Some(i), s, restarts, &eps, tol)
    });
    for r in drawn {
        rows.push(r?);
    }
    let mut summary = ConjectureSummary { samples: cfg.samples, ..Default::default() };
    for r in rows.iter().filter(|r| r.index.is_some()) {
        match r.class {
            Class::Candidate => summary.candidates += 1,
            Class::Boundary => summary.boundary += 1,
            Class::Counterexample => summary.counterexamples += 1,
            Class::AboveThreshold => {}
        }
    }
    Ok((rows, summary))
}

pub fn run(cfg: &RunConfig, sampler: Sampler, restarts: usize) -> std::result::Result<Output, CliError> {
    let (rows, summary) = scan(cfg, sampler, restarts, Exec::Parallel)?;

    let mut checks = Checks::default();
    let smolin = &rows[0];
    let anchor = "Smolin boundary case: G = 1/4 yet N = max{0, sin 2eps}";
    checks.push("smolin_boundary_gsf", 0.25, smolin.gsf, 1e-9, anchor);
    checks.push("smolin_boundary_gsf_max", 0.25, smolin.gsf_max, 1e-6, anchor);
    let xi = named_state(NamedState::Smolin);
    let n = teleported_negativity(&xi, AnglePair::zero(), FRAC_PI_4)?;
    checks.push("smolin_boundary_negativity_eps_pi_4", 1.0, n, 1e-10, anchor);

    for r in rows.iter().filter(|r| r.class == Class::Counterexample) {
        eprintln!(
            "counterexample: {} seed={} stream={} gsf_max={} negativity={}",
            r.resource_descriptor, r.stream_seed, r.stream_id, r.gsf_max, r.max_output_negativity
        );
    }
    eprintln!(
        "conjecture scan: {} samples, {} candidates, {} boundary, {} counterexamples",
        summary.samples, summary.candidates, summary.boundary, summary.counterexamples
    );

    let table = Table {
        columns: vec![
            "index",
            "resource_descriptor",
            "stream_seed",
            "stream_id",
            "gsf",
            "gsf_max",
            "max_output_negativity",
            "epsilon_at_max",
            "class",
        ],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.index.map(|i| i.to_string()).unwrap_or_default(),
                    r.resource_descriptor.clone(),
                    r.stream_seed.to_string(),
                    r.stream_id.to_string(),
                    real(r.gsf),
                    real(r.gsf_max),
                    real(r.max_output_negativity),
                    real(r.epsilon_at_max),
                    r.class.name().to_string(),
                ]
            })
            .collect(),
    };
    let extra = serde_json::json!({ "conjecture_summary": summary });
    Ok(Output { checks, table: Some(table), extra: Some(extra) })
}
