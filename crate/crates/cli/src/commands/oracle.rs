//! Mutual checks between the six-qubit simulation and the channel formulas.

use std::f64::consts::PI;

use rand::Rng;

use qteleport_core::channel::{
    bichannel_e1, protocol_oracle, upsilon_elements_from_coefficients, upsilon_matrix_elements, eigen_ensemble,
    RecoverySet4,
};
use qteleport_core::linalg::{
    dagger, ginibre_density, haar_state, haar_unitary, identity, kron, max_abs_diff, trace, C64,
};
use qteleport_core::metrics::haar_two_design_check;
use qteleport_core::par::{map_indexed, Exec};
use qteleport_core::rng::RandomStream;
use qteleport_core::states::{pauli_pair, upsilon, upsilon00, AnglePair, PauliPairIndex};
use qteleport_core::Result;

use crate::config::RunConfig;
use crate::report::{CheckResult, Checks, Output};
use crate::CliError;

/// Haar samples per two-design comparison.
const TWO_DESIGN_SAMPLES: usize = 20_000;
/// Operator pairs in the two-design comparison.
const TWO_DESIGN_PAIRS: usize = 10;

fn random_angles<R: Rng>(rng: &mut R) -> Result<AnglePair> {
    // strictly inside the open square
    let mut draw = || (rng.random::<f64>() - 0.5) * PI * (1.0 - 1e-9);
    let t = draw();
    let p = draw();
    AnglePair::new(t, p)
}

struct SampleReport {
    oracle_vs_e1: f64,
    probability_sum: f64,
    coefficient_form: f64,
    trace_identity: f64,
}

fn one_sample(stream: RandomStream) -> Result<SampleReport> {
    let mut rng = stream.rng();
    let rank = rng.random_range(1..=16);
    let xi = ginibre_density(16, rank, &mut rng)?;
    let psi = haar_state(4, &mut rng)?;
    let a = random_angles(&mut rng)?;
    let r = RecoverySet4::new((0..16).map(|_| haar_unitary(4, &mut rng)).collect())?;

    let run = protocol_oracle(&xi, &psi, a, &r)?;
    let e1 = bichannel_e1(&xi, &psi.projector(), a, &r)?;
    let direct = upsilon_matrix_elements(&xi, a)?;
    let via = upsilon_elements_from_coefficients(&eigen_ensemble(&xi)?, a)?;

    let ups00 = upsilon00(a);
    let basis: Vec<_> = PauliPairIndex::all().map(|p| upsilon(a, p)).collect();
    let mut worst: f64 = 0.0;
    for mn in PauliPairIndex::all() {
        let rm = r.get(mn);
        let umn = pauli_pair(mn);
        let op = kron(&identity(4), &(dagger(&umn) * rm));
        let left = op.adjoint() * ups00.amplitudes();
        for (ab, ups_ab) in PauliPairIndex::all().zip(&basis) {
            let lhs = trace(&(rm * dagger(&pauli_pair(ab)) * dagger(&umn)));
            let rhs = left.dotc(ups_ab.amplitudes()) * C64::new(4.0, 0.0);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(SampleReport {
        oracle_vs_e1: max_abs_diff(run.output.matrix(), e1.matrix()),
        probability_sum: run.total_probability(),
        coefficient_form: max_abs_diff(&direct, &via),
        trace_identity: worst,
    })
}

pub fn run(cfg: &RunConfig) -> std::result::Result<Output, CliError> {
    let base = RandomStream::new(cfg.seed, 2);
    let tol = cfg.tol_or(1e-10);
    let reports = map_indexed(Exec::Parallel, cfg.samples, |i| one_sample(base.child(i as u64)));

    let mut c = Checks::default();
    for (i, rep) in reports.into_iter().enumerate() {
        let rep = rep?;
        c.push(format!("oracle_vs_bichannel/{i}"), 0.0, rep.oracle_vs_e1, tol, "six-qubit protocol equals the bichannel with recovery");
        c.push(format!("outcome_probability_sum/{i}"), 1.0, rep.probability_sum, tol, "outcome probabilities sum to one");
        c.push(format!("coefficient_matrix_elements/{i}"), 0.0, rep.coefficient_form, tol, "<Y_ab|Xi|Y_cd> from coefficient matrices");
        c.push(format!("trace_identity/{i}"), 0.0, rep.trace_identity, tol, "tr[R U_ab^+ U_mn^+] = 4 <Y_00|(I x U_mn^+ R)|Y_ab>");
    }

    // pure resource with Pauli recovery: every outcome has probability 1/16
    let mut rng = RandomStream::new(cfg.seed, 3).rng();
    let a = random_angles(&mut rng)?;
    let psi = haar_state(4, &mut rng)?;
    let run = protocol_oracle(&upsilon00(a).projector(), &psi, a, &RecoverySet4::paulis())?;
    let dev = run.outcomes.iter().map(|o| (o.probability - 1.0 / 16.0).abs()).fold(0.0, f64::max);
    c.push("pure_resource_outcome_probability", 0.0, dev, tol, "amplitude 1/4 per outcome for a perfect resource");

    let pairs = base.child(u64::MAX);
    for j in 0..TWO_DESIGN_PAIRS.min(cfg.samples) {
        let s = pairs.child(j as u64);
        let mut rng = s.rng();
        let (x, y) = (haar_unitary(4, &mut rng), haar_unitary(4, &mut rng));
        let chk = haar_two_design_check(&x, &y, TWO_DESIGN_SAMPLES, s.child(0), Exec::Parallel)?;
        let anchor = "Haar integral of <P|A|P><P|B|P> = (trA trB + trAB)/20";
        c.0.push(CheckResult::new(format!("two_design_re/{j}"), chk.analytic.re, chk.empirical_re.mean, 4.0 * chk.empirical_re.std_error, anchor));
        c.0.push(CheckResult::new(format!("two_design_im/{j}"), chk.analytic.im, chk.empirical_im.mean, 4.0 * chk.empirical_im.std_error, anchor));
    }

    for f in c.0.iter().filter(|f| !f.passed) {
        eprintln!("failed {} (reproduce with --seed {})", f.check_id, cfg.seed);
    }
    Ok(Output { checks: c, ..Default::default() })
}
