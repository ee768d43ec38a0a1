use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qteleport-lab")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["scan"],
        &["scan", "--family", "cluster"],
        &["conjecture", "--sampler", "ups-mixture"],
        &["oracle-check", "--samples", "0"],
        &["scan", "--family", "iso", "--grid", "1"],
        &["reproduce", "--tol", "-1"],
        &["reproduce", "--tol", "nan"],
        &["reproduce", "--format", "xml"],
        &["reproduce", "--seed", "-3"],
    ] {
        assert_eq!(code(&run(args)), 2, "{args:?}");
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&run(&["--help"])), 0);
    let v = run(&["--version"]);
    assert_eq!(code(&v), 0);
    assert!(String::from_utf8_lossy(&v.stdout).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn unwritable_output_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let o = run(&["oracle-check", "--samples", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(!String::from_utf8_lossy(&o.stderr).is_empty());
}

#[test]
fn csv_layout() {
    let o = run(&["scan", "--family", "iso", "--grid", "3", "--eps-points", "2", "--seed", "9"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), format!("# qteleport-lab v{} rng=chacha8-stream-v1 seed=9", env!("CARGO_PKG_VERSION")));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    for col in ["family", "epsilon", "gsf", "fidelity", "negativity", "analytic_negativity", "residual"] {
        assert!(header.contains(&col), "{col}");
    }
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    // reals carry 17 significant digits
    let gsf = rows[1].split(',').nth(header.iter().position(|&c| c == "gsf").unwrap()).unwrap();
    let mantissa = gsf.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{gsf}");
}

#[test]
fn json_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&["oracle-check", "--samples", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["config"]["command"], "oracle-check");
    assert_eq!(v["config"]["samples"], 2);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["check_id", "expected", "computed", "tolerance", "passed", "paper_anchor"] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
    let passed = checks.iter().filter(|c| c["passed"] == true).count();
    assert_eq!(v["summary"]["passed"], passed);
    assert_eq!(v["summary"]["failed"], checks.len() - passed);
}

#[test]
fn failing_checks_exit_1() {
    // the tightest tolerance cannot be met by Monte Carlo or optimizer output
    let o = run(&["reproduce", "--tol", "1e-300", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["summary"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn iso_and_gs_scans_pass() {
    for family in ["iso", "gs"] {
        assert_eq!(code(&run(&["scan", "--family", family, "--grid", "5"])), 0, "{family}");
    }
}

#[test]
fn every_sampler_name_is_accepted() {
    for sampler in ["ginibre", "ups_mixture", "smolin_mixture"] {
        let o = run(&["conjecture", "--sampler", sampler, "--samples", "2", "--restarts", "2"]);
        assert_eq!(code(&o), 0, "{sampler}: {}", String::from_utf8_lossy(&o.stderr));
        let text = String::from_utf8(o.stdout).unwrap();
        // the Smolin boundary row comes first
        assert!(text.lines().nth(2).unwrap().contains("smolin"));
    }
}

#[test]
fn same_seed_same_bytes() {
    let args = ["oracle-check", "--samples", "4", "--seed", "77", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let other = run(&["oracle-check", "--samples", "4", "--seed", "78", "--format", "json"]);
    assert_ne!(run(&args).stdout, other.stdout);
}
