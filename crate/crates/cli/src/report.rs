//! CSV and JSON report writers.

use std::io::Write;

use serde::Serialize;

use qteleport_core::rng::RNG_ALGORITHM;

use crate::config::{Format, RunConfig};
use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One named comparison of a computed value against a reference.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub paper_anchor: String,
}

impl CheckResult {
    pub fn new(id: impl Into<String>, expected: f64, computed: f64, tolerance: f64, anchor: impl Into<String>) -> Self {
        let passed = (expected - computed).abs() <= tolerance;
        Self { check_id: id.into(), expected, computed, tolerance, passed, paper_anchor: anchor.into() }
    }
}

/// Collects checks in the order they are run.
#[derive(Debug, Default)]
pub struct Checks(pub Vec<CheckResult>);

impl Checks {
    pub fn push(&mut self, id: impl Into<String>, expected: f64, computed: f64, tolerance: f64, anchor: &str) {
        self.0.push(CheckResult::new(id, expected, computed, tolerance, anchor));
    }

    pub fn failed(&self) -> usize {
        self.0.iter().filter(|c| !c.passed).count()
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub fn header_line(cfg: &RunConfig) -> String {
    format!("# qteleport-lab v{VERSION} rng={RNG_ALGORITHM} seed={}", cfg.seed)
}

/// A table of string cells; numbers are pre-formatted with [`real`].
#[derive(Debug, Default, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Summary {
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    version: &'static str,
    rng: &'static str,
    config: &'a RunConfig,
    checks: &'a [CheckResult],
    summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<serde_json::Map<String, serde_json::Value>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extra: Option<serde_json::Value>,
}

fn checks_table(checks: &[CheckResult]) -> Table {
    Table {
        columns: vec!["check_id", "expected", "computed", "tolerance", "passed", "paper_anchor"],
        rows: checks
            .iter()
            .map(|c| {
                vec![
                    c.check_id.clone(),
                    real(c.expected),
                    real(c.computed),
                    real(c.tolerance),
                    c.passed.to_string(),
                    c.paper_anchor.clone(),
                ]
            })
            .collect(),
    }
}

/// What a command hands back for writing.
#[derive(Debug, Default)]
pub struct Output {
    pub checks: Checks,
    /// Data rows; when absent the CSV form lists the checks instead.
    pub table: Option<Table>,
    /// Additional JSON-only payload.
    pub extra: Option<serde_json::Value>,
}

fn cell_value(s: &str) -> serde_json::Value {
    if s.is_empty() {
        return serde_json::Value::Null;
    }
    if let Ok(n) = s.parse::<u64>() {
        return serde_json::json!(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => serde_json::json!(x),
        _ => match s {
            "true" => serde_json::Value::Bool(true),
            "false" => serde_json::Value::Bool(false),
            _ => serde_json::Value::String(s.to_string()),
        },
    }
}

pub fn render(cfg: &RunConfig, out: &Output) -> Result<Vec<u8>, CliError> {
    match cfg.format {
        Format::Csv => {
            let table = match &out.table {
                Some(t) => t.clone(),
                None => checks_table(&out.checks.0),
            };
            let mut buf = Vec::new();
            writeln!(buf, "{}", header_line(cfg)).map_err(CliError::io)?;
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(buf);
            w.write_record(&table.columns).map_err(CliError::csv)?;
            for row in &table.rows {
                w.write_record(row).map_err(CliError::csv)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.to_string()))
        }
        Format::Json => {
            let rows = out.table.as_ref().map(|t| {
                t.rows
                    .iter()
                    .map(|r| t.columns.iter().zip(r).map(|(k, v)| (k.to_string(), cell_value(v))).collect())
                    .collect()
            });
            let report = JsonReport {
                version: VERSION,
                rng: RNG_ALGORITHM,
                config: cfg,
                checks: &out.checks.0,
                summary: Summary { passed: out.checks.0.len() - out.checks.failed(), failed: out.checks.failed() },
                rows,
                extra: out.extra.clone(),
            };
            let mut buf = serde_json::to_vec_pretty(&report).map_err(|e| CliError::Io(e.to_string()))?;
            buf.push(b'\n');
            Ok(buf)
        }
    }
}

pub fn write(cfg: &RunConfig, out: &Output) -> Result<(), CliError> {
    let bytes = render(cfg, out)?;
    match &cfg.output_path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(&bytes).map_err(CliError::io),
    }
}
