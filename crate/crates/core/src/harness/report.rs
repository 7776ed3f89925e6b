//! Text and JSON rendering of trial reports, and the exit-code contract.

use serde::Serialize;

use super::runner::TrialReport;
use super::sampler::SamplerConfig;
use crate::identities::Params;
use crate::scalar::{Tolerance, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// The run configuration echoed at the top of every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub identity: String,
    pub regime: String,
    pub seed: u64,
    pub trials: usize,
    pub tolerance: Tolerance,
    pub tau: Value,
    pub pole_threshold: f64,
    pub integer_range: (i64, i64),
    pub coord_radius: f64,
    pub overrides: Params,
}

impl ConfigEcho {
    pub fn new(identity: &str, cfg: &SamplerConfig, trials: usize, tol: Tolerance, overrides: Params) -> Self {
        Self {
            identity: identity.to_string(),
            regime: cfg.regime.name().to_string(),
            seed: cfg.seed,
            trials,
            tolerance: tol,
            tau: Value::Approx { re: cfg.elliptic_tau.re, im: cfg.elliptic_tau.im },
            pole_threshold: cfg.pole_threshold,
            integer_range: cfg.integer_range,
            coord_radius: cfg.coord_radius,
            overrides,
        }
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema_version: &'static str,
    config: &'a ConfigEcho,
    reports: &'a [TrialReport],
}

pub fn emit_report(echo: &ConfigEcho, reports: &[TrialReport], format: Format) -> String {
    match format {
        Format::Json => {
            let doc = JsonReport { schema_version: SCHEMA_VERSION, config: echo, reports };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text_table(echo, reports),
    }
}

fn text_table(echo: &ConfigEcho, reports: &[TrialReport]) -> String {
    let header = ["identity", "regime", "params", "passed", "errored", "max_residual", "ms", "status"];
    let rows: Vec<[String; 8]> = reports
        .iter()
        .map(|r| {
            [
                r.identity_name.clone(),
                r.regime.to_string(),
                r.params.to_string(),
                format!("{}/{}", r.trials_passed, r.trials_run),
                r.trials_errored.to_string(),
                format!("{:.3e}", r.max_residual),
                format!("{:.1}", r.elapsed_ms),
                if r.all_passed() { "ok" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = format!(
        "seed={} regime={} trials={} rel_tol={:e}\n",
        echo.seed, echo.regime, echo.trials, echo.tolerance.rel
    );
    out += &line(&header.map(String::from));
    for row in &rows {
        out += &line(row);
    }
    for r in reports.iter().filter(|r| r.first_error.is_some()) {
        out += &format!("error in {} ({}): {}\n", r.identity_name, r.params, r.first_error.as_deref().unwrap_or(""));
    }
    let ok = reports.iter().filter(|r| r.all_passed()).count();
    out += &format!("{ok}/{} configurations passed\n", reports.len());
    out
}

/// 0 when every trial passed, 1 otherwise.
pub fn exit_code(reports: &[TrialReport]) -> i32 {
    if reports.iter().all(TrialReport::all_passed) {
        0
    } else {
        1
    }
}
