//! Support code for the `stirtool` binary: table renderings, named identity
//! checks and Monte Carlo report formatting.

pub mod checks;
pub mod render;

use serde::Serialize;
use stirling_core::{McConfig, McReport};

/// Cap on `--max-n` for table output unless raised explicitly.
pub const DEFAULT_MAX_N_CAP: usize = 64;

#[derive(Debug, Serialize)]
struct McJson<'a> {
    target: &'a str,
    k: usize,
    n: usize,
    lambda: f64,
    samples: u64,
    seed: u64,
    estimate: f64,
    std_error: f64,
    exact_value: f64,
    z_score: f64,
    samples_used: u64,
    passed: bool,
}

/// Human summary line followed by a JSON line.
pub fn format_mc_report(target: &str, cfg: &McConfig, report: &McReport) -> String {
    let verdict = if report.passes() { "PASS" } else { "FAIL" };
    let human = format!(
        "{verdict} {target} k={} n={} lambda={} samples={} seed={} estimate={} std_error={} exact={} z={}",
        cfg.k,
        cfg.n,
        cfg.lambda,
        cfg.samples,
        cfg.seed,
        report.estimate,
        report.std_error,
        report.exact_value,
        report.z_score
    );
    let json = serde_json::to_string(&McJson {
        target,
        k: cfg.k,
        n: cfg.n,
        lambda: cfg.lambda,
        samples: cfg.samples,
        seed: cfg.seed,
        estimate: report.estimate,
        std_error: report.std_error,
        exact_value: report.exact_value,
        z_score: report.z_score,
        samples_used: report.samples_used,
        passed: report.passes(),
    })
    .expect("plain data serializes");
    format!("{human}\n{json}\n")
}
