//! Invariant bookkeeping and the run report.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantResult {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl InvariantResult {
    pub fn summary_line(&self) -> String {
        format!(
            "{} max={:.3e} tol={:.3e} {}",
            self.name,
            self.max_deviation,
            self.tolerance,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Collects invariant outcomes, resolving tolerances against config overrides.
pub struct Checks<'a> {
    config: &'a ScenarioConfig,
    results: Vec<InvariantResult>,
}

impl<'a> Checks<'a> {
    pub fn new(config: &'a ScenarioConfig) -> Self {
        Self { config, results: Vec::new() }
    }

    /// Records `name` as passing when `deviation ≤ tolerance`; NaN deviations fail.
    pub fn record(&mut self, name: &str, default_tol: f64, deviation: f64) {
        debug_assert!(self.results.iter().all(|r| r.name != name), "duplicate invariant {name}");
        let tolerance = self.config.tolerance(name, default_tol);
        self.results.push(InvariantResult {
            name: name.to_string(),
            max_deviation: deviation,
            tolerance,
            pass: deviation <= tolerance,
        });
    }

    pub fn finish(self) -> Vec<InvariantResult> {
        self.results
    }
}

/// Running maximum that propagates NaN.
pub fn max_dev(acc: f64, v: f64) -> f64 {
    if acc.is_nan() || v.is_nan() {
        f64::NAN
    } else {
        acc.max(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularityInfo {
    pub kind: String,
    pub t_lower: f64,
    pub t_upper: f64,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InvariantFailure,
    Singular,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InvariantFailure => 1,
            Status::Singular => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub id: String,
    pub kind: String,
    pub seed: u64,
    pub status: Status,
    pub wall_time_s: f64,
    pub invariants: Vec<InvariantResult>,
    pub trajectory: Option<String>,
    pub observations: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
    pub singularity: Option<SingularityInfo>,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.invariants.iter().all(|r| r.pass)
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn write_json(&self, path: &Path) -> Result<(), CliError> {
        let mut f = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut f, self)
            .map_err(|e| CliError::Numerical(format!("cannot serialize report: {e}")))?;
        writeln!(f)?;
        Ok(())
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.invariants {
            out.push_str(&r.summary_line());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> ScenarioConfig {
        ScenarioConfig::from_json(r#"{"times": {"t_final": 1, "step": 0.1}, "tolerances": {"b": 1e-3}}"#).unwrap()
    }

    #[test]
    fn records_with_overrides() {
        let cfg = config();
        let mut c = Checks::new(&cfg);
        c.record("a", 1e-6, 1e-7);
        c.record("b", 1e-6, 1e-4);
        c.record("c", 1e-6, f64::NAN);
        let r = c.finish();
        assert!(r[0].pass && r[1].pass && !r[2].pass);
        assert_eq!(r[1].tolerance, 1e-3);
        assert_eq!(r[0].summary_line(), "a max=1.000e-7 tol=1.000e-6 PASS");
        assert!(r[2].summary_line().ends_with("FAIL"));
    }

    #[test]
    fn nan_propagates() {
        assert!(max_dev(1.0, f64::NAN).is_nan());
        assert!(max_dev(f64::NAN, 1.0).is_nan());
        assert_eq!(max_dev(1.0, 2.0), 2.0);
    }
}
