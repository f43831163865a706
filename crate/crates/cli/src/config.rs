//! Scenario configuration documents.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use isospec_core::ComplexMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Heisenberg,
    Lvn,
    Sb2c,
    Bloch,
    Verify,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Heisenberg => "heisenberg",
            Kind::Lvn => "lvn",
            Kind::Sb2c => "sb2c",
            Kind::Bloch => "bloch",
            Kind::Verify => "verify",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "heisenberg" => Ok(Kind::Heisenberg),
            "lvn" => Ok(Kind::Lvn),
            "sb2c" => Ok(Kind::Sb2c),
            "bloch" => Ok(Kind::Bloch),
            "verify" => Ok(Kind::Verify),
            other => Err(CliError::Config(format!("unknown scenario kind '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Config(format!("unknown output format '{other}'"))),
        }
    }
}

/// A matrix as rows of `[re, im]` pairs.
pub type MatrixDoc = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Times {
    pub t_final: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReducedInitial {
    pub y: f64,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyTarget {
    Heisenberg,
    Lvn,
    Sb2c,
    Oscillator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_id")]
    pub id: String,
    #[serde(default)]
    pub kind: Option<Kind>,
    #[serde(default)]
    pub matrices: BTreeMap<String, MatrixDoc>,
    pub times: Times,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub seed: u64,
    /// Random samples per property invariant.
    #[serde(default = "default_samples")]
    pub property_samples: usize,
    /// sb2c: reduced initial data; verify: initial data for the sb2c target.
    #[serde(default)]
    pub initial: Option<ReducedInitial>,
    /// bloch: initial Bloch vector.
    #[serde(default)]
    pub x0: Option<[f64; 3]>,
    /// bloch: generator index 1, 2 or 3.
    #[serde(default)]
    pub generator: Option<usize>,
    #[serde(default)]
    pub target: Option<VerifyTarget>,
}

fn default_id() -> String {
    "scenario".into()
}

fn default_samples() -> usize {
    100
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(format!("config parse error: {e}")))?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Structural checks that do not depend on the scenario kind.
    pub fn validate(&self) -> Result<(), CliError> {
        let Times { t_final, step } = self.times;
        if !(step > 0.0) || !step.is_finite() {
            return Err(CliError::Config(format!("times.step must be positive, got {step}")));
        }
        if !(t_final >= 0.0) || !t_final.is_finite() {
            return Err(CliError::Config(format!("times.t_final must be non-negative, got {t_final}")));
        }
        for (k, v) in &self.tolerances {
            if !(*v >= 0.0) || !v.is_finite() {
                return Err(CliError::Config(format!("tolerance {k} must be non-negative, got {v}")));
            }
        }
        for name in self.matrices.keys() {
            self.matrix(name)?;
        }
        Ok(())
    }

    pub fn matrix(&self, name: &str) -> Result<ComplexMatrix, CliError> {
        let doc = self
            .matrices
            .get(name)
            .ok_or_else(|| CliError::Config(format!("missing matrix '{name}'")))?;
        parse_matrix(name, doc)
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    /// Applies a `K=V` command-line override.
    pub fn apply_override(&mut self, kv: &str) -> Result<(), CliError> {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("tolerance override '{kv}' is not K=V")))?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("tolerance override '{kv}' has a non-numeric value")))?;
        self.tolerances.insert(k.trim().to_string(), value);
        Ok(())
    }
}

pub fn parse_matrix(name: &str, doc: &MatrixDoc) -> Result<ComplexMatrix, CliError> {
    let n = doc.len();
    if n == 0 {
        return Err(CliError::Config(format!("matrix '{name}' is empty")));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in doc.iter().enumerate() {
        if row.len() != n {
            return Err(CliError::Config(format!(
                "matrix '{name}' is not square: row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        let parsed: Vec<Complex64> = row.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        if parsed.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CliError::Config(format!("matrix '{name}' has non-finite entries")));
        }
        rows.push(parsed);
    }
    ComplexMatrix::from_rows(&rows).map_err(|e| CliError::Config(format!("matrix '{name}': {e}")))
}

pub fn matrix_doc(m: &ComplexMatrix) -> MatrixDoc {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "id": "t",
        "matrices": {"H": [[[1,0],[0,0]],[[0,0],[-1,0]]]},
        "times": {"t_final": 1.0, "step": 0.01}
    }"#;

    #[test]
    fn parses_minimal_document() {
        let cfg = ScenarioConfig::from_json(MINIMAL).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.matrix("H").unwrap(), ComplexMatrix::pauli_z());
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.property_samples, 100);
        assert!(cfg.kind.is_none());
    }

    #[test]
    fn rejects_ragged_and_missing() {
        let ragged = MINIMAL.replace("[[0,0],[-1,0]]", "[[0,0]]");
        let cfg = ScenarioConfig::from_json(&ragged).unwrap();
        assert!(matches!(cfg.validate(), Err(CliError::Config(_))));
        let cfg = ScenarioConfig::from_json(MINIMAL).unwrap();
        assert!(matches!(cfg.matrix("A0"), Err(CliError::Config(_))));
        let bad_pair = MINIMAL.replace("[1,0]", "[1]");
        assert!(ScenarioConfig::from_json(&bad_pair).is_err());
        let unknown = MINIMAL.replace("\"id\"", "\"colour\": 1, \"id\"");
        assert!(ScenarioConfig::from_json(&unknown).is_err());
    }

    #[test]
    fn rejects_bad_times() {
        let cfg = ScenarioConfig::from_json(&MINIMAL.replace("0.01", "0")).unwrap();
        assert!(cfg.validate().is_err());
        let cfg = ScenarioConfig::from_json(&MINIMAL.replace("1.0", "-1.0")).unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let mut cfg = ScenarioConfig::from_json(MINIMAL).unwrap();
        cfg.apply_override("spectrum=1e-3").unwrap();
        assert_eq!(cfg.tolerance("spectrum", 1.0), 1e-3);
        assert_eq!(cfg.tolerance("trace", 0.5), 0.5);
        assert!(cfg.apply_override("spectrum").is_err());
        assert!(cfg.apply_override("spectrum=abc").is_err());
    }

    #[test]
    fn matrix_doc_round_trip() {
        let m = ComplexMatrix::pauli_y();
        assert_eq!(parse_matrix("m", &matrix_doc(&m)).unwrap(), m);
    }
}
