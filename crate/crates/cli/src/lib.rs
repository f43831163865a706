//! Batch scenario runner: configuration, execution, trajectory and report files.

pub mod config;
pub mod error;
pub mod output;
pub mod report;
pub mod scenarios;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub use config::{Format, Kind, ScenarioConfig};
pub use error::CliError;
pub use report::{InvariantResult, RunReport, Status};

pub const DEFAULT_OUT_DIR: &str = "isospec-out";

/// Command-line overrides applied on top of a loaded configuration.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub tolerances: Vec<String>,
}

/// A finished run: the report and where it was written.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: RunReport,
    pub report_path: PathBuf,
}

impl RunOutput {
    pub fn exit_code(&self) -> i32 {
        self.report.exit_code()
    }
}

/// Loads `config_path`, applies overrides and runs it.
pub fn run_file(kind: Kind, config_path: &Path, overrides: &Overrides) -> Result<RunOutput, CliError> {
    let mut cfg = ScenarioConfig::load(config_path)?;
    for kv in &overrides.tolerances {
        cfg.apply_override(kv)?;
    }
    if let Some(seed) = overrides.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &overrides.out {
        cfg.output.path = Some(out.clone());
    }
    if let Some(format) = overrides.format {
        cfg.output.format = Some(format);
    }
    run(kind, &cfg)
}

/// Runs one scenario and writes `trajectory.<ext>` and `report.json` under the output directory.
///
/// Configuration errors are returned before anything is written. A numerical
/// singularity still produces a report, and whatever trajectory was computed.
pub fn run(kind: Kind, cfg: &ScenarioConfig) -> Result<RunOutput, CliError> {
    cfg.validate()?;
    if let Some(declared) = cfg.kind {
        if declared != kind {
            return Err(CliError::Config(format!("config declares kind '{declared}' but '{kind}' was requested")));
        }
    }
    let dir = cfg.output.path.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    let format = cfg.output.format.unwrap_or_default();
    log::info!("running {kind} scenario '{}' (seed {})", cfg.id, cfg.seed);

    let started = Instant::now();
    let outcome = match scenarios::execute(kind, cfg) {
        Ok(o) => o,
        Err(CliError::Singular(msg)) => {
            log::warn!("{msg}");
            std::fs::create_dir_all(&dir)?;
            let report = RunReport {
                id: cfg.id.clone(),
                kind: kind.to_string(),
                seed: cfg.seed,
                status: Status::Singular,
                wall_time_s: started.elapsed().as_secs_f64(),
                // nothing was evaluated; every registered invariant is reported as failed
                invariants: scenarios::registered_invariants(kind)
                    .iter()
                    .map(|name| InvariantResult {
                        name: name.to_string(),
                        max_deviation: f64::NAN,
                        tolerance: f64::NAN,
                        pass: false,
                    })
                    .collect(),
                observations: BTreeMap::new(),
                trajectory: None,
                warnings: vec![msg.clone()],
                singularity: Some(report::SingularityInfo {
                    kind: "initial_configuration".into(),
                    t_lower: 0.0,
                    t_upper: 0.0,
                    message: msg,
                }),
            };
            let report_path = dir.join("report.json");
            report.write_json(&report_path)?;
            return Ok(RunOutput { report, report_path });
        }
        Err(e) => return Err(e),
    };

    std::fs::create_dir_all(&dir)?;
    let trajectory = outcome.table.write(&dir, kind.as_str(), format)?;
    let status = if outcome.singularity.is_some() {
        Status::Singular
    } else if outcome.invariants.iter().all(|r| r.pass) {
        Status::Ok
    } else {
        Status::InvariantFailure
    };
    let report = RunReport {
        id: cfg.id.clone(),
        kind: kind.to_string(),
        seed: cfg.seed,
        status,
        wall_time_s: started.elapsed().as_secs_f64(),
        invariants: outcome.invariants,
        trajectory: Some(trajectory.display().to_string()),
        observations: outcome.observations,
        warnings: outcome.warnings,
        singularity: outcome.singularity,
    };
    let report_path = dir.join("report.json");
    report.write_json(&report_path)?;
    Ok(RunOutput { report, report_path })
}
