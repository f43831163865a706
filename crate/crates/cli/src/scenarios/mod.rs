//! Scenario runners, one per kind.

mod bloch;
mod heisenberg;
mod lvn;
mod sb2c;
mod verify;

use std::collections::BTreeMap;

use isospec_core::sb2c::{SingularityKind, SingularityReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{Kind, ScenarioConfig};
use crate::error::CliError;
use crate::output::TrajectoryTable;
use crate::report::{InvariantResult, SingularityInfo};

/// Everything a scenario produces besides wall time and file paths.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: TrajectoryTable,
    pub invariants: Vec<InvariantResult>,
    pub warnings: Vec<String>,
    pub observations: BTreeMap<String, f64>,
    pub singularity: Option<SingularityInfo>,
}

impl Outcome {
    fn new(table: TrajectoryTable, invariants: Vec<InvariantResult>) -> Self {
        Self { table, invariants, warnings: Vec::new(), observations: BTreeMap::new(), singularity: None }
    }
}

/// Invariant names registered for each kind, in report order.
pub fn registered_invariants(kind: Kind) -> &'static [&'static str] {
    match kind {
        Kind::Heisenberg => heisenberg::INVARIANTS,
        Kind::Lvn => lvn::INVARIANTS,
        Kind::Sb2c => sb2c::INVARIANTS,
        Kind::Bloch => bloch::INVARIANTS,
        Kind::Verify => verify::INVARIANTS,
    }
}

pub fn execute(kind: Kind, cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let out = match kind {
        Kind::Heisenberg => heisenberg::run(cfg)?,
        Kind::Lvn => lvn::run(cfg)?,
        Kind::Sb2c => sb2c::run(cfg)?,
        Kind::Bloch => bloch::run(cfg)?,
        Kind::Verify => verify::run(cfg)?,
    };
    debug_assert_eq!(
        out.invariants.iter().map(|r| r.name.as_str()).collect::<Vec<_>>(),
        registered_invariants(kind)
    );
    Ok(out)
}

fn rng(cfg: &ScenarioConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

/// Samples `0, step, …` up to `t_final` on an exactly uniform grid.
fn uniform_count(t_final: f64, step: f64) -> usize {
    (t_final / step + 1e-9).floor() as usize + 1
}

fn singularity_info(rep: &SingularityReport) -> SingularityInfo {
    let kind = match rep.kind {
        SingularityKind::VelocityDegeneracy => "velocity_degeneracy",
        SingularityKind::ConstraintPole => "constraint_pole",
    };
    SingularityInfo {
        kind: kind.into(),
        t_lower: rep.t_lower,
        t_upper: rep.t_upper,
        message: format!(
            "{kind} crossed in [{:.9}, {:.9}] near r = {:.9}",
            rep.t_lower, rep.t_upper, rep.r_lower
        ),
    }
}
