use isospec_core::heisenberg::evolve_heisenberg_exact;
use isospec_core::operator::I;
use isospec_core::sb2c::{derive_parameters, integrate_reduced, ReducedState, Sb2cSetup};
use isospec_core::unitary_orbit::{validate_density_matrix, DENSITY_TOL};
use isospec_core::verifier::{
    el_residual_path, flatten_complex, CoordinateLagrangian, FnLagrangian, HeisenbergChart, SampledPath, Sb2cChart,
    UnitaryExpChart, DEFAULT_GRADIENT_STEP, MIN_PATH_LEN,
};
use isospec_core::ComplexMatrix;

use super::{singularity_info, uniform_count, Outcome};
use crate::config::{ScenarioConfig, VerifyTarget};
use crate::error::CliError;
use crate::output::TrajectoryTable;
use crate::report::{max_dev, Checks, SingularityInfo};

pub const INVARIANTS: &[&str] = &["max_residual", "convergence_ratio"];

/// Expected ratio of residuals when the grid spacing halves.
const SECOND_ORDER_RATIO: f64 = 4.0;

struct Target {
    lagrangian: Box<dyn CoordinateLagrangian>,
    /// Sampled solution on a uniform grid with the given spacing.
    sampler: Box<dyn Fn(f64) -> Result<(SampledPath, Option<SingularityInfo>), CliError>>,
    default_tol: f64,
}

fn uniform_path(
    t_final: f64,
    dt: f64,
    f: impl Fn(f64) -> Result<Vec<f64>, CliError>,
) -> Result<(SampledPath, Option<SingularityInfo>), CliError> {
    let n = uniform_count(t_final, dt);
    if n < MIN_PATH_LEN {
        return Err(CliError::Config(format!(
            "spacing {dt} gives {n} samples over t_final = {t_final}, need at least {MIN_PATH_LEN}"
        )));
    }
    let points = (0..n).map(|i| f(i as f64 * dt)).collect::<Result<Vec<_>, _>>()?;
    let times = (0..n).map(|i| i as f64 * dt).collect();
    Ok((SampledPath::new(times, points)?, None))
}

fn target(cfg: &ScenarioConfig) -> Result<Target, CliError> {
    let t_final = cfg.times.t_final;
    let kind = cfg
        .target
        .ok_or_else(|| CliError::Config("verify scenarios need 'target': heisenberg | lvn | sb2c | oscillator".into()))?;
    Ok(match kind {
        VerifyTarget::Heisenberg => {
            let a0 = cfg.matrix("A0")?;
            let h = cfg.matrix("H")?;
            evolve_heisenberg_exact(&a0, &h, 0.0)?;
            Target {
                lagrangian: Box::new(HeisenbergChart::new(h.clone())),
                sampler: Box::new(move |dt| {
                    uniform_path(t_final, dt, |t| Ok(flatten_complex(&evolve_heisenberg_exact(&a0, &h, t)?)))
                }),
                default_tol: 1e-3,
            }
        }
        VerifyTarget::Lvn => {
            let h = cfg.matrix("H")?;
            let sigma = validate_density_matrix(&cfg.matrix("rho0")?, DENSITY_TOL)?.rho;
            let n = h.dim();
            let chart = UnitaryExpChart::new(ComplexMatrix::identity(n), sigma, h.clone())?;
            // u = exp(−itH) solves the Euler-Lagrange equations of the orbit Lagrangian
            let q1 = chart.coordinates_of(&h.scale(-I))?;
            Target {
                lagrangian: Box::new(chart),
                sampler: Box::new(move |dt| uniform_path(t_final, dt, |t| Ok(q1.iter().map(|v| v * t).collect()))),
                default_tol: 1e-3,
            }
        }
        VerifyTarget::Sb2c => {
            let setup = Sb2cSetup::new(cfg.matrix("A0")?, cfg.matrix("H")?)?;
            let p = derive_parameters(&setup)?;
            let init = cfg
                .initial
                .ok_or_else(|| CliError::Config("the sb2c target needs 'initial': {\"y\": .., \"r\": ..}".into()))?;
            let start = ReducedState::new(init.y, init.r, 0.0)?;
            Target {
                lagrangian: Box::new(Sb2cChart::new(setup)),
                sampler: Box::new(move |dt| {
                    let n = uniform_count(t_final, dt);
                    let traj = integrate_reduced(&start, &p, (n - 1) as f64 * dt, dt)?;
                    let path = SampledPath::new(
                        traj.samples.iter().map(|s| s.time).collect(),
                        traj.samples.iter().map(|s| vec![s.r, s.x, s.y]).collect(),
                    )?;
                    Ok((path, traj.singularity.as_ref().map(singularity_info)))
                }),
                default_tol: 1e-4,
            }
        }
        VerifyTarget::Oscillator => Target {
            lagrangian: Box::new(FnLagrangian::new(1, |q: &[f64], v: &[f64]| 0.5 * (v[0] * v[0] - q[0] * q[0]))),
            sampler: Box::new(move |dt| uniform_path(t_final, dt, |t| Ok(vec![t.cos()]))),
            default_tol: 1e-5,
        },
    })
}

fn max_residual(l: &dyn CoordinateLagrangian, path: &SampledPath) -> Result<(f64, Vec<f64>), CliError> {
    let res = el_residual_path(l, path, DEFAULT_GRADIENT_STEP)?;
    let mut per_sample = vec![f64::NAN; path.len()];
    let mut worst: f64 = 0.0;
    for r in &res {
        per_sample[r.index] = r.norm();
        worst = max_dev(worst, r.norm());
    }
    Ok((worst, per_sample))
}

pub fn run(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let step = cfg.times.step;
    let t = target(cfg)?;
    let (fine, singular) = (t.sampler)(step)?;
    if let Some(info) = singular {
        return Err(CliError::Singular(info.message));
    }
    if fine.len() < MIN_PATH_LEN {
        return Err(CliError::Config(format!("path has {} samples, need {MIN_PATH_LEN}", fine.len())));
    }
    let (coarse, singular) = (t.sampler)(2.0 * step)?;
    if let Some(info) = singular {
        return Err(CliError::Singular(info.message));
    }
    let (fine_max, per_sample) = max_residual(t.lagrangian.as_ref(), &fine)?;
    let (coarse_max, _) = max_residual(t.lagrangian.as_ref(), &coarse)?;
    let ratio = coarse_max / fine_max;

    let columns: Vec<String> = (0..fine.dim()).map(|i| format!("q{i}")).chain(["residual".to_string()]).collect();
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = TrajectoryTable::new(&cols, None);
    for ((time, q), res) in fine.times().iter().zip(fine.points()).zip(&per_sample) {
        let mut row = q.clone();
        row.push(*res);
        table.push(*time, row, None);
    }

    let mut checks = Checks::new(cfg);
    checks.record("max_residual", t.default_tol, fine_max);
    checks.record("convergence_ratio", 1.0, (ratio - SECOND_ORDER_RATIO).abs());
    let mut out = Outcome::new(table, checks.finish());
    out.observations.insert("refinement_ratio".into(), ratio);
    out.observations.insert("coarse_max_residual".into(), coarse_max);
    Ok(out)
}
