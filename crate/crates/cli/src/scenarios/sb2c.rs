use isospec_core::heisenberg::{lagrangian_heisenberg, OperatorTangent};
use isospec_core::operator::commutator;
use isospec_core::sb2c::{
    constraint_residual, derive_parameters, el_report, integrate_reduced, lagrangian_sb2c, orbit_point,
    system_residual, system_vector, ReducedState, Sb2cElement, Sb2cSetup, Sb2cVelocity,
};
use isospec_core::ComplexMatrix;
use rand::Rng;

use super::{rng, singularity_info, Outcome};
use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::output::TrajectoryTable;
use crate::report::{max_dev, Checks};

pub const INVARIANTS: &[&str] = &[
    "constraint",
    "system_residual",
    "el_projection",
    "el_consistency",
    "determinant",
    "energy",
    "pullback",
];

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `Tr(H[A, A†])`, conserved along solutions.
fn energy(a: &ComplexMatrix, h: &ComplexMatrix) -> Result<f64, CliError> {
    Ok(h.trace_product(&commutator(a, &a.dagger())?)?.re)
}

pub fn run(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let setup = Sb2cSetup::new(cfg.matrix("A0")?, cfg.matrix("H")?)?;
    let p = derive_parameters(&setup)?;
    let init = cfg
        .initial
        .ok_or_else(|| CliError::Config("sb2c scenarios need 'initial': {\"y\": .., \"r\": ..}".into()))?;
    let start = ReducedState::new(init.y, init.r, 0.0)?;
    let traj = integrate_reduced(&start, &p, cfg.times.t_final, cfg.times.step)?;

    let h = setup.hamiltonian();
    let det0 = setup.a0().determinant();
    let mut table = TrajectoryTable::new(&["r", "x", "y"], Some("A"));
    let mut d = [0.0f64; 6];
    let mut e0 = None;
    for s in &traj.samples {
        let g = s.element();
        let a = orbit_point(&g, &setup);
        let v = s.velocity(&p)?;
        let y = system_vector(&g, &p)?;
        let scale = 1.0 + inf_norm(&y);
        d[0] = max_dev(d[0], constraint_residual(&g, &p)?.abs() / scale);
        d[1] = max_dev(d[1], inf_norm(&system_residual(&g, &[v.x_dot, v.y_dot, v.r_dot], &p)?) / scale);
        let rep = el_report(&g, &v, &setup)?;
        d[2] = max_dev(d[2], inf_norm(&rep.projected) / scale);
        d[3] = max_dev(d[3], rep.consistency_gap() / scale);
        d[4] = max_dev(d[4], (a.determinant() - det0).norm());
        let e = energy(&a, h)?;
        let e_ref = *e0.get_or_insert(e);
        d[5] = max_dev(d[5], (e - e_ref).abs() / (1.0 + e_ref.abs()));
        table.push(s.time, vec![s.r, s.x, s.y], Some(a));
    }

    let mut r = rng(cfg);
    let mut d_pull: f64 = 0.0;
    for _ in 0..cfg.property_samples {
        let g = Sb2cElement::new(r.random_range(0.2..3.0), r.random_range(-2.0..2.0), r.random_range(-2.0..2.0))?;
        let v = Sb2cVelocity::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0), r.random_range(-1.0..1.0));
        let tangent = OperatorTangent::new(orbit_point(&g, &setup), &g.velocity_matrix(&v) * setup.a0())?;
        let lh = lagrangian_heisenberg(&tangent, h)?;
        d_pull = max_dev(d_pull, (lh - lagrangian_sb2c(&g, &v, &setup)?).abs() / (1.0 + lh.abs()));
    }

    let mut checks = Checks::new(cfg);
    checks.record("constraint", 1e-8, d[0]);
    checks.record("system_residual", 1e-8, d[1]);
    checks.record("el_projection", 1e-8, d[2]);
    checks.record("el_consistency", 1e-9, d[3]);
    checks.record("determinant", 1e-10, d[4]);
    checks.record("energy", 1e-8, d[5]);
    checks.record("pullback", 1e-10, d_pull);

    let mut out = Outcome::new(table, checks.finish());
    if let Some(rep) = &traj.singularity {
        let info = singularity_info(rep);
        log::warn!("{}", info.message);
        out.warnings.push(info.message.clone());
        out.singularity = Some(info);
    }
    if let Some(last) = traj.last() {
        out.observations.insert("final_time".into(), last.time);
        out.observations.insert("final_r".into(), last.r);
    }
    Ok(out)
}
