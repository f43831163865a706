use isospec_core::heisenberg::{lagrangian_heisenberg, OperatorTangent};
use isospec_core::operator::{hermitian_sqrt, propagator, spectrum, I};
use isospec_core::random;
use isospec_core::unitary_orbit::{
    el_residual_unitary, evolve_lvn_exact, evolve_lvn_rk4, lagrangian_unitary, purity, validate_density_matrix,
    von_neumann_entropy, UnitaryTangent, DENSITY_TOL,
};

use super::{rng, Outcome};
use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::output::TrajectoryTable;
use crate::report::{max_dev, Checks};

pub const INVARIANTS: &[&str] = &[
    "trace",
    "hermiticity",
    "spectrum",
    "purity",
    "entropy",
    "rk4_vs_exact",
    "el_residual",
    "pullback",
];

pub fn run(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let h = cfg.matrix("H")?;
    let checked = validate_density_matrix(&cfg.matrix("rho0")?, DENSITY_TOL)?;
    let rho0 = checked.rho;
    let (t_final, step) = (cfg.times.t_final, cfg.times.step);
    let rk = evolve_lvn_rk4(&rho0, &h, t_final, step)?;

    let spec0 = spectrum(&rho0)?;
    let (p0, s0) = (purity(&rho0), von_neumann_entropy(&rho0)?);
    let tr0 = rho0.trace();
    let ih = h.scale(I);

    let mut table = TrajectoryTable::new(&["purity"], Some("rho"));
    let mut d = [0.0f64; 7];
    for (t, rho) in rk.iter() {
        table.push(t, vec![purity(rho)], Some(rho.clone()));
        let ex = evolve_lvn_exact(&rho0, &h, t)?;
        d[0] = max_dev(d[0], (ex.trace() - tr0).norm());
        d[1] = max_dev(d[1], ex.hermiticity_defect());
        d[2] = max_dev(d[2], spectrum(&ex)?.max_deviation(&spec0));
        d[3] = max_dev(d[3], (purity(&ex) - p0).abs());
        d[4] = max_dev(d[4], (von_neumann_entropy(&ex)? - s0).abs());
        d[5] = max_dev(d[5], rho.distance(&ex)?);
        // u = e^{itH} carries σ = ρ₀ to u†σu = ρ(t)
        let ut = UnitaryTangent::from_left_generator(propagator(&h, -t)?, &ih)?;
        let res = el_residual_unitary(&ut, &rho0, &h)?;
        d[6] = max_dev(d[6], res.iter().fold(0.0, |m, v| m.max(v.abs())));
    }

    let mut r = rng(cfg);
    let root = hermitian_sqrt(&rho0)?;
    let n = rho0.dim();
    let mut d_pull: f64 = 0.0;
    for _ in 0..cfg.property_samples {
        let ut = UnitaryTangent::from_left_generator(random::unitary(&mut r, n), &random::anti_hermitian(&mut r, n))?;
        let lh = lagrangian_heisenberg(&OperatorTangent::new(&root * ut.u(), &root * ut.udot())?, &h)?;
        let lu = lagrangian_unitary(&ut, &rho0, &h)?;
        d_pull = max_dev(d_pull, (lh - lu).abs() / (1.0 + lh.abs()));
    }

    let mut checks = Checks::new(cfg);
    checks.record("trace", 1e-10, d[0]);
    checks.record("hermiticity", 1e-10, d[1]);
    checks.record("spectrum", 1e-10, d[2]);
    checks.record("purity", 1e-8, d[3]);
    checks.record("entropy", 1e-8, d[4]);
    checks.record("rk4_vs_exact", 1e-8, d[5]);
    checks.record("el_residual", 1e-10, d[6]);
    checks.record("pullback", 1e-10, d_pull);

    let mut out = Outcome::new(table, checks.finish());
    out.warnings = checked.warnings;
    out.observations.insert("initial_purity".into(), p0);
    out.observations.insert("initial_entropy".into(), s0);
    Ok(out)
}
