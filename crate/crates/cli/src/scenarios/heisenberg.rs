use isospec_core::heisenberg::{
    cartan_one_form_heisenberg, cartan_two_form_heisenberg, evolve_heisenberg_exact, evolve_heisenberg_rk4,
    heisenberg_rhs, lagrangian_heisenberg_raw, HeisenbergScenario, OperatorTangent,
};
use isospec_core::operator::{spectrum, HERMITIAN_TOL};
use isospec_core::random;
use isospec_core::verifier::{flatten_complex, verify_trajectory, HeisenbergChart, SampledPath, MIN_PATH_LEN};
use isospec_core::ComplexMatrix;

use super::{rng, uniform_count, Outcome};
use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::output::TrajectoryTable;
use crate::report::{max_dev, Checks};

pub const INVARIANTS: &[&str] = &[
    "spectrum",
    "trace",
    "frobenius_norm",
    "rk4_vs_exact",
    "lagrangian_reality",
    "verifier",
    "cartan_degeneracy",
];

/// Power sums `Tr(Aᵏ)`, `k = 1..n`; they fix the spectrum of a general matrix.
fn power_sums(a: &ComplexMatrix) -> Vec<num_complex::Complex64> {
    let mut p = a.clone();
    let mut out = Vec::with_capacity(a.dim());
    for _ in 0..a.dim() {
        out.push(p.trace());
        p = &p * a;
    }
    out
}

pub fn run(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let a0 = cfg.matrix("A0")?;
    let h = cfg.matrix("H")?;
    let (t_final, step) = (cfg.times.t_final, cfg.times.step);
    let scenario = HeisenbergScenario::new(h.clone(), a0.clone(), t_final, step)?;
    let rk = evolve_heisenberg_rk4(&scenario)?;
    let mut warnings = Vec::new();

    let hermitian = a0.is_hermitian(HERMITIAN_TOL);
    if !hermitian {
        warnings.push("A0 is not Hermitian; spectrum is tracked through power sums".to_string());
    }
    let spec0 = if hermitian { Some(spectrum(&a0)?) } else { None };
    let sums0 = power_sums(&a0);

    let mut table = TrajectoryTable::new(&[], Some("A"));
    let (mut d_spec, mut d_trace, mut d_norm, mut d_rk, mut d_real) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (t, a) in rk.iter() {
        table.push(t, Vec::new(), Some(a.clone()));
        let ex = evolve_heisenberg_exact(&a0, &h, t)?;
        d_spec = max_dev(
            d_spec,
            match &spec0 {
                Some(s0) => spectrum(&ex.hermitian_part())?.max_deviation(s0),
                None => power_sums(&ex).iter().zip(&sums0).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max),
            },
        );
        d_trace = max_dev(d_trace, (ex.trace() - a0.trace()).norm());
        d_norm = max_dev(d_norm, (ex.frobenius_norm() - a0.frobenius_norm()).abs());
        d_rk = max_dev(d_rk, a.distance(&ex)?);
        let tangent = OperatorTangent::new(a.clone(), heisenberg_rhs(a, &h)?)?;
        let l = lagrangian_heisenberg_raw(&tangent, &h)?;
        d_real = max_dev(d_real, l.im.abs() / (1.0 + l.re.abs()));
    }

    let n = uniform_count(t_final, step);
    if n < MIN_PATH_LEN {
        return Err(CliError::Config(format!(
            "t_final / step must allow at least {MIN_PATH_LEN} samples for the verifier"
        )));
    }
    let path = SampledPath::from_fn(0.0, step, n, |t| {
        flatten_complex(&evolve_heisenberg_exact(&a0, &h, t).expect("validated inputs"))
    })?;
    let verifier_tol = cfg.tolerance("verifier", 1e-3);
    let vrep = verify_trajectory(&HeisenbergChart::new(h.clone()), &path, verifier_tol)?;

    let mut r = rng(cfg);
    let dim = a0.dim();
    let mut d_cartan: f64 = 0.0;
    for _ in 0..cfg.property_samples {
        let p = random::hermitian(&mut r, dim);
        let v1 = random::hermitian(&mut r, dim);
        let v2 = random::hermitian(&mut r, dim);
        d_cartan = max_dev(d_cartan, cartan_one_form_heisenberg(&p, &v1)?.abs());
        d_cartan = max_dev(d_cartan, cartan_two_form_heisenberg(&v1, &v2)?.abs());
    }

    let mut checks = Checks::new(cfg);
    checks.record("spectrum", 1e-10, d_spec);
    checks.record("trace", 1e-10, d_trace);
    checks.record("frobenius_norm", 1e-10, d_norm);
    checks.record("rk4_vs_exact", 1e-8, d_rk);
    checks.record("lagrangian_reality", 1e-12, d_real);
    checks.record("verifier", 1e-3, vrep.max_residual);
    checks.record("cartan_degeneracy", 1e-12, d_cartan);

    let mut out = Outcome::new(table, checks.finish());
    out.warnings = warnings;
    out.observations.insert("verifier_mean_residual".into(), vrep.mean_residual);
    out.observations.insert("verifier_worst_time".into(), vrep.worst_time);
    Ok(out)
}
