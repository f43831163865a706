use isospec_core::bloch::{
    classify_orbit, density_from_bloch, sb2c_flow_on_state, unnormalized_flow, wedge_closed_form, wedge_determinant,
    y_field, BlochVector,
};
use isospec_core::integrate::time_grid;
use isospec_core::operator::spectrum;

use super::Outcome;
use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::output::TrajectoryTable;
use crate::report::{max_dev, Checks};

pub const INVARIANTS: &[&str] = &["ball", "determinant", "flow_field", "wedge", "orbit_class", "fixed_point"];

const FD_STEP: f64 = 1e-5;

/// Centered difference of `s ↦ flow_k(s, x)` at `s = 0`.
fn flow_velocity(k: usize, x: &BlochVector) -> Result<[f64; 3], CliError> {
    let plus = sb2c_flow_on_state(k, FD_STEP, x)?.to_array();
    let minus = sb2c_flow_on_state(k, -FD_STEP, x)?.to_array();
    Ok([0, 1, 2].map(|i| (plus[i] - minus[i]) / (2.0 * FD_STEP)))
}

pub fn run(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let x0 = BlochVector::from_array(cfg.x0.ok_or_else(|| CliError::Config("bloch scenarios need 'x0'".into()))?)?;
    let k = cfg.generator.ok_or_else(|| CliError::Config("bloch scenarios need 'generator' (1, 2 or 3)".into()))?;
    if !(1..=3).contains(&k) {
        return Err(CliError::Config(format!("generator must be 1, 2 or 3, got {k}")));
    }
    let grid = time_grid(cfg.times.t_final, cfg.times.step)?;
    let sigma0 = density_from_bloch(&x0);
    let det0 = sigma0.determinant();
    let spec0 = spectrum(&sigma0)?;
    let tag0 = classify_orbit(&x0).tag;
    let pole = BlochVector::new(0.0, 0.0, 1.0)?;

    let mut table = TrajectoryTable::new(&["x1", "x2", "x3", "radius"], Some("rho"));
    let mut d = [0.0f64; 6];
    let mut spectrum_motion: f64 = 0.0;
    for &t in &grid {
        let x = sb2c_flow_on_state(k, t, &x0)?;
        let rho = density_from_bloch(&x);
        let [x1, x2, x3] = x.to_array();
        table.push(t, vec![x1, x2, x3, x.radius()], Some(rho.clone()));

        d[0] = max_dev(d[0], (x.radius() - 1.0).max(0.0));
        let m = unnormalized_flow(k, t, &x0)?;
        d[1] = max_dev(d[1], (m.determinant() - det0).norm() / (1.0 + m.frobenius_norm().powi(2)));
        let fd = flow_velocity(k, &x)?;
        let field = y_field(k, &x)?;
        d[2] = max_dev(d[2], (0..3).map(|i| (fd[i] - field[i]).abs()).fold(0.0, f64::max));
        d[3] = max_dev(d[3], (wedge_determinant(&x) - wedge_closed_form(&x)).abs());
        if classify_orbit(&x).tag != tag0 {
            d[4] += 1.0;
        }
        for j in 1..=3 {
            let moved = sb2c_flow_on_state(j, t, &pole)?.to_array();
            d[5] = max_dev(d[5], (moved[0].abs()).max(moved[1].abs()).max((moved[2] - 1.0).abs()));
        }
        spectrum_motion = spectrum_motion.max(spectrum(&rho)?.max_deviation(&spec0));
    }

    let mut checks = Checks::new(cfg);
    checks.record("ball", 1e-10, d[0]);
    checks.record("determinant", 1e-10, d[1]);
    checks.record("flow_field", 1e-6, d[2]);
    checks.record("wedge", 1e-9, d[3]);
    checks.record("orbit_class", 0.0, d[4]);
    checks.record("fixed_point", 1e-9, d[5]);

    let mut out = Outcome::new(table, checks.finish());
    out.observations.insert("spectrum_motion".into(), spectrum_motion);
    out.observations.insert("initial_radius".into(), x0.radius());
    Ok(out)
}
