//! Fixed-step classical Runge-Kutta integration and sampled trajectories.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::ComplexMatrix;

/// A state that can be combined linearly by the integrator.
pub trait OdeState: Clone {
    /// `self + h·rate`
    fn step_by(&self, h: f64, rate: &Self) -> Self;
}

impl OdeState for ComplexMatrix {
    fn step_by(&self, h: f64, rate: &Self) -> Self {
        self.add_scaled(Complex64::new(h, 0.0), rate)
    }
}

impl<const N: usize> OdeState for [f64; N] {
    fn step_by(&self, h: f64, rate: &Self) -> Self {
        let mut out = *self;
        for (o, r) in out.iter_mut().zip(rate) {
            *o += h * r;
        }
        out
    }
}

impl OdeState for Vec<f64> {
    fn step_by(&self, h: f64, rate: &Self) -> Self {
        self.iter().zip(rate).map(|(a, b)| a + h * b).collect()
    }
}

/// Time-stamped samples of a state with free-form metadata.
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
    pub metadata: BTreeMap<String, String>,
}

impl<S> Trajectory<S> {
    pub fn new() -> Self {
        Self {
            times: Vec::new(),
            states: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, t: f64, state: S) {
        self.times.push(t);
        self.states.push(state);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &S)> {
        Some((*self.times.last()?, self.states.last()?))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &S)> {
        self.times.iter().copied().zip(self.states.iter())
    }
}

impl<S> Default for Trajectory<S> {
    fn default() -> Self {
        Self::new()
    }
}

pub fn rk4_step<S, F>(rhs: &mut F, t: f64, y: &S, h: f64) -> Result<S>
where
    S: OdeState,
    F: FnMut(f64, &S) -> Result<S> + ?Sized,
{
    let k1 = rhs(t, y)?;
    let k2 = rhs(t + 0.5 * h, &y.step_by(0.5 * h, &k1))?;
    let k3 = rhs(t + 0.5 * h, &y.step_by(0.5 * h, &k2))?;
    let k4 = rhs(t + h, &y.step_by(h, &k3))?;
    Ok(y.step_by(h / 6.0, &k1)
        .step_by(h / 3.0, &k2)
        .step_by(h / 3.0, &k3)
        .step_by(h / 6.0, &k4))
}

/// Uniform grid `0, step, 2·step, …` ending exactly at `t_final`; the last interval may be shorter.
pub fn time_grid(t_final: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Config(format!("step must be positive, got {step}")));
    }
    if !(t_final >= 0.0) || !t_final.is_finite() {
        return Err(Error::Config(format!("t_final must be non-negative, got {t_final}")));
    }
    let steps = ((t_final / step) - 1e-9).ceil().max(0.0) as usize;
    let mut grid: Vec<f64> = (0..steps).map(|i| i as f64 * step).collect();
    grid.push(t_final);
    Ok(grid)
}

/// Integrates `ẏ = rhs(t, y)` from `t = 0` and records every grid point.
pub fn integrate_rk4<S, F>(mut rhs: F, y0: S, t_final: f64, step: f64) -> Result<Trajectory<S>>
where
    S: OdeState,
    F: FnMut(f64, &S) -> Result<S>,
{
    let grid = time_grid(t_final, step)?;
    let mut traj = Trajectory::new();
    let mut y = y0;
    traj.push(grid[0], y.clone());
    for w in grid.windows(2) {
        y = rk4_step(&mut rhs, w[0], &y, w[1] - w[0])?;
        traj.push(w[1], y.clone());
    }
    traj.metadata.insert("integrator".into(), "rk4".into());
    traj.metadata.insert("step".into(), step.to_string());
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_endpoint() {
        let g = time_grid(1.0, 0.25).unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let g = time_grid(1.0, 0.3).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert_eq!(time_grid(0.0, 0.1).unwrap(), vec![0.0]);
        assert_eq!(time_grid(1.0, 1e-3).unwrap().len(), 1001);
    }

    #[test]
    fn bad_step_is_config_error() {
        assert!(matches!(time_grid(1.0, 0.0), Err(Error::Config(_))));
        assert!(matches!(time_grid(1.0, -1.0), Err(Error::Config(_))));
        assert!(matches!(time_grid(-1.0, 0.1), Err(Error::Config(_))));
    }

    #[test]
    fn exponential_decay_fourth_order() {
        let err = |h: f64| {
            let tr = integrate_rk4(|_, y: &[f64; 1]| Ok([-y[0]]), [1.0], 1.0, h).unwrap();
            (tr.last().unwrap().1[0] - (-1.0f64).exp()).abs()
        };
        let ratio = err(0.02) / err(0.01);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn harmonic_oscillator_vec_state() {
        let tr = integrate_rk4(|_, y: &Vec<f64>| Ok(vec![y[1], -y[0]]), vec![1.0, 0.0], 2.0, 1e-3)
            .unwrap();
        let (_, y) = tr.last().unwrap();
        assert!((y[0] - 2.0f64.cos()).abs() < 1e-12);
        assert!((y[1] + 2.0f64.sin()).abs() < 1e-12);
    }
}
