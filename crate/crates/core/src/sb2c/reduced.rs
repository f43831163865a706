//! Reduced dynamics on the constraint surface `x = Φ(r)` of the real symmetric case.

use crate::error::{Error, Result};
use crate::integrate::{rk4_step, time_grid};

use super::group::{Sb2cElement, Sb2cVelocity};
use super::params::Sb2cParameters;
use super::system::{phi_denominator, phi_derivative, phi_of_r};

/// Width below which a singularity bracket is accepted.
pub const BRACKET_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    pub y: f64,
    pub r: f64,
    pub time: f64,
}

impl ReducedState {
    pub fn new(y: f64, r: f64, time: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() || !y.is_finite() || !time.is_finite() {
            return Err(Error::Domain(format!("reduced state needs finite y and r > 0, got y={y}, r={r}")));
        }
        Ok(Self { y, r, time })
    }
}

/// `ẏ = [(γa − h₁)r + (γd − h₄)Φ(r) + dα/r]/d`, `ṙ = −(γd − h₄)y/(a + dΦ′(r))`.
pub fn reduced_rhs(state: &ReducedState, p: &Sb2cParameters) -> Result<(f64, f64)> {
    p.require_simplified()?;
    if p.d == 0.0 {
        return Err(Error::Precondition("reduced system needs d != 0".into()));
    }
    let r = state.r;
    let phi = phi_of_r(r, p)?;
    let mobility = velocity_denominator(r, p)?;
    if mobility == 0.0 {
        return Err(Error::DynamicalSingularity(format!(
            "a + d·Phi'(r) vanishes at r = {r}"
        )));
    }
    let gd4 = p.gamma * p.d - p.h4;
    let y_dot = ((p.gamma * p.a - p.h1) * r + gd4 * phi + p.d * p.alpha / r) / p.d;
    let r_dot = -gd4 * state.y / mobility;
    Ok((y_dot, r_dot))
}

/// `a + d·Φ′(r)`
pub fn velocity_denominator(r: f64, p: &Sb2cParameters) -> Result<f64> {
    Ok(p.a + p.d * phi_derivative(r, p)?)
}

/// One sample of a reduced trajectory together with the implied group element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedSample {
    pub time: f64,
    pub y: f64,
    pub r: f64,
    pub x: f64,
}

impl ReducedSample {
    pub fn element(&self) -> Sb2cElement {
        Sb2cElement { r: self.r, x: self.x, y: self.y }
    }

    pub fn state(&self) -> ReducedState {
        ReducedState { y: self.y, r: self.r, time: self.time }
    }

    /// `(ṙ, ẋ, ẏ)` with `ẋ = Φ′(r)ṙ`.
    pub fn velocity(&self, p: &Sb2cParameters) -> Result<Sb2cVelocity> {
        let (y_dot, r_dot) = reduced_rhs(&self.state(), p)?;
        Ok(Sb2cVelocity::new(r_dot, phi_derivative(self.r, p)? * r_dot, y_dot))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityKind {
    /// `a + dΦ′(r)` changes sign.
    VelocityDegeneracy,
    /// The denominator of `Φ` changes sign.
    ConstraintPole,
}

/// Bracket `[t_lower, t_upper]` around the first crossing of a singular set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityReport {
    pub kind: SingularityKind,
    pub t_lower: f64,
    pub t_upper: f64,
    pub r_lower: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReducedTrajectory {
    pub samples: Vec<ReducedSample>,
    pub singularity: Option<SingularityReport>,
}

impl ReducedTrajectory {
    pub fn completed(&self) -> bool {
        self.singularity.is_none()
    }

    pub fn last(&self) -> Option<&ReducedSample> {
        self.samples.last()
    }
}

fn sample(state: [f64; 2], time: f64, p: &Sb2cParameters) -> Result<ReducedSample> {
    let [y, r] = state;
    Ok(ReducedSample { time, y, r, x: phi_of_r(r, p)? })
}

/// Signs of the two singular functions; `None` when either is zero or undefined.
fn signature(r: f64, p: &Sb2cParameters) -> Option<(bool, bool)> {
    if !(r > 0.0) || !r.is_finite() {
        return None;
    }
    let den = phi_denominator(r, p);
    if den == 0.0 || !den.is_finite() {
        return None;
    }
    let mob = velocity_denominator(r, p).ok()?;
    if mob == 0.0 || !mob.is_finite() {
        return None;
    }
    Some((den > 0.0, mob > 0.0))
}

fn classify(before: (bool, bool), r_after: f64, p: &Sb2cParameters) -> SingularityKind {
    let den = phi_denominator(r_after, p);
    if !(r_after > 0.0) || !den.is_finite() || den == 0.0 || (den > 0.0) != before.0 {
        SingularityKind::ConstraintPole
    } else {
        SingularityKind::VelocityDegeneracy
    }
}

/// RK4 on `(y, r)`, stopping at the first crossing of a singular set.
///
/// The crossing is bracketed by bisection on the step length; the returned
/// trajectory ends at the last state known to lie before the crossing.
pub fn integrate_reduced(
    initial: &ReducedState,
    p: &Sb2cParameters,
    t_final: f64,
    step: f64,
) -> Result<ReducedTrajectory> {
    let grid = time_grid(t_final, step)?;
    // surfaces precondition failures and an already singular start
    reduced_rhs(initial, p)?;
    let Some(mut sig) = signature(initial.r, p) else {
        return Err(Error::DynamicalSingularity(format!("initial r = {} is singular", initial.r)));
    };

    let t0 = initial.time;
    let mut rhs = |_: f64, s: &[f64; 2]| -> Result<[f64; 2]> {
        let st = ReducedState { y: s[0], r: s[1], time: 0.0 };
        let (yd, rd) = reduced_rhs(&st, p)?;
        Ok([yd, rd])
    };
    let mut state = [initial.y, initial.r];
    let mut out = ReducedTrajectory::default();
    out.samples.push(sample(state, t0, p)?);

    for w in grid.windows(2) {
        let h = w[1] - w[0];
        let attempt = |rhs: &mut dyn FnMut(f64, &[f64; 2]) -> Result<[f64; 2]>, tau: f64| -> Option<[f64; 2]> {
            let next = rk4_step(rhs, w[0], &state, tau).ok()?;
            (next.iter().all(|v| v.is_finite()) && signature(next[1], p) == Some(sig)).then_some(next)
        };
        if let Some(next) = attempt(&mut rhs, h) {
            state = next;
            sig = signature(state[1], p).unwrap_or(sig);
            out.samples.push(sample(state, t0 + w[1], p)?);
            continue;
        }

        let (mut lo, mut hi) = (0.0, h);
        let mut lo_state = state;
        while hi - lo > BRACKET_TOL {
            let mid = 0.5 * (lo + hi);
            match attempt(&mut rhs, mid) {
                Some(s) => {
                    lo = mid;
                    lo_state = s;
                }
                None => hi = mid,
            }
        }
        let r_after = rk4_step(&mut rhs, w[0], &state, hi).map(|s| s[1]).unwrap_or(f64::NAN);
        let kind = classify(sig, r_after, p);
        if lo > 0.0 {
            out.samples.push(sample(lo_state, t0 + w[0] + lo, p)?);
        }
        log::warn!("reduced integration halted near t = {:.9}: {kind:?}", t0 + w[0] + lo);
        out.singularity = Some(SingularityReport {
            kind,
            t_lower: t0 + w[0] + lo,
            t_upper: t0 + w[0] + hi,
            r_lower: lo_state[1],
        });
        break;
    }
    Ok(out)
}
