//! The Lagrangian pulled back to an `SB(2,ℂ)` orbit and its Euler-Lagrange residuals.

use num_complex::Complex64;

use crate::error::Result;
use crate::heisenberg::REALITY_TOL;
use crate::operator::{anticommutator, commutator, ComplexMatrix, I};

use super::group::{Sb2cElement, Sb2cVelocity};
use super::params::{derive_parameters, Sb2cSetup};
use super::system::{system_residual, Vector3};

/// `g A₀`
pub fn orbit_point(g: &Sb2cElement, setup: &Sb2cSetup) -> ComplexMatrix {
    &g.to_matrix() * setup.a0()
}

/// `ġ g⁻¹`
pub fn right_velocity(g: &Sb2cElement, v: &Sb2cVelocity) -> ComplexMatrix {
    &g.velocity_matrix(v) * &g.inverse_matrix()
}

/// `Im(Z) = (i/2)(Z† − Z)`
fn im_part(z: &ComplexMatrix) -> ComplexMatrix {
    (&z.dagger() - z).scale(I * 0.5)
}

/// `Re(Z) = (Z + Z†)/2`
fn re_part(z: &ComplexMatrix) -> ComplexMatrix {
    z.hermitian_part()
}

/// `−Tr(gρ₀g† Im(ġg⁻¹)) + Tr(H[gA₀, (gA₀)†])`
pub fn lagrangian_sb2c(g: &Sb2cElement, v: &Sb2cVelocity, setup: &Sb2cSetup) -> Result<f64> {
    let gm = g.to_matrix();
    let p = &(&gm * &setup.rho0()) * &gm.dagger();
    let m = right_velocity(g, v);
    let a = orbit_point(g, setup);
    let kinetic = -p.trace_product(&im_part(&m))?;
    let potential = setup.hamiltonian().trace_product(&commutator(&a, &a.dagger())?)?;
    let z: Complex64 = kinetic + potential;
    debug_assert!(z.im.abs() <= REALITY_TOL * (1.0 + z.re.abs()));
    Ok(z.re)
}

/// Matrix and scalar forms of the Euler-Lagrange equations at one tangent vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Sb2cElReport {
    /// `i Re(ġg⁻¹ gρ₀g†) − ½[gρ₀g†, H]`, anti-Hermitian.
    pub commutator_part: ComplexMatrix,
    /// `Im(ġg⁻¹ gρ₀g†) − ½{H, gρ₀g†} + gA₀HA₀†g†`, Hermitian.
    pub anticommutator_part: ComplexMatrix,
    /// Projections of the matrix equations on the `r`, `x`, `y` coordinate rows of `𝔄Ẋ − Y`.
    pub projected: Vector3,
    /// `𝔄Ẋ − Y` evaluated from the coordinate formulas.
    pub scalar: Vector3,
}

impl Sb2cElReport {
    /// Sum of the Frobenius norms of the two matrix equations.
    pub fn matrix_norm(&self) -> f64 {
        self.commutator_part.frobenius_norm() + self.anticommutator_part.frobenius_norm()
    }

    /// Largest disagreement between the projected matrix residual and the scalar residual.
    pub fn consistency_gap(&self) -> f64 {
        self.projected
            .iter()
            .zip(&self.scalar)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn scalar_norm(&self) -> f64 {
        self.scalar.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

pub fn el_report(g: &Sb2cElement, v: &Sb2cVelocity, setup: &Sb2cSetup) -> Result<Sb2cElReport> {
    let gm = g.to_matrix();
    let gd = gm.dagger();
    let h = setup.hamiltonian();
    let p = &(&gm * &setup.rho0()) * &gd;
    let k = &(&gm * &setup.dressed_hamiltonian()) * &gd;
    let mp = &right_velocity(g, v) * &p;

    let commutator_part = &re_part(&mp).scale(I) - &commutator(&p, h)?.scale_real(0.5);
    let anticommutator_part =
        &(&im_part(&mp) - &anticommutator(h, &p)?.scale_real(0.5)) + &k;

    // X = (anticommutator part) − (commutator part) = ([A,H] − iȦ)A†
    let x = &anticommutator_part - &commutator_part;
    let z = Complex64::new(g.x, g.y);
    let x01 = x[(0, 1)];
    let projected = [
        (x[(0, 0)].re - x[(1, 1)].re) / g.r - (z.conj() * x01).re,
        g.r * x01.re,
        g.r * x01.im,
    ];
    let params = derive_parameters(setup)?;
    let scalar = system_residual(g, &[v.x_dot, v.y_dot, v.r_dot], &params)?;
    Ok(Sb2cElReport { commutator_part, anticommutator_part, projected, scalar })
}

/// Summed Frobenius norms of the two matrix equations of motion.
pub fn full_el_residual(g: &Sb2cElement, v: &Sb2cVelocity, setup: &Sb2cSetup) -> Result<f64> {
    Ok(el_report(g, v, setup)?.matrix_norm())
}
