//! Dynamics on the unitary group pulled back through `φ_σ(u) = √σ u`, and the
//! Landau-von Neumann flow `ρ̇ = i[ρ, H]` on the isospectral orbit of `σ`.

use num_complex::Complex64;

use crate::error::{check_dims, Error, Result};
use crate::heisenberg::{require_hermitian, REALITY_TOL};
use crate::integrate::{integrate_rk4, Trajectory};
use crate::operator::{
    commutator, hermitian_eigendecomposition, hermitian_sqrt, propagator, spectrum,
    unitary_algebra_basis, ComplexMatrix, Spectrum, HERMITIAN_TOL, I,
};

/// Tolerance on `‖u†u − I‖` and on the tangency defect.
pub const UNITARY_TOL: f64 = 1e-10;
/// Tolerance used when validating density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

/// `‖u†u − I‖_F`
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    (&u.dagger() * u)
        .distance(&ComplexMatrix::identity(u.dim()))
        .unwrap_or(f64::INFINITY)
}

/// A unitary `u` with a velocity satisfying `u u̇† + u̇ u† = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryTangent {
    u: ComplexMatrix,
    udot: ComplexMatrix,
}

impl UnitaryTangent {
    pub fn new(u: ComplexMatrix, udot: ComplexMatrix) -> Result<Self> {
        check_dims(u.dim(), udot.dim())?;
        let defect = unitarity_defect(&u);
        if defect > UNITARY_TOL {
            return Err(Error::InvalidInput(format!("u is not unitary (defect {defect:.3e})")));
        }
        let tangency = (&(&u * &udot.dagger()) + &(&udot * &u.dagger())).frobenius_norm();
        if tangency > UNITARY_TOL {
            return Err(Error::InvalidInput(format!(
                "velocity is not tangent to the unitary group (defect {tangency:.3e})"
            )));
        }
        Ok(Self { u, udot })
    }

    /// Tangent `u·X` for anti-Hermitian `X`.
    pub fn from_left_generator(u: ComplexMatrix, x: &ComplexMatrix) -> Result<Self> {
        let udot = u.try_mul(x)?;
        Self::new(u, udot)
    }

    pub fn u(&self) -> &ComplexMatrix {
        &self.u
    }

    pub fn udot(&self) -> &ComplexMatrix {
        &self.udot
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }
}

/// Outcome of checking a candidate density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityValidation {
    pub rho: ComplexMatrix,
    /// Set when negative eigenvalues within tolerance were clipped.
    pub warnings: Vec<String>,
}

/// Checks Hermiticity, unit trace and positivity; eigenvalues in `[−tol, 0)` are clipped.
pub fn validate_density_matrix(rho: &ComplexMatrix, tol: f64) -> Result<DensityValidation> {
    if rho.hermiticity_defect() > tol {
        return Err(Error::InvalidInput(format!(
            "density matrix is not Hermitian (defect {:.3e})",
            rho.hermiticity_defect()
        )));
    }
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > tol {
        return Err(Error::InvalidInput(format!("density matrix has trace {tr}")));
    }
    let (spec, v) = hermitian_eigendecomposition(&rho.hermitian_part())?;
    let lowest = spec.eigenvalues()[0];
    if lowest < -tol {
        return Err(Error::InvalidInput(format!(
            "density matrix has negative eigenvalue {lowest:e}"
        )));
    }
    let mut warnings = Vec::new();
    let out = if lowest < 0.0 {
        warnings.push(format!("clipped negative eigenvalue {lowest:e}"));
        let clipped: Vec<f64> = spec.eigenvalues().iter().map(|e| e.max(0.0)).collect();
        let total: f64 = clipped.iter().sum();
        let d = ComplexMatrix::real_diagonal(&clipped).scale_real(1.0 / total);
        (&(&v * &d) * &v.dagger()).hermitian_part()
    } else {
        rho.hermitian_part()
    };
    Ok(DensityValidation { rho: out, warnings })
}

fn require_psd(sigma: &ComplexMatrix) -> Result<()> {
    require_hermitian(sigma, "sigma")?;
    let lowest = spectrum(sigma)?.eigenvalues()[0];
    if lowest < -HERMITIAN_TOL {
        return Err(Error::InvalidInput(format!(
            "sigma is not positive semidefinite (eigenvalue {lowest:e})"
        )));
    }
    Ok(())
}

/// A density matrix together with the spectrum of the orbit it lies on.
#[derive(Debug, Clone, PartialEq)]
pub struct IsospectralOrbitPoint {
    rho: ComplexMatrix,
    reference_spectrum: Spectrum,
}

impl IsospectralOrbitPoint {
    pub fn new(rho: ComplexMatrix, reference_spectrum: Spectrum) -> Result<Self> {
        let rho = validate_density_matrix(&rho, DENSITY_TOL)?.rho;
        let dev = spectrum(&rho)?.max_deviation(&reference_spectrum);
        if dev > 1e-8 {
            return Err(Error::InvalidInput(format!(
                "state is off the isospectral orbit (spectral deviation {dev:.3e})"
            )));
        }
        Ok(Self { rho, reference_spectrum })
    }

    /// `u†σu` with the spectrum of `σ` as reference.
    pub fn from_action(u: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<Self> {
        let rho = &(&u.dagger() * sigma) * u;
        Self::new(rho, spectrum(sigma)?)
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn reference_spectrum(&self) -> &Spectrum {
        &self.reference_spectrum
    }
}

/// `√σ u`
pub fn immersion_phi_sigma(u: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dims(u.dim(), sigma.dim())?;
    let defect = unitarity_defect(u);
    if defect > UNITARY_TOL {
        return Err(Error::InvalidInput(format!("u is not unitary (defect {defect:.3e})")));
    }
    require_psd(sigma)?;
    Ok(&hermitian_sqrt(sigma)? * u)
}

/// `i Tr(σ u̇ u†) − Tr(u†σu H − σH)`
pub fn lagrangian_unitary(
    ut: &UnitaryTangent,
    sigma: &ComplexMatrix,
    h: &ComplexMatrix,
) -> Result<f64> {
    check_dims(ut.dim(), sigma.dim())?;
    check_dims(ut.dim(), h.dim())?;
    require_hermitian(h, "Hamiltonian")?;
    let u = ut.u();
    let kinetic = theta_u_raw(ut, sigma)?;
    let rho = &(&u.dagger() * sigma) * u;
    let potential = rho.trace_product(h)? - sigma.trace_product(h)?;
    let z = kinetic - potential;
    debug_assert!(z.im.abs() <= REALITY_TOL * (1.0 + z.re.abs()));
    Ok(z.re)
}

/// `u† u̇`
pub fn maurer_cartan_left(ut: &UnitaryTangent) -> ComplexMatrix {
    &ut.u().dagger() * ut.udot()
}

/// `u̇ u†`
pub fn maurer_cartan_right(ut: &UnitaryTangent) -> ComplexMatrix {
    ut.udot() * &ut.u().dagger()
}

/// `i Tr(σ u̇ u†)` before discarding the imaginary part.
pub fn theta_u_raw(ut: &UnitaryTangent, sigma: &ComplexMatrix) -> Result<Complex64> {
    Ok(sigma.trace_product(&maurer_cartan_right(ut))? * I)
}

/// `i Tr(σ u̇ u†)`
pub fn theta_u_pairing(ut: &UnitaryTangent, sigma: &ComplexMatrix) -> Result<f64> {
    Ok(theta_u_raw(ut, sigma)?.re)
}

/// `i[ρ, H]`
pub fn lvn_rhs(rho: &ComplexMatrix, h: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(commutator(rho, h)?.scale(I))
}

/// `U ρ₀ U†` with `U = exp(−itH)`.
pub fn evolve_lvn_exact(rho0: &ComplexMatrix, h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    check_dims(rho0.dim(), h.dim())?;
    require_hermitian(h, "Hamiltonian")?;
    require_hermitian(rho0, "state")?;
    let u = propagator(h, t)?;
    Ok((&(&u * rho0) * &u.dagger()).hermitian_part())
}

pub fn evolve_lvn_rk4(
    rho0: &ComplexMatrix,
    h: &ComplexMatrix,
    t_final: f64,
    step: f64,
) -> Result<Trajectory<ComplexMatrix>> {
    check_dims(rho0.dim(), h.dim())?;
    require_hermitian(h, "Hamiltonian")?;
    let mut traj = integrate_rk4(|_, r: &ComplexMatrix| lvn_rhs(r, h), rho0.clone(), t_final, step)?;
    traj.metadata.insert("equation".into(), "landau-von-neumann".into());
    Ok(traj)
}

/// `ρ = u†σu` and `ρ̇ = u̇†σu + u†σu̇` for a tangent on the group.
pub fn orbit_state_and_velocity(
    ut: &UnitaryTangent,
    sigma: &ComplexMatrix,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_dims(ut.dim(), sigma.dim())?;
    let u = ut.u();
    let ud = ut.udot();
    let rho = &(&u.dagger() * sigma) * u;
    let rho_dot = &(&(&ud.dagger() * sigma) * u) + &(&(&u.dagger() * sigma) * ud);
    Ok((rho, rho_dot))
}

/// Coefficients `i Tr((ρ̇ − i[ρ, H]) τ_j)` on the orthonormal basis of `𝔲(n)`.
pub fn el_residual_unitary(
    ut: &UnitaryTangent,
    sigma: &ComplexMatrix,
    h: &ComplexMatrix,
) -> Result<Vec<f64>> {
    check_dims(ut.dim(), h.dim())?;
    let (rho, rho_dot) = orbit_state_and_velocity(ut, sigma)?;
    let m = &rho_dot - &lvn_rhs(&rho, h)?;
    unitary_algebra_basis(ut.dim())?
        .iter()
        .map(|tau| {
            let z = m.trace_product(tau)? * I;
            debug_assert!(z.im.abs() <= REALITY_TOL * (1.0 + m.frobenius_norm()));
            Ok(z.re)
        })
        .collect()
}

/// Coefficients of the Euler-Lagrange equations of [`lagrangian_unitary`] in the
/// exponential chart `u e^{Σ q_j τ_j}`: `i Tr((ρ̇ + i[ρ, H]) τ_j)`.
///
/// These vanish on `ρ̇ = −i[ρ, H]`, so they equal [`el_residual_unitary`] with `H` replaced by `−H`.
pub fn el_residual_unitary_lagrangian(
    ut: &UnitaryTangent,
    sigma: &ComplexMatrix,
    h: &ComplexMatrix,
) -> Result<Vec<f64>> {
    el_residual_unitary(ut, sigma, &h.scale_real(-1.0))
}

/// `Tr ρ²`
pub fn purity(rho: &ComplexMatrix) -> f64 {
    rho.trace_product(rho).map(|z| z.re).unwrap_or(f64::NAN)
}

/// `−Σ λ log λ` over the spectrum, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    Ok(spectrum(rho)?
        .eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum())
}
