//! Operator-space Lagrangian for the Heisenberg equation `iȦ = [A, H]`.
//!
//! The Lagrangian lives on `T B(ℋ) ≅ B(ℋ) × B(ℋ)`:
//!
//! ```text
//! L(A, Ȧ) = (i/2) Tr(A†Ȧ − Ȧ†A) − Tr(A H A† − A† H A)
//! ```
//!
//! It is linear in the velocities; its Euler-Lagrange equations reproduce the
//! Heisenberg equation on the complexified space of all operators even though
//! both its Cartan forms vanish on Hermitian arguments.

use num_complex::Complex64;

use crate::error::{check_dims, Error, Result};
use crate::integrate::{integrate_rk4, Trajectory};
use crate::operator::{
    commutator, inner, propagator, ComplexMatrix, HERMITIAN_TOL, I,
};

/// Imaginary residue tolerated when a trace expression is reduced to a real number.
pub const REALITY_TOL: f64 = 1e-12;

/// A point `A` and a velocity `Ȧ` of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorTangent {
    point: ComplexMatrix,
    velocity: ComplexMatrix,
}

impl OperatorTangent {
    pub fn new(point: ComplexMatrix, velocity: ComplexMatrix) -> Result<Self> {
        check_dims(point.dim(), velocity.dim())?;
        Ok(Self { point, velocity })
    }

    pub fn point(&self) -> &ComplexMatrix {
        &self.point
    }

    pub fn velocity(&self) -> &ComplexMatrix {
        &self.velocity
    }
}

#[derive(Debug, Clone)]
pub struct HeisenbergScenario {
    pub hamiltonian: ComplexMatrix,
    pub initial: ComplexMatrix,
    pub t_final: f64,
    pub step: f64,
}

impl HeisenbergScenario {
    pub fn new(
        hamiltonian: ComplexMatrix,
        initial: ComplexMatrix,
        t_final: f64,
        step: f64,
    ) -> Result<Self> {
        check_dims(hamiltonian.dim(), initial.dim())?;
        require_hermitian(&hamiltonian, "Hamiltonian")?;
        if !(step > 0.0) {
            return Err(Error::Config(format!("step must be positive, got {step}")));
        }
        if step > t_final && t_final > 0.0 {
            return Err(Error::Config(format!(
                "step {step} exceeds t_final {t_final}"
            )));
        }
        Ok(Self {
            hamiltonian,
            initial,
            t_final,
            step,
        })
    }
}

/// A ket and its velocity.
#[derive(Debug, Clone, PartialEq)]
pub struct KetTangent {
    pub ket: Vec<Complex64>,
    pub ket_velocity: Vec<Complex64>,
}

impl KetTangent {
    pub fn new(ket: Vec<Complex64>, ket_velocity: Vec<Complex64>) -> Result<Self> {
        check_dims(ket.len(), ket_velocity.len())?;
        if ket
            .iter()
            .chain(&ket_velocity)
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidInput("ket entries must be finite".into()));
        }
        Ok(Self { ket, ket_velocity })
    }
}

pub(crate) fn require_hermitian(m: &ComplexMatrix, what: &str) -> Result<()> {
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        Err(Error::InvalidInput(format!(
            "{what} is not Hermitian (‖M − M†‖ = {defect:.3e})"
        )))
    } else {
        Ok(())
    }
}

fn real_part(z: Complex64, what: &str) -> f64 {
    debug_assert!(
        z.im.abs() <= REALITY_TOL * (1.0 + z.re.abs()),
        "{what} has imaginary residue {:e}",
        z.im
    );
    z.re
}

/// `−i[A, H]`, the velocity prescribed by the Heisenberg equation.
pub fn heisenberg_rhs(a: &ComplexMatrix, h: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(commutator(a, h)?.scale(-I))
}

/// `U† A₀ U` with `U = exp(−itH)`.
pub fn evolve_heisenberg_exact(
    a0: &ComplexMatrix,
    h: &ComplexMatrix,
    t: f64,
) -> Result<ComplexMatrix> {
    check_dims(a0.dim(), h.dim())?;
    require_hermitian(h, "Hamiltonian")?;
    let u = propagator(h, t)?;
    Ok(&(&u.dagger() * a0) * &u)
}

/// RK4 integration of `Ȧ = −i[A, H]`.
pub fn evolve_heisenberg_rk4(scenario: &HeisenbergScenario) -> Result<Trajectory<ComplexMatrix>> {
    if !(scenario.step > 0.0) {
        return Err(Error::Config(format!(
            "step must be positive, got {}",
            scenario.step
        )));
    }
    let h = &scenario.hamiltonian;
    let mut traj = integrate_rk4(
        |_, a: &ComplexMatrix| heisenberg_rhs(a, h),
        scenario.initial.clone(),
        scenario.t_final,
        scenario.step,
    )?;
    traj.metadata.insert("equation".into(), "heisenberg".into());
    Ok(traj)
}

/// Complex value of the Lagrangian before discarding its (vanishing) imaginary part.
pub fn lagrangian_heisenberg_raw(
    tangent: &OperatorTangent,
    h: &ComplexMatrix,
) -> Result<Complex64> {
    let a = tangent.point();
    let ad = tangent.velocity();
    check_dims(a.dim(), h.dim())?;
    let a_dag = a.dagger();
    let kinetic = (a_dag.trace_product(ad)? - ad.dagger().trace_product(a)?) * (I * 0.5);
    let potential = (&(a * h) * &a_dag).trace() - (&(&a_dag * h) * a).trace();
    Ok(kinetic - potential)
}

/// `(i/2) Tr(A†Ȧ − Ȧ†A) − Tr(A H A† − A† H A)`.
pub fn lagrangian_heisenberg(tangent: &OperatorTangent, h: &ComplexMatrix) -> Result<f64> {
    Ok(real_part(
        lagrangian_heisenberg_raw(tangent, h)?,
        "Heisenberg Lagrangian",
    ))
}

/// Poincaré-Cartan one-form `(i/2) Tr(A† dA − A dA†)` evaluated on the tangent vector `v`.
pub fn cartan_one_form_heisenberg(point: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64> {
    let z = (point.dagger().trace_product(v)? - point.trace_product(&v.dagger())?) * (I * 0.5);
    Ok(real_part(z, "Cartan one-form"))
}

/// Cartan two-form `i Tr(dA ∧ dA†)` evaluated on the pair `(v1, v2)`.
pub fn cartan_two_form_heisenberg(v1: &ComplexMatrix, v2: &ComplexMatrix) -> Result<f64> {
    let z = (v1.trace_product(&v2.dagger())? - v2.trace_product(&v1.dagger())?) * I;
    Ok(real_part(z, "Cartan two-form"))
}

/// `‖[A, H] − iȦ‖_F`, the norm of the `dA†` coefficient of the Euler-Lagrange one-form.
///
/// For Hermitian `H` the `dA` coefficient is its adjoint, so this vanishes exactly
/// when the velocity obeys the Heisenberg equation.
pub fn el_residual_heisenberg(tangent: &OperatorTangent, h: &ComplexMatrix) -> Result<f64> {
    let coeff = el_coefficient_heisenberg(tangent, h)?;
    Ok(coeff.frobenius_norm())
}

/// `[A, H] − iȦ`
pub fn el_coefficient_heisenberg(
    tangent: &OperatorTangent,
    h: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let c = commutator(tangent.point(), h)?;
    Ok(c.add_scaled(-I, tangent.velocity()))
}

/// Frenkel-type Lagrangian `(i/2)(⟨ψ|ψ̇⟩ − ⟨ψ̇|ψ⟩) − p⟨ψ|H|ψ⟩`.
///
/// `potential_prefactor = 1` makes the Euler-Lagrange equations read `iψ̇ = Hψ`;
/// `0.5` reproduces the historical normalization, whose equations are `iψ̇ = Hψ/2`.
pub fn lagrangian_schrodinger(
    kt: &KetTangent,
    h: &ComplexMatrix,
    potential_prefactor: f64,
) -> Result<f64> {
    check_dims(kt.ket.len(), h.dim())?;
    let psi = &kt.ket;
    let dpsi = &kt.ket_velocity;
    let kinetic = (inner(psi, dpsi)? - inner(dpsi, psi)?) * (I * 0.5);
    let energy = inner(psi, &h.apply(psi)?)?;
    Ok(real_part(
        kinetic - energy * potential_prefactor,
        "Schrödinger Lagrangian",
    ))
}

/// `exp(−itH) ψ₀`
pub fn evolve_schrodinger_exact(
    psi0: &[Complex64],
    h: &ComplexMatrix,
    t: f64,
) -> Result<Vec<Complex64>> {
    check_dims(psi0.len(), h.dim())?;
    require_hermitian(h, "Hamiltonian")?;
    propagator(h, t)?.apply(psi0)
}
