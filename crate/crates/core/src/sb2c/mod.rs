//! Dynamics on the orbit `{gA₀ : g ∈ SB(2,ℂ)}` of upper-triangular unimodular matrices.
//!
//! Pulling the operator-space Lagrangian back to the orbit gives a first-order
//! Lagrangian whose Euler-Lagrange equations are the implicit system `𝔄Ẋ = Y`.
//! `𝔄` has rank two, so `Y` must satisfy one constraint; in the real symmetric case
//! the constraint surface is the graph `x = Φ(r)` and the motion reduces to a
//! nonlinear ODE for `(y, r)`.

mod dynamics;
mod group;
mod params;
mod projection;
mod reduced;
mod system;

pub use dynamics::{
    el_report, full_el_residual, lagrangian_sb2c, orbit_point, right_velocity, Sb2cElReport,
};
pub use group::{sb2c_inv, sb2c_mul, sb2c_to_matrix, Sb2cElement, Sb2cVelocity};
pub use params::{derive_parameters, Sb2cParameters, Sb2cSetup, SIMPLIFIED_TOL};
pub use projection::{congruence, numerical_rank, rho1_projection, rho2_projection};
pub use reduced::{
    integrate_reduced, reduced_rhs, velocity_denominator, ReducedSample, ReducedState,
    ReducedTrajectory, SingularityKind, SingularityReport, BRACKET_TOL,
};
pub use system::{
    build_matrix_system, constraint_covector, constraint_residual, kernel_vector, mat_vec,
    phi_denominator, phi_derivative, phi_of_r, singular_values, system_matrix, system_residual,
    system_vector, Matrix3, Vector3,
};

/// Group element together with its time stamp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sb2cState {
    pub element: Sb2cElement,
    pub time: f64,
}
