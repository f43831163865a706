//! Dense complex linear algebra shared by every dynamics module.

mod basis;
mod eigen;
mod expm;
mod matrix;

pub use basis::unitary_algebra_basis;
pub use eigen::{
    hermitian_eigendecomposition, hermitian_eigendecomposition_tol, hermitian_function,
    hermitian_sqrt, hermitian_sqrt_tol, spectrum, Spectrum, HERMITIAN_TOL,
};
pub use expm::{matrix_exponential, propagator, EXPM_TOLERANCE};
pub use matrix::{anticommutator, commutator, dagger, inner, vector_norm, ComplexMatrix, I};

/// Result of testing `‖M − M†‖_F ≤ tolerance`.
#[derive(Debug, Clone)]
pub struct HermitianCheck {
    pub defect: f64,
    pub tolerance: f64,
}

impl HermitianCheck {
    pub fn new(matrix: &ComplexMatrix, tolerance: f64) -> Self {
        Self {
            defect: matrix.hermiticity_defect(),
            tolerance: tolerance.max(0.0),
        }
    }

    pub fn passes(&self) -> bool {
        self.defect <= self.tolerance
    }
}
