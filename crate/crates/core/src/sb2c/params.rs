use crate::error::{check_dims, Error, Result};
use crate::heisenberg::require_hermitian;
use crate::operator::ComplexMatrix;

/// Reference element `A₀` and Hamiltonian `H`, both 2×2.
#[derive(Debug, Clone, PartialEq)]
pub struct Sb2cSetup {
    a0: ComplexMatrix,
    hamiltonian: ComplexMatrix,
}

impl Sb2cSetup {
    pub fn new(a0: ComplexMatrix, hamiltonian: ComplexMatrix) -> Result<Self> {
        check_dims(a0.dim(), 2)?;
        check_dims(hamiltonian.dim(), 2)?;
        require_hermitian(&hamiltonian, "Hamiltonian")?;
        Ok(Self { a0, hamiltonian })
    }

    pub fn a0(&self) -> &ComplexMatrix {
        &self.a0
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    /// `ρ₀ = A₀A₀†`
    pub fn rho0(&self) -> ComplexMatrix {
        (&self.a0 * &self.a0.dagger()).hermitian_part()
    }

    /// `A₀HA₀†`
    pub fn dressed_hamiltonian(&self) -> ComplexMatrix {
        (&(&self.a0 * &self.hamiltonian) * &self.a0.dagger()).hermitian_part()
    }
}

/// Scalar coefficients of the coordinate equations of motion.
///
/// ```text
/// ρ₀ = [[c, a+ib], [a−ib, d]]   H = [[γ, α+iβ], [α−iβ, δ]]   A₀HA₀† = [[h₃, h₁+ih₂], [h₁−ih₂, h₄]]
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sb2cParameters {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub h4: f64,
}

/// Tolerance on `b`, `h₂`, `β` for the real symmetric reference case.
pub const SIMPLIFIED_TOL: f64 = 1e-10;

impl Sb2cParameters {
    fn hermitian_2x2(diag0: f64, off_re: f64, off_im: f64, diag1: f64) -> ComplexMatrix {
        use num_complex::Complex64;
        ComplexMatrix::from_rows(&[
            vec![Complex64::new(diag0, 0.0), Complex64::new(off_re, off_im)],
            vec![Complex64::new(off_re, -off_im), Complex64::new(diag1, 0.0)],
        ])
        .expect("finite parameters")
    }

    pub fn rho0(&self) -> ComplexMatrix {
        Self::hermitian_2x2(self.c, self.a, self.b, self.d)
    }

    pub fn hamiltonian(&self) -> ComplexMatrix {
        Self::hermitian_2x2(self.gamma, self.alpha, self.beta, self.delta)
    }

    pub fn dressed_hamiltonian(&self) -> ComplexMatrix {
        Self::hermitian_2x2(self.h3, self.h1, self.h2, self.h4)
    }

    /// `b = h₂ = β = 0`: real symmetric reference and real Hamiltonian.
    pub fn is_simplified(&self) -> bool {
        self.b.abs() <= SIMPLIFIED_TOL
            && self.h2.abs() <= SIMPLIFIED_TOL
            && self.beta.abs() <= SIMPLIFIED_TOL
    }

    pub(crate) fn require_simplified(&self) -> Result<()> {
        if self.is_simplified() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "reduction needs b = h2 = beta = 0 (got b={:e}, h2={:e}, beta={:e})",
                self.b, self.h2, self.beta
            )))
        }
    }
}

pub fn derive_parameters(setup: &Sb2cSetup) -> Result<Sb2cParameters> {
    require_hermitian(setup.hamiltonian(), "Hamiltonian")?;
    let rho = setup.rho0();
    let h = setup.hamiltonian();
    let k = setup.dressed_hamiltonian();
    Ok(Sb2cParameters {
        c: rho[(0, 0)].re,
        a: rho[(0, 1)].re,
        b: rho[(0, 1)].im,
        d: rho[(1, 1)].re,
        gamma: h[(0, 0)].re,
        alpha: h[(0, 1)].re,
        beta: h[(0, 1)].im,
        delta: h[(1, 1)].re,
        h3: k[(0, 0)].re,
        h1: k[(0, 1)].re,
        h2: k[(0, 1)].im,
        h4: k[(1, 1)].re,
    })
}
