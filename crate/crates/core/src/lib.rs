//! Lagrangian descriptions of closed quantum dynamics on small dense operator spaces.
//!
//! - [`operator`]: dense complex matrices, exponential, Hermitian eigensolver.
//! - [`heisenberg`]: the operator-space Lagrangian whose Euler-Lagrange equations are the
//!   Heisenberg equation, with its Cartan forms and exact/RK4 flows.
//! - [`sb2c`]: the constrained first-order dynamics induced on an `SB(2,ℂ)` orbit.
//! - [`unitary_orbit`]: the pulled-back Lagrangian on the unitary group and the
//!   Landau-von Neumann flow on isospectral orbits.
//! - [`bloch`]: Bloch-ball geometry of the `SB(2,ℂ)` action on qubit states.
//! - [`verifier`]: finite-difference Euler-Lagrange residuals for coordinate Lagrangians.

pub mod bloch;
pub mod error;
pub mod heisenberg;
pub mod integrate;
pub mod operator;
pub mod random;
pub mod sb2c;
pub mod unitary_orbit;
pub mod verifier;

pub use error::{Error, Result};
pub use integrate::Trajectory;
pub use operator::ComplexMatrix;
