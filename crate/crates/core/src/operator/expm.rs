//! Matrix exponential by scaling and squaring with a truncated Taylor series.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Scaled argument norm below which the Taylor series is summed directly.
const SCALED_NORM: f64 = 0.25;
const MAX_TERMS: usize = 40;

/// Relative size of the last Taylor term accepted before truncation.
pub const EXPM_TOLERANCE: f64 = 1e-12;

pub fn matrix_exponential(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_finite() {
        return Err(Error::InvalidInput("matrix exponential of non-finite matrix".into()));
    }
    let norm = m.one_norm();
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m.scale_real(0.5f64.powi(squarings));

    let n = m.dim();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=MAX_TERMS {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        // keep summing well past the nominal tolerance; the tail is cheap at this size
        if term.one_norm() <= EXPM_TOLERANCE * 1e-5 * sum.one_norm() {
            break;
        }
    }

    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

/// `exp(−i t h)`
pub fn propagator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    matrix_exponential(&h.scale(Complex64::new(0.0, -t)))
}
