//! Cyclic Jacobi eigensolver for small Hermitian matrices.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Default Frobenius tolerance for Hermiticity and positivity checks.
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Ascending real eigenvalues of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() || eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("spectrum must be non-empty and finite".into()));
        }
        eigenvalues.sort_by(f64::total_cmp);
        Ok(Self { eigenvalues })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn matrix_dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Largest absolute eigenvalue difference; infinite when the dimensions differ.
    pub fn max_deviation(&self, other: &Spectrum) -> f64 {
        if self.eigenvalues.len() != other.eigenvalues.len() {
            return f64::INFINITY;
        }
        self.eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Returns ascending eigenvalues and a unitary `V` with `m = V diag(λ) V†`.
pub fn hermitian_eigendecomposition(m: &ComplexMatrix) -> Result<(Spectrum, ComplexMatrix)> {
    hermitian_eigendecomposition_tol(m, HERMITIAN_TOL)
}

pub fn hermitian_eigendecomposition_tol(
    m: &ComplexMatrix,
    tol: f64,
) -> Result<(Spectrum, ComplexMatrix)> {
    let defect = m.hermiticity_defect();
    if defect > tol {
        return Err(Error::InvalidInput(format!(
            "matrix is not Hermitian (‖M − M†‖ = {defect:.3e})"
        )));
    }
    if !m.is_finite() {
        return Err(Error::InvalidInput("matrix entries must be finite".into()));
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * 1e-2 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok((Spectrum { eigenvalues }, vectors))
}

/// Annihilates `a[p][q]` with a unitary acting on columns/rows `p`, `q`; accumulates it into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // U = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) block
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = -phase.conj() * s;
    let uqq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

pub fn spectrum(m: &ComplexMatrix) -> Result<Spectrum> {
    Ok(hermitian_eigendecomposition(m)?.0)
}

/// Applies `f` to the eigenvalues of a Hermitian matrix.
pub fn hermitian_function(
    m: &ComplexMatrix,
    tol: f64,
    f: impl Fn(f64) -> f64,
) -> Result<ComplexMatrix> {
    let (spec, v) = hermitian_eigendecomposition_tol(m, tol)?;
    let mapped: Vec<f64> = spec.eigenvalues().iter().map(|&l| f(l)).collect();
    Ok(&(&v * &ComplexMatrix::real_diagonal(&mapped)) * &v.dagger())
}

/// Positive semidefinite square root; eigenvalues within `−HERMITIAN_TOL` of zero are clipped.
pub fn hermitian_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    hermitian_sqrt_tol(m, HERMITIAN_TOL)
}

pub fn hermitian_sqrt_tol(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let (spec, v) = hermitian_eigendecomposition_tol(m, tol)?;
    if let Some(&low) = spec.eigenvalues().first() {
        if low < -tol {
            return Err(Error::InvalidInput(format!(
                "matrix is not positive semidefinite (eigenvalue {low:.3e})"
            )));
        }
    }
    let roots: Vec<f64> = spec.eigenvalues().iter().map(|&l| l.max(0.0).sqrt()).collect();
    let s = &(&v * &ComplexMatrix::real_diagonal(&roots)) * &v.dagger();
    Ok(s.hermitian_part())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(spec: &Spectrum, v: &ComplexMatrix) -> ComplexMatrix {
        &(v * &ComplexMatrix::real_diagonal(spec.eigenvalues())) * &v.dagger()
    }

    #[test]
    fn diagonal_input() {
        let m = ComplexMatrix::real_diagonal(&[0.7, 0.3]);
        let (spec, v) = hermitian_eigendecomposition(&m).unwrap();
        assert_eq!(spec.eigenvalues(), &[0.3, 0.7]);
        assert!(reconstruct(&spec, &v).distance(&m).unwrap() < 1e-15);
        // permutation up to phases
        for i in 0..2 {
            for j in 0..2 {
                let a = v[(i, j)].norm();
                assert!(a < 1e-15 || (a - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn pauli_x_spectrum_matches_characteristic_polynomial() {
        // λ² − tr λ + det = 0 for σ_x: λ² − 1 = 0
        let sx = ComplexMatrix::pauli_x();
        let tr = sx.trace().re;
        let det = sx.determinant().re;
        let disc = (tr * tr - 4.0 * det).sqrt();
        let roots = [(tr - disc) / 2.0, (tr + disc) / 2.0];
        let (spec, v) = hermitian_eigendecomposition(&sx).unwrap();
        assert!((spec.eigenvalues()[0] - roots[0]).abs() < 1e-12);
        assert!((spec.eigenvalues()[1] - roots[1]).abs() < 1e-12);
        assert_eq!(roots, [-1.0, 1.0]);
        assert!(reconstruct(&spec, &v).distance(&sx).unwrap() < 1e-14);
    }

    #[test]
    fn identity_is_degenerate() {
        let (spec, v) = hermitian_eigendecomposition(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(spec.eigenvalues(), &[1.0, 1.0]);
        assert!((&v.dagger() * &v).distance(&ComplexMatrix::identity(2)).unwrap() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eigendecomposition(&m), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn complex_off_diagonal() {
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, -1.0), Complex64::new(0.0, 0.5)],
            vec![Complex64::new(1.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.3, 0.2)],
            vec![Complex64::new(0.0, -0.5), Complex64::new(0.3, -0.2), Complex64::new(0.5, 0.0)],
        ])
        .unwrap();
        let (spec, v) = hermitian_eigendecomposition(&m).unwrap();
        assert!(reconstruct(&spec, &v).distance(&m).unwrap() < 1e-13);
        assert!((&v.dagger() * &v).distance(&ComplexMatrix::identity(3)).unwrap() < 1e-13);
        let sum: f64 = spec.eigenvalues().iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-13);
        assert!(spec.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sqrt_examples() {
        let s = hermitian_sqrt(&ComplexMatrix::real_diagonal(&[4.0, 9.0])).unwrap();
        assert!(s.distance(&ComplexMatrix::real_diagonal(&[2.0, 3.0])).unwrap() < 1e-14);

        let s = hermitian_sqrt(&ComplexMatrix::identity(2)).unwrap();
        assert!(s.distance(&ComplexMatrix::identity(2)).unwrap() < 1e-15);

        let r = 0.6;
        let rho = (&ComplexMatrix::identity(2) + &ComplexMatrix::pauli_z().scale_real(r))
            .scale_real(0.5);
        let s = hermitian_sqrt(&rho).unwrap();
        let expected = ComplexMatrix::real_diagonal(&[0.8f64.sqrt(), 0.2f64.sqrt()]);
        assert!(s.distance(&expected).unwrap() < 1e-14);
    }

    #[test]
    fn sqrt_rejects_negative_and_clips_roundoff() {
        let m = ComplexMatrix::real_diagonal(&[1.0, -0.1]);
        assert!(matches!(hermitian_sqrt(&m), Err(Error::InvalidInput(_))));

        let m = ComplexMatrix::real_diagonal(&[1.0, -1e-13]);
        let s = hermitian_sqrt(&m).unwrap();
        assert!(s.distance(&ComplexMatrix::real_diagonal(&[1.0, 0.0])).unwrap() < 1e-15);
    }

    #[test]
    fn spectrum_invariants() {
        let s = Spectrum::new(vec![0.5, -1.0, 0.2]).unwrap();
        assert_eq!(s.eigenvalues(), &[-1.0, 0.2, 0.5]);
        assert_eq!(s.matrix_dim(), 3);
        assert!(Spectrum::new(vec![]).is_err());
        assert!(Spectrum::new(vec![f64::NAN]).is_err());
    }
}
