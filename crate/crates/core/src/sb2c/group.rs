use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::ComplexMatrix;

/// `g = [[r, x+iy], [0, 1/r]]` with `r > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sb2cElement {
    pub r: f64,
    pub x: f64,
    pub y: f64,
}

/// Coordinate velocity `(ṙ, ẋ, ẏ)` of a curve in `SB(2,ℂ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Sb2cVelocity {
    pub r_dot: f64,
    pub x_dot: f64,
    pub y_dot: f64,
}

impl Sb2cVelocity {
    pub fn new(r_dot: f64, x_dot: f64, y_dot: f64) -> Self {
        Self { r_dot, x_dot, y_dot }
    }
}

impl Sb2cElement {
    pub fn new(r: f64, x: f64, y: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("SB(2,C) coordinate r must be positive, got {r}")));
        }
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain("SB(2,C) coordinates must be finite".into()));
        }
        Ok(Self { r, x, y })
    }

    pub const fn identity() -> Self {
        Self { r: 1.0, x: 0.0, y: 0.0 }
    }

    fn off_diagonal(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = Complex64::new(self.r, 0.0);
        m[(0, 1)] = self.off_diagonal();
        m[(1, 1)] = Complex64::new(1.0 / self.r, 0.0);
        m
    }

    /// Reads the coordinates back from an upper-triangular matrix with positive `(0,0)` entry.
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::DimensionMismatch { left: m.dim(), right: 2 });
        }
        let r = m[(0, 0)];
        if m[(1, 0)].norm() > 1e-12 || r.im.abs() > 1e-12 {
            return Err(Error::Domain("matrix is not in SB(2,C)".into()));
        }
        Self::new(r.re, m[(0, 1)].re, m[(0, 1)].im)
    }

    /// Group product in coordinates: `(r₁r₂, r₁z₂ + z₁/r₂)`.
    pub fn mul(&self, other: &Self) -> Self {
        let z = other.off_diagonal() * self.r + self.off_diagonal() / other.r;
        Self {
            r: self.r * other.r,
            x: z.re,
            y: z.im,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            r: 1.0 / self.r,
            x: -self.x,
            y: -self.y,
        }
    }

    pub fn inverse_matrix(&self) -> ComplexMatrix {
        self.inverse().to_matrix()
    }

    /// `ġ` for the coordinate velocity `v`.
    pub fn velocity_matrix(&self, v: &Sb2cVelocity) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = Complex64::new(v.r_dot, 0.0);
        m[(0, 1)] = Complex64::new(v.x_dot, v.y_dot);
        m[(1, 1)] = Complex64::new(-v.r_dot / (self.r * self.r), 0.0);
        m
    }
}

pub fn sb2c_to_matrix(g: &Sb2cElement) -> Result<ComplexMatrix> {
    Sb2cElement::new(g.r, g.x, g.y).map(|g| g.to_matrix())
}

pub fn sb2c_mul(g1: &Sb2cElement, g2: &Sb2cElement) -> Sb2cElement {
    g1.mul(g2)
}

pub fn sb2c_inv(g: &Sb2cElement) -> Sb2cElement {
    g.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(r: f64, x: f64, y: f64) -> Sb2cElement {
        Sb2cElement::new(r, x, y).unwrap()
    }

    fn close(a: &Sb2cElement, b: &Sb2cElement, tol: f64) -> bool {
        (a.r - b.r).abs() <= tol && (a.x - b.x).abs() <= tol && (a.y - b.y).abs() <= tol
    }

    #[test]
    fn to_matrix_examples() {
        assert_eq!(sb2c_to_matrix(&Sb2cElement::identity()).unwrap(), ComplexMatrix::identity(2));
        let m = sb2c_to_matrix(&g(2.0, 1.0, -1.0)).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, -1.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)],
        ])
        .unwrap();
        assert_eq!(m, expected);
        for (r, x, y) in [(0.1, 3.0, -2.0), (7.5, -0.25, 0.5), (1.3, 0.0, 9.0)] {
            let det = g(r, x, y).to_matrix().determinant();
            assert!((det - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn non_positive_r_is_domain_error() {
        assert!(matches!(Sb2cElement::new(0.0, 0.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(Sb2cElement::new(-1.0, 0.0, 0.0), Err(Error::Domain(_))));
        let bad = Sb2cElement { r: -2.0, x: 0.0, y: 0.0 };
        assert!(matches!(sb2c_to_matrix(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn product_examples() {
        let a = g(1.7, -0.3, 0.8);
        assert!(close(&sb2c_mul(&a, &Sb2cElement::identity()), &a, 1e-15));
        assert!(close(&sb2c_mul(&a, &sb2c_inv(&a)), &Sb2cElement::identity(), 1e-12));
        // matrix product oracle
        let p = sb2c_mul(&g(2.0, 0.0, 0.0), &g(3.0, 1.0, 0.0));
        let oracle = &g(2.0, 0.0, 0.0).to_matrix() * &g(3.0, 1.0, 0.0).to_matrix();
        assert!(close(&p, &g(6.0, 2.0, 0.0), 1e-15));
        assert!(p.to_matrix().distance(&oracle).unwrap() < 1e-15);
    }

    #[test]
    fn product_matches_matrices() {
        let a = g(0.6, 1.2, -0.4);
        let b = g(2.3, -0.7, 1.9);
        let oracle = &a.to_matrix() * &b.to_matrix();
        let p = a.mul(&b);
        assert!(p.to_matrix().distance(&oracle).unwrap() < 1e-12);
        assert!(close(&Sb2cElement::from_matrix(&oracle).unwrap(), &p, 1e-12));
    }

    #[test]
    fn inverse_examples() {
        assert!(close(&sb2c_inv(&Sb2cElement::identity()), &Sb2cElement::identity(), 0.0));
        assert!(close(&sb2c_inv(&g(2.0, 0.0, 0.0)), &g(0.5, 0.0, 0.0), 0.0));
        let a = g(1.9, 0.4, -2.2);
        assert!(close(&sb2c_inv(&sb2c_inv(&a)), &a, 1e-15));
        let prod = &a.to_matrix() * &a.inverse_matrix();
        assert!(prod.distance(&ComplexMatrix::identity(2)).unwrap() < 1e-12);
    }

    #[test]
    fn velocity_matrix_is_traceless_tangent() {
        // ġ g⁻¹ lies in the Lie algebra: upper triangular with real diagonal and zero trace
        let a = g(1.4, 0.2, -0.9);
        let v = Sb2cVelocity::new(0.3, -1.0, 0.5);
        let m = &a.velocity_matrix(&v) * &a.inverse_matrix();
        assert!(m.trace().norm() < 1e-15);
        assert!(m[(1, 0)].norm() < 1e-15);
        // finite-difference oracle
        let eps = 1e-6;
        let fwd = g(a.r + eps * v.r_dot, a.x + eps * v.x_dot, a.y + eps * v.y_dot).to_matrix();
        let bwd = g(a.r - eps * v.r_dot, a.x - eps * v.x_dot, a.y - eps * v.y_dot).to_matrix();
        let fd = (&fwd - &bwd).scale_real(0.5 / eps);
        assert!(fd.distance(&a.velocity_matrix(&v)).unwrap() < 1e-9);
    }
}
