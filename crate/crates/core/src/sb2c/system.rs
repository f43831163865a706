//! The implicit coordinate system `𝔄Ẋ = Y` with `Ẋ = (ẋ, ẏ, ṙ)`.

use crate::error::{Error, Result};

use super::group::Sb2cElement;
use super::params::Sb2cParameters;

pub type Matrix3 = [[f64; 3]; 3];
pub type Vector3 = [f64; 3];

/// `𝔄 = [[−b, a, 0], [0, d, b], [−d, 0, −a]]`
pub fn system_matrix(p: &Sb2cParameters) -> Matrix3 {
    [[-p.b, p.a, 0.0], [0.0, p.d, p.b], [-p.d, 0.0, -p.a]]
}

/// Right-hand side `Y(r, x, y)`.
pub fn system_vector(g: &Sb2cElement, p: &Sb2cParameters) -> Result<Vector3> {
    let Sb2cElement { r, x, y } = *g;
    if !(r > 0.0) {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    let (ga1, gd4) = (p.gamma * p.a - p.h1, p.gamma * p.d - p.h4);
    let gb2 = p.gamma * p.b - p.h2;
    let y1 = (p.gamma * p.c - p.h3) * r + ga1 * x + gb2 * y
        - (p.delta * p.d - p.h4) / r.powi(3)
        - p.d * (p.alpha * x + p.beta * y) / (r * r);
    let y2 = ga1 * r + gd4 * x + p.d * p.alpha / r;
    let y3 = gb2 * r + gd4 * y + p.d * p.beta / r;
    Ok([y1, y2, y3])
}

pub fn build_matrix_system(g: &Sb2cElement, p: &Sb2cParameters) -> Result<(Matrix3, Vector3)> {
    Ok((system_matrix(p), system_vector(g, p)?))
}

/// `K = (a, b, −d)`, spanning the right kernel of `𝔄`.
pub fn kernel_vector(p: &Sb2cParameters) -> Vector3 {
    [p.a, p.b, -p.d]
}

/// `(d, −a, −b)`, spanning the left kernel of `𝔄`; pairing it with `Y` gives the constraint.
pub fn constraint_covector(p: &Sb2cParameters) -> Vector3 {
    [p.d, -p.a, -p.b]
}

pub fn mat_vec(m: &Matrix3, v: &Vector3) -> Vector3 {
    let mut out = [0.0; 3];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

pub fn dot(u: &Vector3, v: &Vector3) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// `d·Y₁ − a·Y₂ − b·Y₃`, the solvability condition of `𝔄Ẋ = Y`.
pub fn constraint_residual(g: &Sb2cElement, p: &Sb2cParameters) -> Result<f64> {
    let y = system_vector(g, p)?;
    Ok(dot(&constraint_covector(p), &y))
}

/// `𝔄Ẋ − Y` for the coordinate velocity `Ẋ = (ẋ, ẏ, ṙ)`.
pub fn system_residual(g: &Sb2cElement, xdot: &Vector3, p: &Sb2cParameters) -> Result<Vector3> {
    let (m, y) = build_matrix_system(g, p)?;
    let lhs = mat_vec(&m, xdot);
    Ok([lhs[0] - y[0], lhs[1] - y[1], lhs[2] - y[2]])
}

/// Singular values in decreasing order, by one-sided Jacobi rotations.
pub fn singular_values(m: &Matrix3) -> Vector3 {
    // columns of m
    let mut cols = [[0.0; 3]; 3];
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            cols[j][i] = *v;
        }
    }
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..2 {
            for q in p + 1..3 {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..3 {
                    let (u, v) = (cols[p][k], cols[q][k]);
                    cols[p][k] = c * u - s * v;
                    cols[q][k] = s * u + c * v;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv = [0.0; 3];
    for (s, c) in sv.iter_mut().zip(&cols) {
        *s = dot(c, c).sqrt();
    }
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Numerator coefficients `(n₄, n₂, n₀)` and denominator coefficients `(m₂, m₀)` of Φ.
fn phi_coefficients(p: &Sb2cParameters) -> ([f64; 3], [f64; 2]) {
    let n4 = p.a * (p.gamma * p.a - p.h1) - p.d * (p.gamma * p.c - p.h3);
    let n2 = p.a * p.d * p.alpha;
    let n0 = (p.delta * p.d - p.h4) * p.d;
    let m2 = p.h4 * p.a - p.d * p.h1;
    let m0 = p.d * p.d * p.alpha;
    ([n4, n2, n0], [m2, m0])
}

/// `r[(h₄a − dh₁)r² − d²α]`
pub fn phi_denominator(r: f64, p: &Sb2cParameters) -> f64 {
    let (_, [m2, m0]) = phi_coefficients(p);
    r * (m2 * r * r - m0)
}

fn check_phi_domain(r: f64, p: &Sb2cParameters) -> Result<()> {
    p.require_simplified()?;
    if !(r > 0.0) {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    Ok(())
}

/// Rational constraint surface `x = Φ(r)` of the real symmetric case.
pub fn phi_of_r(r: f64, p: &Sb2cParameters) -> Result<f64> {
    check_phi_domain(r, p)?;
    let ([n4, n2, n0], _) = phi_coefficients(p);
    let den = phi_denominator(r, p);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::SingularConfiguration(format!(
            "denominator of Phi vanishes at r = {r}"
        )));
    }
    let r2 = r * r;
    Ok((n4 * r2 * r2 + n2 * r2 + n0) / den)
}

/// `dΦ/dr`
pub fn phi_derivative(r: f64, p: &Sb2cParameters) -> Result<f64> {
    check_phi_domain(r, p)?;
    let ([n4, n2, n0], [m2, m0]) = phi_coefficients(p);
    let den = phi_denominator(r, p);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::SingularConfiguration(format!(
            "denominator of Phi vanishes at r = {r}"
        )));
    }
    let r2 = r * r;
    let num = n4 * r2 * r2 + n2 * r2 + n0;
    let dnum = 4.0 * n4 * r2 * r + 2.0 * n2 * r;
    let dden = 3.0 * m2 * r2 - m0;
    Ok((dnum * den - num * dden) / (den * den))
}
