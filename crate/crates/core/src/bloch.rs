//! Bloch-ball picture of the `SB(2,ℂ)` action `σ ↦ gσg†/Tr(gσg†)` on qubit states.
//!
//! The generators `τ₁`, `τ₂`, `τ₃` induce the vector fields
//!
//! ```text
//! Y₁ = (1 − x₃ − x₁², −x₁x₂, x₁ − x₁x₃)
//! Y₂ = (x₁x₂, x₃ − 1 + x₂², −x₂ + x₂x₃)
//! Y₃ = (−x₁x₃, −x₂x₃, 1 − x₃²)
//! ```
//!
//! `Y₁`, `Y₂` are the generators of `exp(tτ₁)`, `exp(tτ₂)`; `Y₃` generates `exp(tτ₃/2)`.

use num_complex::Complex64;

use crate::error::{check_dims, Error, Result};
use crate::operator::{matrix_exponential, ComplexMatrix, I};

/// Tolerance on `r ≤ 1`.
pub const BALL_TOL: f64 = 1e-10;
/// Tolerance for orbit classification.
pub const ORBIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl BlochVector {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let v = Self { x1, x2, x3 };
        if !(x1.is_finite() && x2.is_finite() && x3.is_finite()) {
            return Err(Error::InvalidInput("Bloch vector must be finite".into()));
        }
        if v.radius() > 1.0 + BALL_TOL {
            return Err(Error::Domain(format!("Bloch vector radius {} exceeds 1", v.radius())));
        }
        Ok(v)
    }

    pub fn from_array(x: [f64; 3]) -> Result<Self> {
        Self::new(x[0], x[1], x[2])
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn radius(&self) -> f64 {
        self.radius_squared().sqrt()
    }

    pub fn radius_squared(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitTag {
    FixedPointP,
    PureSphere,
    Bulk,
}

impl OrbitTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrbitTag::FixedPointP => "FIXED_POINT_P",
            OrbitTag::PureSphere => "PURE_SPHERE",
            OrbitTag::Bulk => "BULK",
        }
    }
}

/// Orbit type of a state together with its distance to the nearest class boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitClass {
    pub tag: OrbitTag,
    pub margin: f64,
}

/// Basis element `τ_k` of the Lie algebra of `SB(2,ℂ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sb2cGenerator {
    index: usize,
    matrix: ComplexMatrix,
}

impl Sb2cGenerator {
    pub fn new(index: usize) -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let rows = match index {
            1 => [[zero, one], [zero, zero]],
            2 => [[zero, I], [zero, zero]],
            3 => [[one, zero], [zero, -one]],
            _ => return Err(Error::InvalidInput(format!("generator index must be 1, 2 or 3, got {index}"))),
        };
        let matrix = ComplexMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()])?;
        Ok(Self { index, matrix })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// One-parameter subgroup whose orbits are the integral curves of `Y_k`.
    pub fn flow_element(&self, t: f64) -> Result<ComplexMatrix> {
        let speed = if self.index == 3 { 0.5 * t } else { t };
        matrix_exponential(&self.matrix.scale_real(speed))
    }
}

/// `½(I + x·σ)`
pub fn density_from_bloch(x: &BlochVector) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(2);
    m = m.add_scaled(Complex64::new(x.x1, 0.0), &ComplexMatrix::pauli_x());
    m = m.add_scaled(Complex64::new(x.x2, 0.0), &ComplexMatrix::pauli_y());
    m = m.add_scaled(Complex64::new(x.x3, 0.0), &ComplexMatrix::pauli_z());
    m.scale_real(0.5)
}

/// `x_k = Tr(ρσ_k)`
pub fn bloch_from_density(rho: &ComplexMatrix) -> Result<BlochVector> {
    check_dims(rho.dim(), 2)?;
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > BALL_TOL {
        return Err(Error::InvalidInput(format!("state has trace {tr}, expected 1")));
    }
    if rho.hermiticity_defect() > BALL_TOL {
        return Err(Error::InvalidInput("state is not Hermitian".into()));
    }
    let comp = |p: ComplexMatrix| rho.trace_product(&p).map(|z| z.re);
    BlochVector::new(
        comp(ComplexMatrix::pauli_x())?,
        comp(ComplexMatrix::pauli_y())?,
        comp(ComplexMatrix::pauli_z())?,
    )
}

fn check_index(k: usize) -> Result<()> {
    if (1..=3).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("field index must be 1, 2 or 3, got {k}")))
    }
}

/// Components of `Y_k` at `x`.
pub fn y_field(k: usize, x: &BlochVector) -> Result<[f64; 3]> {
    check_index(k)?;
    let [x1, x2, x3] = x.to_array();
    Ok(match k {
        1 => [1.0 - x3 - x1 * x1, -x1 * x2, x1 - x1 * x3],
        2 => [x1 * x2, x3 - 1.0 + x2 * x2, -x2 + x2 * x3],
        _ => [-x1 * x3, -x2 * x3, 1.0 - x3 * x3],
    })
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant of the matrix with rows `Y₁`, `Y₂`, `Y₃`.
pub fn wedge_determinant(x: &BlochVector) -> f64 {
    let rows = [
        y_field(1, x).expect("valid index"),
        y_field(2, x).expect("valid index"),
        y_field(3, x).expect("valid index"),
    ];
    det3(&rows)
}

/// `−(1 − x₃)²(1 − r²)`
pub fn wedge_closed_form(x: &BlochVector) -> f64 {
    -(1.0 - x.x3).powi(2) * (1.0 - x.radius_squared())
}

pub fn classify_orbit(x: &BlochVector) -> OrbitClass {
    let to_p = (x.x1 * x.x1 + x.x2 * x.x2 + (x.x3 - 1.0).powi(2)).sqrt();
    let off_sphere = (x.radius() - 1.0).abs();
    if to_p <= ORBIT_TOL {
        OrbitClass { tag: OrbitTag::FixedPointP, margin: ORBIT_TOL - to_p }
    } else if off_sphere <= ORBIT_TOL {
        OrbitClass {
            tag: OrbitTag::PureSphere,
            margin: (ORBIT_TOL - off_sphere).min(to_p - ORBIT_TOL),
        }
    } else {
        OrbitClass { tag: OrbitTag::Bulk, margin: 1.0 - ORBIT_TOL - x.radius() }
    }
}

/// `g σ g†` with `g` the one-parameter subgroup of `Y_k` at time `t`.
pub fn unnormalized_flow(k: usize, t: f64, x0: &BlochVector) -> Result<ComplexMatrix> {
    let g = Sb2cGenerator::new(k)?.flow_element(t)?;
    Ok(&(&g * &density_from_bloch(x0)) * &g.dagger())
}

/// Normalized image of `x0` under the flow of `Y_k` for time `t`.
pub fn sb2c_flow_on_state(k: usize, t: f64, x0: &BlochVector) -> Result<BlochVector> {
    let m = unnormalized_flow(k, t, x0)?;
    let tr = m.trace().re;
    if !(tr > 0.0) || !tr.is_finite() {
        return Err(Error::Degenerate(format!("flowed state has trace {tr}")));
    }
    let rho = m.scale_real(1.0 / tr).hermitian_part();
    let comp = |p: ComplexMatrix| rho.trace_product(&p).map(|z| z.re);
    let v = [
        comp(ComplexMatrix::pauli_x())?,
        comp(ComplexMatrix::pauli_y())?,
        comp(ComplexMatrix::pauli_z())?,
    ];
    // clamp rounding excess outside the ball
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let s = if r > 1.0 && r <= 1.0 + BALL_TOL { 1.0 / r } else { 1.0 };
    BlochVector::new(v[0] * s, v[1] * s, v[2] * s)
}

/// `d(r²)/dt = 2x·Y_k` for `k = 1, 2, 3`.
pub fn radial_rates(x: &BlochVector) -> [f64; 3] {
    let xs = x.to_array();
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let y = y_field(k + 1, x).expect("valid index");
        *o = 2.0 * (0..3).map(|i| xs[i] * y[i]).sum::<f64>();
    }
    out
}

/// `d/dt det(gσg†)` at `t = 0` for each generator, via `Tr(adj(σ)·(τσ + στ†))`.
pub fn determinant_rates(x: &BlochVector) -> Result<[f64; 3]> {
    let sigma = density_from_bloch(x);
    let adj = ComplexMatrix::from_rows(&[
        vec![sigma[(1, 1)], -sigma[(0, 1)]],
        vec![-sigma[(1, 0)], sigma[(0, 0)]],
    ])?;
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let gen = Sb2cGenerator::new(k + 1)?;
        let speed = if k == 2 { 0.5 } else { 1.0 };
        let tau = gen.matrix().scale_real(speed);
        let dm = &(&tau * &sigma) + &(&sigma * &tau.dagger());
        *o = adj.trace_product(&dm)?.re;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangencyReport {
    /// `d(r²)/dt` along `Y₁`, `Y₂`, `Y₃`.
    pub radial: [f64; 3],
    /// `d/dt det(gσg†)` along the three one-parameter subgroups.
    pub determinant: [f64; 3],
}

/// Radial and determinant rates at a bulk point, where spheres `r = const` are the unitary orbits.
pub fn tangency_to_unitary_orbit(x: &BlochVector) -> Result<TangencyReport> {
    let class = classify_orbit(x);
    if class.tag != OrbitTag::Bulk {
        return Err(Error::Domain(format!(
            "tangency report needs a bulk point, got {}",
            class.tag.as_str()
        )));
    }
    Ok(TangencyReport { radial: radial_rates(x), determinant: determinant_rates(x)? })
}
