//! Finite-difference Euler-Lagrange residuals `d/dt ∂L/∂q̇ − ∂L/∂q` for Lagrangians
//! given in flat real coordinates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::heisenberg::{lagrangian_heisenberg, OperatorTangent};
use crate::operator::{matrix_exponential, unitary_algebra_basis, ComplexMatrix};
use crate::sb2c::{lagrangian_sb2c, Sb2cElement, Sb2cSetup, Sb2cVelocity};
use crate::unitary_orbit::{lagrangian_unitary, UnitaryTangent};

/// Default step for the partial derivatives of `L`.
pub const DEFAULT_GRADIENT_STEP: f64 = 1e-5;
/// Relative tolerance on the uniformity of a sampled grid.
pub const GRID_UNIFORMITY_TOL: f64 = 1e-12;
pub const MIN_PATH_LEN: usize = 5;

/// A Lagrangian `L(q, q̇)` on an open subset of `ℝⁿ`.
pub trait CoordinateLagrangian {
    fn dim(&self) -> usize;
    fn eval(&self, q: &[f64], qdot: &[f64]) -> Result<f64>;
}

/// Adapter turning a closure into a [`CoordinateLagrangian`].
pub struct FnLagrangian<F> {
    dim: usize,
    f: F,
}

impl<F> FnLagrangian<F>
where
    F: Fn(&[f64], &[f64]) -> f64,
{
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F> CoordinateLagrangian for FnLagrangian<F>
where
    F: Fn(&[f64], &[f64]) -> f64,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, q: &[f64], qdot: &[f64]) -> Result<f64> {
        Ok((self.f)(q, qdot))
    }
}

impl<L: CoordinateLagrangian + ?Sized> CoordinateLagrangian for &L {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn eval(&self, q: &[f64], qdot: &[f64]) -> Result<f64> {
        (**self).eval(q, qdot)
    }
}

/// Samples of a path on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    times: Vec<f64>,
    points: Vec<Vec<f64>>,
}

impl SampledPath {
    pub fn new(times: Vec<f64>, points: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != points.len() {
            return Err(Error::DimensionMismatch { left: times.len(), right: points.len() });
        }
        if times.len() < MIN_PATH_LEN {
            return Err(Error::InvalidInput(format!(
                "path needs at least {MIN_PATH_LEN} samples, got {}",
                times.len()
            )));
        }
        let dim = points[0].len();
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: p.len() });
        }
        let dt = times[1] - times[0];
        if !(dt > 0.0) {
            return Err(Error::InvalidInput("times must be strictly increasing".into()));
        }
        let scale = times.iter().fold(dt, |m, t| m.max(t.abs()));
        for w in times.windows(2) {
            if ((w[1] - w[0]) - dt).abs() > GRID_UNIFORMITY_TOL * scale.max(1.0) + 4.0 * f64::EPSILON * scale {
                return Err(Error::InvalidInput("time grid is not uniform".into()));
            }
        }
        Ok(Self { times, points })
    }

    /// Samples `f` at `t0 + i·dt` for `i = 0..n`.
    pub fn from_fn(t0: f64, dt: f64, n: usize, mut f: impl FnMut(f64) -> Vec<f64>) -> Result<Self> {
        let times: Vec<f64> = (0..n).map(|i| t0 + i as f64 * dt).collect();
        let points = times.iter().map(|&t| f(t)).collect();
        Self::new(times, points)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn spacing(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    fn velocity(&self, i: usize) -> Vec<f64> {
        let dt = self.spacing();
        self.points[i + 1]
            .iter()
            .zip(&self.points[i - 1])
            .map(|(a, b)| (a - b) / (2.0 * dt))
            .collect()
    }
}

fn checked(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation(format!("Lagrangian evaluated to {v}")))
    }
}

fn centered_gradient(
    x: &[f64],
    h: f64,
    mut f: impl FnMut(&[f64]) -> Result<f64>,
) -> Result<Vec<f64>> {
    if !(h > 0.0) {
        return Err(Error::Config(format!("finite-difference step must be positive, got {h}")));
    }
    let mut probe = x.to_vec();
    let mut out = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        probe[i] = x[i] + h;
        let fp = checked(f(&probe)?)?;
        probe[i] = x[i] - h;
        let fm = checked(f(&probe)?)?;
        probe[i] = x[i];
        out.push((fp - fm) / (2.0 * h));
    }
    Ok(out)
}

fn check_dim<L: CoordinateLagrangian + ?Sized>(l: &L, q: &[f64], qdot: &[f64]) -> Result<()> {
    if q.len() != l.dim() {
        return Err(Error::DimensionMismatch { left: l.dim(), right: q.len() });
    }
    if qdot.len() != l.dim() {
        return Err(Error::DimensionMismatch { left: l.dim(), right: qdot.len() });
    }
    Ok(())
}

/// `∂L/∂q` by centered differences.
pub fn grad_q<L: CoordinateLagrangian + ?Sized>(l: &L, q: &[f64], qdot: &[f64], h: f64) -> Result<Vec<f64>> {
    check_dim(l, q, qdot)?;
    centered_gradient(q, h, |p| l.eval(p, qdot))
}

/// `∂L/∂q̇` by centered differences.
pub fn grad_qdot<L: CoordinateLagrangian + ?Sized>(l: &L, q: &[f64], qdot: &[f64], h: f64) -> Result<Vec<f64>> {
    check_dim(l, q, qdot)?;
    centered_gradient(qdot, h, |v| l.eval(q, v))
}

/// Residual at one interior sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleResidual {
    pub index: usize,
    pub time: f64,
    pub residual: Vec<f64>,
}

impl SampleResidual {
    pub fn norm(&self) -> f64 {
        self.residual.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// `d/dt ∂L/∂q̇ − ∂L/∂q` at samples `2..len−2`, all derivatives by centered differences.
pub fn el_residual_path<L: CoordinateLagrangian + ?Sized>(
    l: &L,
    path: &SampledPath,
    h: f64,
) -> Result<Vec<SampleResidual>> {
    let n = path.len();
    if n < MIN_PATH_LEN {
        return Err(Error::InvalidInput("path too short".into()));
    }
    if path.dim() != l.dim() {
        return Err(Error::DimensionMismatch { left: l.dim(), right: path.dim() });
    }
    let dt = path.spacing();
    let momenta: Vec<Vec<f64>> = (1..n - 1)
        .map(|i| grad_qdot(l, &path.points[i], &path.velocity(i), h))
        .collect::<Result<_>>()?;
    (2..n - 2)
        .map(|i| {
            let force = grad_q(l, &path.points[i], &path.velocity(i), h)?;
            let (next, prev) = (&momenta[i], &momenta[i - 2]);
            let residual = next
                .iter()
                .zip(prev)
                .zip(&force)
                .map(|((pn, pp), f)| (pn - pp) / (2.0 * dt) - f)
                .collect();
            Ok(SampleResidual { index: i, time: path.times[i], residual })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub pass: bool,
    pub tolerance: f64,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub worst_index: usize,
    pub worst_time: f64,
    pub samples: usize,
}

pub fn verify_trajectory<L: CoordinateLagrangian + ?Sized>(
    l: &L,
    path: &SampledPath,
    tolerance: f64,
) -> Result<VerificationReport> {
    verify_trajectory_with_step(l, path, tolerance, DEFAULT_GRADIENT_STEP)
}

pub fn verify_trajectory_with_step<L: CoordinateLagrangian + ?Sized>(
    l: &L,
    path: &SampledPath,
    tolerance: f64,
    h: f64,
) -> Result<VerificationReport> {
    let res = el_residual_path(l, path, h)?;
    let mut worst = (0.0, res[0].index, res[0].time);
    let mut total = 0.0;
    for r in &res {
        let norm = r.norm();
        total += norm;
        if norm > worst.0 {
            worst = (norm, r.index, r.time);
        }
    }
    Ok(VerificationReport {
        pass: worst.0 <= tolerance,
        tolerance,
        max_residual: worst.0,
        mean_residual: total / res.len() as f64,
        worst_index: worst.1,
        worst_time: worst.2,
        samples: res.len(),
    })
}

/// Real coordinates of a complex matrix: real parts row-major, then imaginary parts.
pub fn flatten_complex(m: &ComplexMatrix) -> Vec<f64> {
    let s = m.as_slice();
    s.iter().map(|z| z.re).chain(s.iter().map(|z| z.im)).collect()
}

pub fn unflatten_complex(dim: usize, q: &[f64]) -> Result<ComplexMatrix> {
    let n2 = dim * dim;
    if q.len() != 2 * n2 {
        return Err(Error::DimensionMismatch { left: 2 * n2, right: q.len() });
    }
    ComplexMatrix::from_vec(dim, (0..n2).map(|i| Complex64::new(q[i], q[n2 + i])).collect())
}

/// The operator-space Lagrangian on real and imaginary parts of the matrix entries.
pub struct HeisenbergChart {
    hamiltonian: ComplexMatrix,
}

impl HeisenbergChart {
    pub fn new(hamiltonian: ComplexMatrix) -> Self {
        Self { hamiltonian }
    }
}

impl CoordinateLagrangian for HeisenbergChart {
    fn dim(&self) -> usize {
        2 * self.hamiltonian.dim() * self.hamiltonian.dim()
    }

    fn eval(&self, q: &[f64], qdot: &[f64]) -> Result<f64> {
        let n = self.hamiltonian.dim();
        let tangent = OperatorTangent::new(unflatten_complex(n, q)?, unflatten_complex(n, qdot)?)?;
        lagrangian_heisenberg(&tangent, &self.hamiltonian)
    }
}

/// Exponential coordinates `u = u_c exp(Σ q_j τ_j)` around a center `u_c`.
pub struct UnitaryExpChart {
    center: ComplexMatrix,
    sigma: ComplexMatrix,
    hamiltonian: ComplexMatrix,
    basis: Vec<ComplexMatrix>,
}

impl UnitaryExpChart {
    pub fn new(center: ComplexMatrix, sigma: ComplexMatrix, hamiltonian: ComplexMatrix) -> Result<Self> {
        let basis = unitary_algebra_basis(center.dim())?;
        Ok(Self { center, sigma, hamiltonian, basis })
    }

    fn combine(&self, q: &[f64]) -> ComplexMatrix {
        let n = self.center.dim();
        self.basis
            .iter()
            .zip(q)
            .fold(ComplexMatrix::zeros(n), |acc, (t, c)| acc.add_scaled(Complex64::new(*c, 0.0), t))
    }

    /// Chart coordinates of an anti-Hermitian generator: `q_j = Re Tr(τ_j† X)`.
    pub fn coordinates_of(&self, x: &ComplexMatrix) -> Result<Vec<f64>> {
        self.basis.iter().map(|t| Ok(t.hs_inner(x)?.re)).collect()
    }

    /// `(u, u̇)` at chart point `q` with chart velocity `q̇`.
    pub fn tangent(&self, q: &[f64], qdot: &[f64]) -> Result<UnitaryTangent> {
        let n = self.center.dim();
        let x = self.combine(q);
        let xd = self.combine(qdot);
        // exp([[X, Ẋ], [0, X]]) carries d/dε exp(X + εẊ) in its upper-right block
        let mut block = ComplexMatrix::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                block[(i, j)] = x[(i, j)];
                block[(n + i, n + j)] = x[(i, j)];
                block[(i, n + j)] = xd[(i, j)];
            }
        }
        let e = matrix_exponential(&block)?;
        let mut ex = ComplexMatrix::zeros(n);
        let mut dex = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                ex[(i, j)] = e[(i, j)];
                dex[(i, j)] = e[(i, n + j)];
            }
        }
        UnitaryTangent::new(&self.center * &ex, &self.center * &dex)
    }
}

impl CoordinateLagrangian for UnitaryExpChart {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn eval(&self, q: &[f64], qdot: &[f64]) -> Result<f64> {
        lagrangian_unitary(&self.tangent(q, qdot)?, &self.sigma, &self.hamiltonian)
    }
}

/// The orbit Lagrangian in the coordinates `(r, x, y)`.
pub struct Sb2cChart {
    setup: Sb2cSetup,
}

impl Sb2cChart {
    pub fn new(setup: Sb2cSetup) -> Self {
        Self { setup }
    }
}

impl CoordinateLagrangian for Sb2cChart {
    fn dim(&self) -> usize {
        3
    }

    fn eval(&self, q: &[f64], qdot: &[f64]) -> Result<f64> {
        let g = Sb2cElement::new(q[0], q[1], q[2])?;
        lagrangian_sb2c(&g, &Sb2cVelocity::new(qdot[0], qdot[1], qdot[2]), &self.setup)
    }
}
