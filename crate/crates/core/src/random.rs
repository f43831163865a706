//! Seeded samplers for the randomized property checks.

use num_complex::Complex64;
use rand::Rng;

use crate::operator::{matrix_exponential, ComplexMatrix, I};

pub fn complex_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let data = (0..n * n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::from_vec(n, data).expect("finite entries")
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    complex_matrix(rng, n).hermitian_part()
}

pub fn anti_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    complex_matrix(rng, n).anti_hermitian_part()
}

pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let h = hermitian(rng, n).scale_real(3.0);
    matrix_exponential(&h.scale(I)).expect("finite generator")
}

/// `G G†` for a random `G`.
pub fn positive_semidefinite<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = complex_matrix(rng, n);
    (&g * &g.dagger()).hermitian_part()
}

/// Full-rank density matrix.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let p = positive_semidefinite(rng, n);
    let tr = p.trace().re;
    p.scale_real(1.0 / tr)
}

/// Uniform point in the closed unit ball by rejection from the cube.
pub fn ball_point<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let p = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        if p.iter().map(|v| v * v).sum::<f64>() <= 1.0 {
            return p;
        }
    }
}

pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let p = ball_point(rng);
        let r = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r > 1e-3 {
            return [p[0] / r, p[1] / r, p[2] / r];
        }
    }
}
