//! The two qubit dynamics obtained by normalizing `gσg†` and `√σ g†g √σ`.

use crate::error::{check_dims, Error, Result};
use crate::heisenberg::require_hermitian;
use crate::operator::{hermitian_sqrt, spectrum, ComplexMatrix, HERMITIAN_TOL};

use super::group::Sb2cElement;

fn require_psd(sigma: &ComplexMatrix) -> Result<()> {
    check_dims(sigma.dim(), 2)?;
    require_hermitian(sigma, "state")?;
    let lowest = spectrum(sigma)?.eigenvalues()[0];
    if lowest < -HERMITIAN_TOL {
        return Err(Error::InvalidInput(format!(
            "state is not positive semidefinite (eigenvalue {lowest:e})"
        )));
    }
    Ok(())
}

fn normalize(m: ComplexMatrix) -> Result<ComplexMatrix> {
    let tr = m.trace().re;
    if !(tr > 0.0) {
        return Err(Error::Degenerate(format!("trace {tr:e} cannot be normalized")));
    }
    Ok(m.scale_real(1.0 / tr).hermitian_part())
}

/// `gσg†`, whose determinant equals `det σ`.
pub fn congruence(g: &Sb2cElement, sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dims(sigma.dim(), 2)?;
    let gm = g.to_matrix();
    Ok(&(&gm * sigma) * &gm.dagger())
}

/// `gσg† / Tr(gσg†)`
pub fn rho1_projection(g: &Sb2cElement, sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_psd(sigma)?;
    normalize(congruence(g, sigma)?)
}

/// `√σ g†g √σ / Tr(σ g†g)`
pub fn rho2_projection(g: &Sb2cElement, sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_psd(sigma)?;
    let root = hermitian_sqrt(sigma)?;
    let gm = g.to_matrix();
    let gg = &gm.dagger() * &gm;
    normalize(&(&root * &gg) * &root)
}

/// Number of eigenvalues above `tol`.
pub fn numerical_rank(m: &ComplexMatrix, tol: f64) -> Result<usize> {
    Ok(spectrum(m)?.eigenvalues().iter().filter(|&&e| e > tol).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_g(rng: &mut ChaCha8Rng) -> Sb2cElement {
        Sb2cElement::new(
            rng.random_range(0.2..3.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        )
        .unwrap()
    }

    #[test]
    fn identity_keeps_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sigma = random::density_matrix(&mut rng, 2);
        let id = Sb2cElement::identity();
        assert!(rho1_projection(&id, &sigma).unwrap().distance(&sigma).unwrap() < 1e-14);
        assert!(rho2_projection(&id, &sigma).unwrap().distance(&sigma).unwrap() < 1e-12);
    }

    #[test]
    fn determinant_of_congruence() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let g = random_g(&mut rng);
            let sigma = random::density_matrix(&mut rng, 2);
            let d = congruence(&g, &sigma).unwrap().determinant();
            assert!((d - sigma.determinant()).norm() < 1e-9);
        }
    }

    #[test]
    fn pure_stays_pure() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let psi = [Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)), Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))];
            let n = (psi[0].norm_sqr() + psi[1].norm_sqr()).sqrt();
            let mut sigma = ComplexMatrix::zeros(2);
            for i in 0..2 {
                for j in 0..2 {
                    sigma[(i, j)] = psi[i] * psi[j].conj() / (n * n);
                }
            }
            let rho = rho1_projection(&random_g(&mut rng), &sigma).unwrap();
            assert_eq!(numerical_rank(&rho, 1e-10).unwrap(), 1);
            assert!((rho.trace().re - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rho2_is_a_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let rho = rho2_projection(&random_g(&mut rng), &random::density_matrix(&mut rng, 2)).unwrap();
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            assert!(spectrum(&rho).unwrap().eigenvalues()[0] > -1e-12);
        }
    }

    #[test]
    fn degenerate_and_invalid_inputs() {
        let g = Sb2cElement::identity();
        assert!(matches!(rho1_projection(&g, &ComplexMatrix::zeros(2)), Err(Error::Degenerate(_))));
        assert!(matches!(rho2_projection(&g, &ComplexMatrix::zeros(2)), Err(Error::Degenerate(_))));
        assert!(rho1_projection(&g, &ComplexMatrix::real_diagonal(&[1.0, -0.5])).is_err());
    }
}
