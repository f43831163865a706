use num_complex::Complex64;

use super::matrix::{ComplexMatrix, I};
use crate::error::{Error, Result};

/// Hilbert-Schmidt orthonormal basis of the anti-Hermitian `n×n` matrices.
///
/// Ordering: `iI/√n`, then for each pair `j < k` the symmetric and antisymmetric
/// off-diagonal generators, then the traceless diagonal ones. For `n = 2` this is
/// `{iI, iσx, iσy, iσz}/√2`.
pub fn unitary_algebra_basis(n: usize) -> Result<Vec<ComplexMatrix>> {
    if n == 0 {
        return Err(Error::InvalidInput("basis dimension must be positive".into()));
    }
    let mut basis = Vec::with_capacity(n * n);
    basis.push(ComplexMatrix::identity(n).scale(I / (n as f64).sqrt()));

    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..n {
        for k in j + 1..n {
            let mut sym = ComplexMatrix::zeros(n);
            sym[(j, k)] = I * inv_sqrt2;
            sym[(k, j)] = I * inv_sqrt2;
            basis.push(sym);

            // i·(−iE_jk + iE_kj)/√2
            let mut anti = ComplexMatrix::zeros(n);
            anti[(j, k)] = Complex64::new(inv_sqrt2, 0.0);
            anti[(k, j)] = Complex64::new(-inv_sqrt2, 0.0);
            basis.push(anti);
        }
    }
    for l in 1..n {
        let norm = ((l * (l + 1)) as f64).sqrt();
        let mut diag = vec![Complex64::new(0.0, 0.0); n];
        for d in diag.iter_mut().take(l) {
            *d = I / norm;
        }
        diag[l] = I * (-(l as f64) / norm);
        basis.push(ComplexMatrix::diagonal(&diag));
    }
    Ok(basis)
}
