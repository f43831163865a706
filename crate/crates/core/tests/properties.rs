use isospec_core::bloch::{bloch_from_density, density_from_bloch, wedge_closed_form, wedge_determinant, BlochVector};
use isospec_core::heisenberg::{
    cartan_one_form_heisenberg, cartan_two_form_heisenberg, el_residual_heisenberg,
    evolve_heisenberg_exact, heisenberg_rhs, lagrangian_heisenberg_raw, OperatorTangent,
};
use isospec_core::operator::{
    commutator, hermitian_eigendecomposition, hermitian_sqrt, propagator, spectrum,
    unitary_algebra_basis, ComplexMatrix,
};
use isospec_core::random;
use isospec_core::sb2c::{sb2c_inv, sb2c_mul, Sb2cElement};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn element() -> impl Strategy<Value = Sb2cElement> {
    (0.05f64..5.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(r, x, y)| Sb2cElement::new(r, x, y).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn propagator_is_unitary(seed in any::<u64>(), n in 1usize..=4, t in -20.0f64..20.0) {
        let h = random::hermitian(&mut rng(seed), n);
        let u = propagator(&h, t).unwrap();
        prop_assert!((&u.dagger() * &u).distance(&ComplexMatrix::identity(n)).unwrap() <= 1e-10);
    }

    #[test]
    fn sqrt_reconstructs(seed in any::<u64>(), n in 1usize..=6) {
        let m = random::positive_semidefinite(&mut rng(seed), n);
        let s = hermitian_sqrt(&m).unwrap();
        prop_assert!((&s * &s).distance(&m).unwrap() <= 1e-9);
    }

    #[test]
    fn eigendecomposition_reconstructs(seed in any::<u64>(), n in 1usize..=6) {
        let m = random::hermitian(&mut rng(seed), n);
        let (spec, v) = hermitian_eigendecomposition(&m).unwrap();
        let d = ComplexMatrix::real_diagonal(spec.eigenvalues());
        prop_assert!((&(&v * &d) * &v.dagger()).distance(&m).unwrap() <= 1e-9);
        if n == 2 {
            // roots of λ² − Tr(m)λ + det(m)
            let tr = m.trace().re;
            let det = m.determinant().re;
            let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
            let ev = spec.eigenvalues();
            prop_assert!((ev[0] - (tr - disc) / 2.0).abs() <= 1e-9);
            prop_assert!((ev[1] - (tr + disc) / 2.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn commutator_is_traceless(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = rng(seed);
        let a = random::complex_matrix(&mut r, n);
        let b = random::complex_matrix(&mut r, n);
        prop_assert!(commutator(&a, &b).unwrap().trace().norm() <= 1e-12);
    }

    #[test]
    fn heisenberg_flow_invariants(seed in any::<u64>(), n in 2usize..=4, s in 0.0f64..5.0, t in 0.0f64..5.0) {
        let mut r = rng(seed);
        let h = random::hermitian(&mut r, n);
        let a0 = random::hermitian(&mut r, n);
        let at = evolve_heisenberg_exact(&a0, &h, t).unwrap();
        prop_assert!(spectrum(&at.hermitian_part()).unwrap().max_deviation(&spectrum(&a0).unwrap()) <= 1e-10);
        prop_assert!((at.trace() - a0.trace()).norm() <= 1e-10);
        prop_assert!((at.frobenius_norm() - a0.frobenius_norm()).abs() <= 1e-10);
        let composed = evolve_heisenberg_exact(&evolve_heisenberg_exact(&a0, &h, s).unwrap(), &h, t).unwrap();
        prop_assert!(composed.distance(&evolve_heisenberg_exact(&a0, &h, s + t).unwrap()).unwrap() <= 1e-9);
    }

    #[test]
    fn cartan_forms_vanish_on_hermitian(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let a = random::hermitian(&mut r, n);
        let v1 = random::hermitian(&mut r, n);
        let v2 = random::hermitian(&mut r, n);
        prop_assert!(cartan_one_form_heisenberg(&a, &v1).unwrap().abs() <= 1e-12);
        prop_assert!(cartan_two_form_heisenberg(&v1, &v2).unwrap().abs() <= 1e-12);
        let g1 = random::complex_matrix(&mut r, n);
        let g2 = random::complex_matrix(&mut r, n);
        prop_assert_eq!(
            cartan_two_form_heisenberg(&g1, &g2).unwrap(),
            -cartan_two_form_heisenberg(&g2, &g1).unwrap()
        );
    }

    #[test]
    fn el_residual_vanishes_only_on_heisenberg_velocity(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let h = random::hermitian(&mut r, n);
        let a = random::hermitian(&mut r, n);
        let good = OperatorTangent::new(a.clone(), heisenberg_rhs(&a, &h).unwrap()).unwrap();
        prop_assert!(el_residual_heisenberg(&good, &h).unwrap() <= 1e-12);
        let off = heisenberg_rhs(&a, &h).unwrap().add_scaled(Complex64::new(1e-3, 0.0), &random::complex_matrix(&mut r, n));
        let bad = OperatorTangent::new(a, off).unwrap();
        prop_assert!(el_residual_heisenberg(&bad, &h).unwrap() > 1e-12);
    }

    #[test]
    fn lagrangian_is_real(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let h = random::hermitian(&mut r, n);
        let t = OperatorTangent::new(random::complex_matrix(&mut r, n), random::complex_matrix(&mut r, n)).unwrap();
        prop_assert!(lagrangian_heisenberg_raw(&t, &h).unwrap().im.abs() <= 1e-12);
    }

    #[test]
    fn sb2c_group_laws(a in element(), b in element(), c in element()) {
        let ab = sb2c_mul(&a, &b);
        let oracle = &a.to_matrix() * &b.to_matrix();
        prop_assert!(ab.to_matrix().distance(&oracle).unwrap() <= 1e-12 * (1.0 + oracle.frobenius_norm()));
        prop_assert!(ab.r > 0.0);
        let left = sb2c_mul(&ab, &c).to_matrix();
        let right = sb2c_mul(&a, &sb2c_mul(&b, &c)).to_matrix();
        prop_assert!(left.distance(&right).unwrap() <= 1e-10 * (1.0 + left.frobenius_norm()));
        let id = sb2c_mul(&a, &sb2c_inv(&a)).to_matrix();
        prop_assert!(id.distance(&ComplexMatrix::identity(2)).unwrap() <= 1e-12 * (1.0 + a.to_matrix().frobenius_norm().powi(2)));
    }

    #[test]
    fn bloch_round_trip_and_wedge(seed in any::<u64>()) {
        let x = BlochVector::from_array(random::ball_point(&mut rng(seed))).unwrap();
        let back = bloch_from_density(&density_from_bloch(&x)).unwrap();
        prop_assert!(back.to_array().iter().zip(x.to_array()).all(|(a, b)| (a - b).abs() <= 1e-12));
        prop_assert!((wedge_determinant(&x) - wedge_closed_form(&x)).abs() <= 1e-9);
    }
}

#[test]
fn unitary_basis_is_orthonormal() {
    for n in 1..=5 {
        let basis = unitary_algebra_basis(n).unwrap();
        assert_eq!(basis.len(), n * n);
        for (i, a) in basis.iter().enumerate() {
            assert!(a.anti_hermiticity_defect() == 0.0);
            for (j, b) in basis.iter().enumerate() {
                let g = a.hs_inner(b).unwrap();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((g - Complex64::new(expected, 0.0)).norm() <= 1e-12);
            }
        }
    }
}
