use dirac_sphere::operators::{
    complement_ta, conformal_dirac_spectral, project_ta, sobolev_base, sobolev_norm, spinorial_laplacian_spectral,
    tail_constant, SobolevSpec,
};
use dirac_sphere::specfun::{gegenbauer, gegenbauer_at_one};
use dirac_sphere::monogenics::monogenic_real_dimension;
use dirac_sphere::{BasisFamily, SpectralCoeffs};
use proptest::prelude::*;

fn harmonic_coeffs(n: usize) -> impl Strategy<Value = SpectralCoeffs> {
    prop::collection::vec((0usize..6, 0usize..8, -10.0f64..10.0), 1..20).prop_map(move |entries| {
        let mut c = SpectralCoeffs::new(n, BasisFamily::Harmonic);
        for (m, k, v) in entries {
            c.set(m, k, v);
        }
        c
    })
}

fn monogenic_coeffs(n: usize) -> impl Strategy<Value = SpectralCoeffs> {
    prop::collection::vec((0usize..4, 0usize..1000, -10.0f64..10.0), 1..20).prop_map(move |entries| {
        let mut c = SpectralCoeffs::new(n, BasisFamily::Monogenic);
        for (m, k, v) in entries {
            c.set(m, k % (2 * monogenic_real_dimension(n, m)), v);
        }
        c
    })
}

proptest! {
    #[test]
    fn projection_is_idempotent_and_contractive(c in harmonic_coeffs(2), a in 0usize..6, s in 0.0f64..3.0) {
        let t = project_ta(&c, a);
        prop_assert_eq!(project_ta(&t, a), t.clone());
        let spec = SobolevSpec::new(s, 2).unwrap();
        prop_assert!(sobolev_norm(&t, &spec).unwrap() <= sobolev_norm(&c, &spec).unwrap() + 1e-12);
    }

    #[test]
    fn projection_splits_the_norm(c in harmonic_coeffs(3), a in 0usize..6, s in 0.0f64..3.0) {
        let spec = SobolevSpec::new(s, 3).unwrap();
        let whole = sobolev_norm(&c, &spec).unwrap().powi(2);
        let parts = sobolev_norm(&project_ta(&c, a), &spec).unwrap().powi(2)
            + sobolev_norm(&complement_ta(&c, a), &spec).unwrap().powi(2);
        prop_assert!((whole - parts).abs() <= 1e-10 * whole.max(1.0));
    }

    #[test]
    fn sobolev_spaces_are_nested(c in harmonic_coeffs(2), t in 0.0f64..2.0, extra in 0.0f64..2.0) {
        // restrict to degrees with m + (n-1)/2 >= 1
        let c = c.filtered(|m, _| sobolev_base(2, m) >= 1.0);
        let s = t + extra;
        let lo = sobolev_norm(&c, &SobolevSpec::new(t, 2).unwrap()).unwrap();
        let hi = sobolev_norm(&c, &SobolevSpec::new(s, 2).unwrap()).unwrap();
        prop_assert!(lo <= hi * (1.0 + 1e-12));
    }

    #[test]
    fn tail_estimate_holds(c in harmonic_coeffs(2), a in 0usize..5, t in 0.0f64..1.5, extra in 0.0f64..2.0) {
        let s = t + extra;
        let tail = complement_ta(&c, a);
        let lhs = sobolev_norm(&tail, &SobolevSpec::new(t, 2).unwrap()).unwrap();
        let rhs = tail_constant(2, a, s, t) * sobolev_norm(&tail, &SobolevSpec::new(s, 2).unwrap()).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-9) + 1e-300);
    }

    #[test]
    fn dirac_squared_is_spinorial_laplacian(c in monogenic_coeffs(2)) {
        let twice = conformal_dirac_spectral(&conformal_dirac_spectral(&c).unwrap()).unwrap();
        let lap = spinorial_laplacian_spectral(&c, 1).unwrap();
        prop_assert!(twice.max_abs_diff(&lap) <= 1e-12 * lap.l2_norm().max(1.0));
    }

    #[test]
    fn gegenbauer_is_bounded_by_its_value_at_one(m in 0usize..12, lambda in 0.05f64..3.0, t in -1.0f64..1.0) {
        prop_assert!(gegenbauer(m, lambda, t).unwrap().abs() <= gegenbauer_at_one(m, lambda) * (1.0 + 1e-12));
    }
}
