use approx::assert_relative_eq;
use mwlp::weights::{
    dilate_weight, evaluate_weight, hermitian_power, spectral_norm, weight_root_at, weight_root_by_eigen,
    HermitianMatrix, RotationProfile, WeightSpec,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn max_diff(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    (a.as_matrix() - b.as_matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn conjugated_weight_has_the_prescribed_spectrum() {
    let spec = WeightSpec::conjugated(
        1,
        RotationProfile {
            plane: [0, 2],
            rate: 0.7,
        },
        vec![-0.5, 0.0, 0.5],
    );
    let x = [1.7];
    let w = evaluate_weight(&spec, &x).unwrap();
    let mut ev = w.eigenvalues();
    ev.sort_by(f64::total_cmp);
    for (got, alpha) in ev.iter().zip([-0.5, 0.0, 0.5]) {
        assert_relative_eq!(*got, 1.7f64.powf(alpha), max_relative = 1e-12);
    }
}

#[test]
fn spectral_norm_of_a_diagonal() {
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        Complex64::new(-3.0, 0.0),
        Complex64::new(0.0, 2.0),
    ]));
    assert_relative_eq!(spectral_norm(&d).unwrap(), 3.0, max_relative = 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn powers_compose(seed in 0u64..1000, x in 0.05f64..5.0, a in -1.5f64..1.5, b in -1.5f64..1.5) {
        let spec = WeightSpec::random_conjugated(1, 3, seed);
        let w = evaluate_weight(&spec, &[x]).unwrap();
        let wa = hermitian_power(&w, a).unwrap();
        let wb = hermitian_power(&w, b).unwrap();
        let wab = hermitian_power(&w, a + b).unwrap();
        let prod = HermitianMatrix::symmetrized(wa.as_matrix() * wb.as_matrix());
        let scale = wab.eigenvalues().into_iter().fold(1.0, f64::max);
        prop_assert!(max_diff(&prod, &wab) <= 1e-10 * scale);
    }

    #[test]
    fn closed_form_roots_match_eigendecomposition(seed in 0u64..1000, x in -4.0f64..4.0, sigma in -2.0f64..2.0) {
        prop_assume!(x.abs() > 1e-3);
        let spec = WeightSpec::random_conjugated(1, 2, seed);
        let a = weight_root_at(&spec, &[x], sigma).unwrap();
        let b = weight_root_by_eigen(&spec, &[x], sigma).unwrap();
        let scale = b.eigenvalues().into_iter().fold(1.0, f64::max);
        prop_assert!(max_diff(&a, &b) <= 1e-10 * scale);
    }

    #[test]
    fn dilation_is_composition(alpha in -0.9f64..0.9, r in 0.1f64..10.0, x in 0.01f64..3.0, y in 0.01f64..3.0) {
        let spec = WeightSpec::conjugated(2, RotationProfile::default(), vec![alpha, -alpha / 2.0]);
        let d = dilate_weight(&spec, r).unwrap();
        let lhs = evaluate_weight(&d, &[x, y]).unwrap();
        let rhs = evaluate_weight(&spec, &[r * x, r * y]).unwrap();
        let scale = rhs.eigenvalues().into_iter().fold(1.0, f64::max);
        prop_assert!(max_diff(&lhs, &rhs) <= 1e-12 * scale);
    }
}
