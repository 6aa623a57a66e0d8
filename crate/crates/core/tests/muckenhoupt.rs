use approx::assert_relative_eq;
use mwlp::muckenhoupt::{ap_constant, default_directions, doubling_report, Cube, CubeFamily};
use mwlp::weights::WeightSpec;
use proptest::prelude::*;

fn family() -> CubeFamily {
    CubeFamily::new(1, -3, 2, 4.0, 16).unwrap().with_window(Some(2.0))
}

#[test]
fn midpoint_nodes_are_centred() {
    let c = Cube::new(vec![0.5, -1.0], 0.25);
    let nodes = c.nodes(4);
    assert_eq!(nodes.len(), 16);
    for a in 0..2 {
        let mean = nodes.iter().map(|x| x[a]).sum::<f64>() / 16.0;
        assert_relative_eq!(mean, c.center[a], epsilon = 1e-15);
    }
    assert_eq!(c.doubled().side, 0.5);
}

#[test]
fn quadrature_approaches_the_a1_constant_from_below() {
    // On [-r, r] the average of |x|^{-1/2} is 2 r^{-1/2} and its infimum r^{-1/2}.
    let w = WeightSpec::scalar_power(1, 1, -0.5);
    let fam = CubeFamily::new(1, -2, 1, 0.0, 64).unwrap();
    let mut prev = 0.0;
    for q in [64, 256, 1024] {
        let v = ap_constant(&w, 1.0, &fam.clone().with_q(q)).unwrap().value;
        assert!(v > prev && v < 2.0, "{v}");
        prev = v;
    }
    assert!((prev - 2.0).abs() < 0.03, "{prev}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ap_is_at_least_one(seed in 0u64..500, p in 0.3f64..3.0) {
        let w = WeightSpec::random_conjugated(1, 2, seed);
        let v = ap_constant(&w, p, &family()).unwrap().value;
        prop_assert!(v >= 1.0 - 1e-9, "{}", v);
    }

    #[test]
    fn equal_diagonal_matches_scalar_power(alpha in -0.8f64..0.0, p in 0.3f64..1.0) {
        let base = ap_constant(&WeightSpec::scalar_power(1, 2, alpha), p, &family()).unwrap().value;
        let v = ap_constant(&WeightSpec::diagonal_power(1, vec![alpha, alpha]), p, &family()).unwrap().value;
        prop_assert!((v - base).abs() <= 1e-12 * base);
    }

    #[test]
    fn nested_doubling_exponent_of_a_power(alpha in -0.9f64..0.0) {
        // w([-2r, 2r]) / w([-r, r]) = 2^{1 + alpha}.
        let w = WeightSpec::scalar_power(1, 1, alpha);
        let fam = CubeFamily::new(1, -3, 1, 0.0, 64).unwrap();
        let rep = doubling_report(&w, 1.0, &fam, &default_directions(1, 0)).unwrap();
        prop_assert!((rep.beta - (1.0 + alpha)).abs() < 1e-9, "{} vs {}", rep.beta, 1.0 + alpha);
    }
}
