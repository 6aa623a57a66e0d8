use mwlp::besov::*;
use mwlp::spectral::*;
use mwlp::weights::WeightSpec;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid() -> TorusGrid {
    TorusGrid::new(1, 256, 2048).unwrap()
}

fn standard() -> DyadicPartition {
    make_partition(0.5, 2.0, (-3, 3), BumpProfile::SmoothExp { shape: 1.0 }).unwrap()
}

fn variant() -> DyadicPartition {
    make_partition(0.5f64.sqrt(), 8f64.sqrt(), (-3, 3), BumpProfile::Polynomial { order: 6 }).unwrap()
}

fn params(s: f64, p: f64, q: f64, weight: WeightSpec) -> BesovParams {
    BesovParams { s, p, q, weight }
}

fn shell(g: &TorusGrid, inner: f64, outer: f64, dim: usize, seed: u64) -> SampledVectorField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    synthesize_shell(g, inner, outer, dim, SpectralProfile::Flat, &mut rng).unwrap()
}

#[test]
fn zero_field_has_zero_norm() {
    let g = grid();
    let z = SampledVectorField::zeros(g.clone(), 2);
    let pr = params(0.5, 1.0, 1.0, WeightSpec::random_conjugated(1, 2, 3));
    let b = besov_norm(&z, &pr, &standard()).unwrap();
    assert_eq!(b.value, 0.0);
    assert!(b.truncation.is_none());
}

#[test]
fn unit_symbol_piece_reduces_to_the_lp_norm() {
    // psi_0 is identically one on [0.9, 1.2) for supports [0.6, 1.8).
    let part = make_partition(0.6, 1.8, (-3, 3), BumpProfile::SmoothExp { shape: 1.0 }).unwrap();
    let g = grid();
    let f = shell(&g, 0.92, 1.18, 2, 1);
    let w = WeightSpec::random_conjugated(1, 2, 5);
    for s in [-1.0, 0.0, 2.5] {
        for q in [1.0, 2.0, f64::INFINITY] {
            let b = besov_norm(&f, &params(s, 1.0, q, w.clone()), &part).unwrap();
            let plain = lp_w_norm(&f, &w, 1.0).unwrap();
            assert!((b.value / plain - 1.0).abs() < 1e-10, "{s} {q}");
        }
    }
}

#[test]
fn absolute_homogeneity() {
    let g = grid();
    let f = shell(&g, 0.2, 6.0, 2, 2);
    let pr = params(0.5, 0.7, 2.0, WeightSpec::diagonal_power(1, vec![-0.5, 0.3]));
    let base = besov_norm(&f, &pr, &standard()).unwrap().value;
    let c = Complex64::new(-1.5, 2.0);
    let scaled = besov_norm(&f.scaled(c), &pr, &standard()).unwrap().value;
    assert!((scaled / (c.norm() * base) - 1.0).abs() < 1e-12);
}

#[test]
fn dilation_scales_by_two_to_the_s_minus_n_over_p() {
    // The same samples on a torus of half the period represent f(2 .).
    let g = grid();
    let half = TorusGrid::new(1, 128, 2048).unwrap();
    let f = shell(&g, 0.2, 3.0, 1, 3);
    let f2 = SampledVectorField::new(half, 1, f.values().to_vec()).unwrap();
    for (s, p) in [(0.0, 1.0), (0.5, 1.0), (1.0, 0.5), (-0.5, 2.0)] {
        let pr = params(s, p, 1.0, WeightSpec::identity(1, 1));
        let a = besov_norm(&f, &pr, &standard()).unwrap().value;
        let b = besov_norm(&f2, &pr, &standard()).unwrap().value;
        let expect = 2f64.powf(s - 1.0 / p);
        assert!((b / a / expect - 1.0).abs() < 1e-2, "{s} {p}: {}", b / a);
    }
}

#[test]
fn pieces_reconstruct_interior_fields() {
    let g = grid();
    let part = variant();
    let f = shell(&g, 0.3, 5.0, 2, 4);
    let mut sum = SampledVectorField::zeros(g.clone(), 2);
    for j in part.js() {
        let sym = part.symbol(j, &g, part.outer_radius(j)).unwrap();
        sum = sum.add(&apply_multiplier(&sym, &f).unwrap()).unwrap();
    }
    assert!(sum.max_abs_diff(&f) <= 1e-10 * f.max_abs());
}

#[test]
fn out_of_range_mass_is_reported() {
    let g = grid();
    let f = shell(&g, 0.0, 2.0, 1, 5);
    let b = besov_norm(&f, &params(0.0, 1.0, 1.0, WeightSpec::identity(1, 1)), &standard()).unwrap();
    let t = b.truncation.expect("low frequencies are outside the covered interior");
    assert!(t.out_of_range_mass > 0.0 && t.out_of_range_mass < 1.0);
}

#[test]
fn ratios_are_reciprocal_and_trivial_for_equal_partitions() {
    let g = grid();
    let corpus = shell_corpus(&g, 0.18, 8.0, 2, 8, 9).unwrap();
    let w = WeightSpec::random_conjugated(1, 2, 11);
    for q in [1.0, f64::INFINITY] {
        let pr = params(0.5, 1.0, q, w.clone());
        let ab = equivalence_experiment(&corpus, &pr, &standard(), &variant()).unwrap();
        let ba = equivalence_experiment(&corpus, &pr, &variant(), &standard()).unwrap();
        for (x, y) in ab.ratios.iter().zip(&ba.ratios) {
            assert!((x * y - 1.0).abs() <= 1e-12);
        }
        let same = equivalence_experiment(&corpus, &pr, &standard(), &standard()).unwrap();
        assert!(same.ratios.iter().all(|&r| r == 1.0));
        assert!(ab.truncated.is_empty());
    }
}

#[test]
fn vanishing_member_is_an_error() {
    let g = grid();
    let mut corpus = shell_corpus(&g, 0.18, 8.0, 1, 2, 0).unwrap();
    corpus.push(SampledVectorField::zeros(g, 1));
    let pr = params(0.0, 1.0, 1.0, WeightSpec::identity(1, 1));
    assert_eq!(
        equivalence_experiment(&corpus, &pr, &standard(), &variant()),
        Err(mwlp::Error::ZeroNorm)
    );
}

#[test]
fn decay_check_separates_smooth_and_rough_profiles() {
    let g = TorusGrid::new(1, 2048, 16384).unwrap();
    let mut constants = Vec::new();
    for prof in [BumpProfile::SmoothExp { shape: 1.0 }, BumpProfile::Polynomial { order: 6 }] {
        let part = make_partition(0.5, 2.0, (-3, 3), prof).unwrap();
        let d = partition_decay_check(&part, 4.0, &g).unwrap();
        assert!(d.decay_c.is_finite() && d.spread <= 0.1, "{prof:?}: {d:?}");
        constants.push(d.decay_c);
    }
    let rough = make_partition(0.5, 2.0, (-3, 3), BumpProfile::PiecewiseLinear).unwrap();
    assert!(matches!(
        partition_decay_check(&rough, 4.0, &g),
        Err(mwlp::Error::DivergentFit { .. })
    ));
}
