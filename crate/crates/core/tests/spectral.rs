use approx::assert_relative_eq;
use mwlp::spectral::{
    apply_multiplier, forward_transform, inverse_transform, lp_w_norm, sampling_series_field, synthesize_bandlimited,
    translate, MultiplierSymbol, SampledVectorField, SymbolForm, TorusGrid,
};
use mwlp::weights::WeightSpec;
use mwlp::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn line() -> TorusGrid {
    TorusGrid::new(1, 64, 512).unwrap()
}

#[test]
fn gaussian_is_its_own_transform() {
    let g = line();
    let f = SampledVectorField::from_fn(g.clone(), 1, |x| vec![Complex64::new((-0.5 * x[0] * x[0]).exp(), 0.0)]).unwrap();
    let s = forward_transform(&f);
    for k in 0..g.len() {
        let xi = g.frequency(k)[0];
        assert!((s.at(k)[0] - Complex64::new((-0.5 * xi * xi).exp(), 0.0)).norm() < 1e-12);
    }
}

#[test]
fn identity_weight_norm_is_the_riemann_sum() {
    let g = line();
    let f = synthesize_bandlimited(&g, 1.0, 2, 3).unwrap();
    for p in [0.5, 1.0, 2.0] {
        let direct: f64 = f
            .values()
            .chunks(2)
            .map(|v| (v[0].norm_sqr() + v[1].norm_sqr()).sqrt().powf(p))
            .sum::<f64>()
            * g.h();
        let got = lp_w_norm(&f, &WeightSpec::identity(1, 2), p).unwrap();
        assert_relative_eq!(got, direct.powf(1.0 / p), max_relative = 1e-12);
    }
}

#[test]
fn flat_symbol_fails_the_decay_fit() {
    let phi = MultiplierSymbol::new(&SymbolForm::Flat { radius: 1.0 }, &line()).unwrap();
    assert!(matches!(phi.fit_decay(4.0), Err(Error::DivergentFit { .. })));
    let rc = MultiplierSymbol::new(&SymbolForm::RaisedCosine { radius: 1.0, order: 2 }, &line()).unwrap();
    assert!(rc.fit_decay(4.0).unwrap().k.is_finite());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn transforms_invert(seed in 0u64..10_000) {
        let f = synthesize_bandlimited(&TorusGrid::new(2, 8, 32).unwrap(), 2.0, 2, seed).unwrap();
        let back = inverse_transform(&forward_transform(&f));
        prop_assert!(back.max_abs_diff(&f) <= 1e-12 * f.max_abs());
    }

    #[test]
    fn shift_symbol_translates(seed in 0u64..10_000, a in -3.0f64..3.0) {
        let g = line();
        let f = synthesize_bandlimited(&g, 1.0, 1, seed).unwrap();
        let phi = MultiplierSymbol::new(&SymbolForm::Shift { radius: 1.5, offset: vec![a] }, &g).unwrap();
        let shifted = apply_multiplier(&phi, &f).unwrap();
        let moved = translate(&f, &[-a]).unwrap();
        prop_assert!(shifted.max_abs_diff(&moved) <= 1e-10 * f.max_abs());
    }

    #[test]
    fn sampling_series_reproduces_the_multiplier(seed in 0u64..10_000, steps in -4i32..4) {
        // Offsets must be node-aligned: multiples of h = 1/8 in [-1/2, 1/2).
        let g = line();
        let u = steps as f64 * g.h();
        let f = synthesize_bandlimited(&g, 1.0, 2, seed).unwrap();
        let form = SymbolForm::RaisedCosine { radius: 1.0, order: 2 };
        let phi = MultiplierSymbol::new(&form, &g).unwrap();
        let direct = apply_multiplier(&phi, &f).unwrap();
        let series = sampling_series_field(&phi, &f, &[u]).unwrap();
        prop_assert!(series.max_abs_diff(&direct) <= 1e-9 * direct.max_abs());
    }

    #[test]
    fn norm_is_homogeneous(seed in 0u64..10_000, c in 0.01f64..100.0, p in 0.3f64..3.0) {
        let f = synthesize_bandlimited(&line(), 1.0, 2, seed).unwrap();
        let w = WeightSpec::random_conjugated(1, 2, seed);
        let a = lp_w_norm(&f.scaled(Complex64::new(0.0, c)), &w, p).unwrap();
        let b = lp_w_norm(&f, &w, p).unwrap();
        prop_assert!((a - c * b).abs() <= 1e-12 * c * b);
    }
}
