//! Seeded test corpora.

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::rng::{complex_gaussian, substream};
use crate::spectral::{synthesize_shell, SampledVectorField, SpectralProfile, TorusGrid};

/// Profiles cycled through by [`bandlimited_corpus`].
pub const CORPUS_PROFILES: [SpectralProfile; 3] = [
    SpectralProfile::Flat,
    SpectralProfile::Decaying { rate: 2.0 },
    SpectralProfile::Annulus { inner: 0.5, outer: 1.0 },
];

/// `size` fields in `E_R`, drawn in order from one substream, so a corpus is
/// a prefix of every larger corpus with the same seed.
pub fn bandlimited_corpus(
    grid: &TorusGrid,
    radius: f64,
    dim: usize,
    size: usize,
    seed: u64,
) -> Result<Vec<SampledVectorField>> {
    let mut rng = substream(seed, "corpus/bandlimited");
    (0..size)
        .map(|i| synthesize_shell(grid, 0.0, radius, dim, CORPUS_PROFILES[i % CORPUS_PROFILES.len()], &mut rng))
        .collect()
}

/// Sums of three Gaussian bumps with random centres in `[-T/4, T/4)^n`,
/// widths in `[0.3, 2)` and complex Gaussian coefficient vectors. Not band-limited.
pub fn gaussian_corpus(grid: &TorusGrid, dim: usize, size: usize, seed: u64) -> Result<Vec<SampledVectorField>> {
    let mut rng = substream(seed, "corpus/gaussian");
    let quarter = grid.period as f64 / 4.0;
    (0..size)
        .map(|_| {
            let bumps: Vec<(Vec<f64>, f64, Vec<Complex64>)> = (0..3)
                .map(|_| {
                    let centre = (0..grid.n).map(|_| rng.random_range(-quarter..quarter)).collect();
                    let width = rng.random_range(0.3..2.0);
                    let coef = (0..dim).map(|_| complex_gaussian(&mut rng)).collect();
                    (centre, width, coef)
                })
                .collect();
            SampledVectorField::from_fn(grid.clone(), dim, |x| {
                let mut v = vec![Complex64::new(0.0, 0.0); dim];
                for (c, w, a) in &bumps {
                    let r2: f64 = x.iter().zip(c).map(|(p, q)| (p - q) * (p - q)).sum();
                    let g = (-0.5 * r2 / (w * w)).exp();
                    for (vi, ai) in v.iter_mut().zip(a) {
                        *vi += ai * g;
                    }
                }
                v
            })
        })
        .collect()
}
