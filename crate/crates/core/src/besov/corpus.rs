//! Corpora whose spectra avoid the frequency origin.

use crate::error::{Error, Result};
use crate::rng::substream;
use crate::spectral::{synthesize_shell, SampledVectorField, SpectralProfile, TorusGrid};

/// Relative width of the narrow sub-bands.
const NARROW: f64 = 1.25;

/// Radical inverse of `i` in `base`.
fn van_der_corput(mut i: usize, base: usize) -> f64 {
    let (mut v, mut denom) = (0.0, 1.0);
    while i > 0 {
        denom *= base as f64;
        v += (i % base) as f64 / denom;
        i /= base;
    }
    v
}

/// Inner radius of the `idx`-th sub-band of relative width `width` in `[inner, outer)`.
///
/// Positions within an octave follow a van der Corput sequence, so any prefix
/// of the corpus samples the dyadic phase evenly; the octave itself cycles.
fn band_start(inner: f64, outer: f64, width: f64, idx: usize, base: usize) -> f64 {
    let octaves = ((outer / width / inner).log2().floor() as usize).max(1);
    let frac = van_der_corput(idx + 1, base);
    let mut e = (idx % octaves) as f64 + frac;
    while e > 0.0 && inner * 2f64.powf(e) * width >= outer {
        e -= 1.0;
    }
    inner * 2f64.powf(e.max(0.0))
}

/// `size` fields with spectra in `[inner, outer)`, `inner > 0`, drawn in order
/// from one substream (prefix-stable). Every fourth member fills the whole
/// shell (alternately flat and decaying); the rest are narrow bands `[a, 1.25 a)`.
pub fn shell_corpus(
    grid: &TorusGrid,
    inner: f64,
    outer: f64,
    dim: usize,
    size: usize,
    seed: u64,
) -> Result<Vec<SampledVectorField>> {
    if !(inner > 0.0 && outer > 2.0 * inner) {
        return Err(Error::InvalidParameter(format!(
            "corpus shell needs 0 < 2 inner < outer, got [{inner}, {outer})"
        )));
    }
    let mut rng = substream(seed, "corpus/shell");
    (0..size)
        .map(|i| {
            if i % 4 == 0 {
                let profile = if (i / 4) % 2 == 0 {
                    SpectralProfile::Flat
                } else {
                    SpectralProfile::Decaying { rate: 1.0 }
                };
                synthesize_shell(grid, inner, outer, dim, profile, &mut rng)
            } else {
                let a = band_start(inner, outer, NARROW, i - i / 4 - 1, 2);
                synthesize_shell(grid, a, NARROW * a, dim, SpectralProfile::Flat, &mut rng)
            }
        })
        .collect()
}
