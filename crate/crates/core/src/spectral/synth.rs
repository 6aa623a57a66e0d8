//! Seeded bandlimited fields and spectral-support checks.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::field::{forward_transform, inverse_transform, SampledVectorField, Spectrum};
use super::grid::{euclidean, TorusGrid};
use crate::error::{Error, Result};
use crate::rng::{complex_gaussian, substream};

/// Amplitude envelope of the random spectral coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "kebab-case")]
pub enum SpectralProfile {
    Flat,
    /// Amplitude `(1 + |xi|)^{-rate}`.
    Decaying { rate: f64 },
    /// Only frequencies with `inner <= |xi| / outer_radius < outer`.
    Annulus { inner: f64, outer: f64 },
}

impl SpectralProfile {
    fn amplitude(&self, r: f64, outer_radius: f64) -> f64 {
        match *self {
            SpectralProfile::Flat => 1.0,
            SpectralProfile::Decaying { rate } => (1.0 + r).powf(-rate),
            SpectralProfile::Annulus { inner, outer } => {
                let u = r / outer_radius;
                if u >= inner && u < outer {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// A field with complex Gaussian coefficients on the nodes `inner <= |xi| < outer - delta`,
/// `delta` one frequency spacing, weighted by `profile`. When `inner == 0` the
/// zero frequency is always eligible. Tagged with band radius `outer`.
pub fn synthesize_shell<R: Rng + ?Sized>(
    grid: &TorusGrid,
    inner: f64,
    outer: f64,
    dim: usize,
    profile: SpectralProfile,
    rng: &mut R,
) -> Result<SampledVectorField> {
    grid.validate()?;
    if !(outer > 0.0 && outer.is_finite()) || !(inner >= 0.0) || dim == 0 {
        return Err(Error::InvalidParameter(format!(
            "invalid band [{inner}, {outer}) or dimension {dim}"
        )));
    }
    let delta = grid.frequency_spacing();
    let mut values = vec![num_complex::Complex64::new(0.0, 0.0); grid.len() * dim];
    let mut any = false;
    for k in 0..grid.len() {
        let r = euclidean(&grid.frequency(k));
        let eligible = (r == 0.0 && inner == 0.0) || (r >= inner && r < outer - delta);
        if !eligible {
            continue;
        }
        let a = profile.amplitude(r, outer);
        // Draw even when a == 0 so the stream does not depend on the profile.
        for c in 0..dim {
            let z = complex_gaussian(rng);
            values[k * dim + c] = z * a;
        }
        any |= a > 0.0;
    }
    if !any {
        return Err(Error::EmptyBand(outer));
    }
    let spec = Spectrum::new(grid.clone(), dim, values)?;
    Ok(inverse_transform(&spec).with_band_radius(Some(outer)))
}

/// A field in `E_R` with a flat random spectrum, from the `"synth"` substream of `seed`.
pub fn synthesize_bandlimited(grid: &TorusGrid, radius: f64, dim: usize, seed: u64) -> Result<SampledVectorField> {
    let mut rng = substream(seed, "synth");
    synthesize_shell(grid, 0.0, radius, dim, SpectralProfile::Flat, &mut rng)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandCheck {
    pub passed: bool,
    /// `max_{|xi| >= R} |F(xi)| / max_{|xi| < R} |F(xi)|` (0 for the zero field).
    pub out_of_band: f64,
}

/// Whether the spectrum of `f` vanishes outside `B(0, R)` up to `tol` relative
/// to its largest in-band coefficient. `|F(xi)|` is the Euclidean norm over components.
pub fn bandlimit_check(f: &SampledVectorField, radius: f64, tol: f64) -> BandCheck {
    let s = forward_transform(f);
    let g = s.grid();
    let (mut inside, mut outside) = (0.0_f64, 0.0_f64);
    for k in 0..g.len() {
        let mag = s.at(k).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if euclidean(&g.frequency(k)) < radius {
            inside = inside.max(mag);
        } else {
            outside = outside.max(mag);
        }
    }
    let out_of_band = if outside == 0.0 {
        0.0
    } else if inside == 0.0 {
        f64::INFINITY
    } else {
        outside / inside
    };
    BandCheck {
        passed: out_of_band <= tol,
        out_of_band,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthesized_fields_are_bandlimited() {
        let g = TorusGrid::new(1, 64, 512).unwrap();
        let f = synthesize_bandlimited(&g, 1.0, 1, 1).unwrap();
        assert!(bandlimit_check(&f, 1.0, 1e-10).passed);
        assert_eq!(f.band_radius(), Some(1.0));
        let g2 = TorusGrid::new(2, 16, 64).unwrap();
        let f2 = synthesize_bandlimited(&g2, 2.0, 3, 1).unwrap();
        assert!(bandlimit_check(&f2, 2.0, 1e-10).passed);
    }

    #[test]
    fn tiny_band_gives_a_constant() {
        let g = TorusGrid::new(1, 64, 512).unwrap();
        let f = synthesize_bandlimited(&g, 0.05, 2, 3).unwrap();
        let c = f.at(0).to_vec();
        for j in 0..g.len() {
            for (a, b) in f.at(j).iter().zip(&c) {
                assert!((a - b).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn seeds_differ() {
        let g = TorusGrid::new(1, 64, 512).unwrap();
        let a = synthesize_bandlimited(&g, 1.0, 1, 1).unwrap();
        let b = synthesize_bandlimited(&g, 1.0, 1, 2).unwrap();
        assert!(a.max_abs_diff(&b) > 1e-3);
        assert!(bandlimit_check(&b, 1.0, 1e-10).passed);
    }

    #[test]
    fn squaring_doubles_the_band() {
        let g = TorusGrid::new(1, 64, 512).unwrap();
        let f = synthesize_bandlimited(&g, 1.0, 1, 4).unwrap();
        let sq = SampledVectorField::new(g.clone(), 1, f.values().iter().map(|v| v * v).collect()).unwrap();
        assert!(!bandlimit_check(&sq, 1.0, 1e-10).passed);
        assert!(bandlimit_check(&sq, 2.0, 1e-10).passed);
    }

    #[test]
    fn zero_field_passes_everywhere() {
        let g = TorusGrid::new(1, 8, 16).unwrap();
        let z = SampledVectorField::zeros(g, 2);
        assert!(bandlimit_check(&z, 0.1, 0.0).passed);
    }

    #[test]
    fn empty_band_is_an_error() {
        let g = TorusGrid::new(1, 8, 16).unwrap();
        let mut rng = substream(0, "t");
        let e = synthesize_shell(&g, 2.0, 2.1, 1, SpectralProfile::Flat, &mut rng);
        assert_eq!(e, Err(Error::EmptyBand(2.1)));
    }
}
