//! Measured ratios `||phi(D) f||_{L^p(W)} / ||f||_{L^p(W)}` over corpora.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{
    apply_multiplier, bandlimit_check, MultiplierSymbol, NodeShift, SampledVectorField, SymbolForm, TorusGrid,
    WeightedLpNorm,
};
use crate::weights::WeightSpec;

/// Relative out-of-band mass tolerated in corpus members.
pub const BAND_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalRatios {
    pub ratios: Vec<f64>,
    pub max: f64,
}

impl EmpiricalRatios {
    fn from_ratios(ratios: Vec<f64>) -> Self {
        let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self { ratios, max }
    }
}

fn ratios(
    spec: &WeightSpec,
    phi: &MultiplierSymbol,
    p: f64,
    corpus: &[SampledVectorField],
    band: bool,
) -> Result<EmpiricalRatios> {
    if corpus.is_empty() {
        return Err(Error::InvalidParameter("corpus is empty".into()));
    }
    let norm = WeightedLpNorm::new(phi.grid(), spec, p, NodeShift::Auto)?;
    let out: Vec<Result<f64>> = corpus
        .par_iter()
        .map(|f| {
            if band {
                let check = bandlimit_check(f, phi.radius(), BAND_TOL);
                if !check.passed {
                    return Err(Error::BandViolation {
                        radius: phi.radius(),
                        ratio: check.out_of_band,
                    });
                }
            }
            let den = norm.norm(f)?;
            if den == 0.0 {
                return Err(Error::ZeroNorm);
            }
            Ok(norm.norm(&apply_multiplier(phi, f)?)? / den)
        })
        .collect();
    Ok(EmpiricalRatios::from_ratios(out.into_iter().collect::<Result<_>>()?))
}

/// Ratios over a corpus of fields band-limited to the radius of `phi`.
pub fn empirical_ratio(
    spec: &WeightSpec,
    phi: &MultiplierSymbol,
    p: f64,
    corpus: &[SampledVectorField],
) -> Result<EmpiricalRatios> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::ExponentOutOfRange(p));
    }
    ratios(spec, phi, p, corpus, true)
}

/// Ratios for `p >= 1` over arbitrary fields; no band condition.
pub fn large_p_ratio(
    spec: &WeightSpec,
    phi: &MultiplierSymbol,
    p: f64,
    corpus: &[SampledVectorField],
) -> Result<EmpiricalRatios> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::ExponentOutOfRange(p));
    }
    ratios(spec, phi, p, corpus, false)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RescalePoint {
    #[serde(rename = "R")]
    pub radius: f64,
    pub grid: TorusGrid,
    pub ratio_max: f64,
}

/// The grid of period `T / R` with the same sample count.
pub fn rescaled_grid(grid: &TorusGrid, radius: f64) -> Result<TorusGrid> {
    let t = grid.period as f64 / radius;
    if !(t.fract() == 0.0 && t >= 2.0) {
        return Err(Error::InvalidParameter(format!(
            "period {} / R = {t} is not an integer",
            grid.period
        )));
    }
    TorusGrid::new(grid.n, t as usize, grid.m)
}

/// Runs the multiplier `phi_base(. / R)` on `g = f(R .)` for each `R`.
///
/// Each field of `corpus` lives on `grid` in `E_1`; on the grid of period
/// `T / R` the same samples represent `f(R .)`, which lies in `E_R`.
pub fn rescale_experiment(
    spec: &WeightSpec,
    base: &SymbolForm,
    p: f64,
    radii: &[f64],
    grid: &TorusGrid,
    corpus: &[SampledVectorField],
) -> Result<Vec<RescalePoint>> {
    radii
        .iter()
        .map(|&r| {
            let g = rescaled_grid(grid, r)?;
            let form = if r == 1.0 {
                base.clone()
            } else {
                SymbolForm::Dilated {
                    factor: r,
                    inner: Box::new(base.clone()),
                }
            };
            let phi = MultiplierSymbol::new(&form, &g)?;
            let scaled: Vec<SampledVectorField> = corpus
                .iter()
                .map(|f| {
                    Ok(SampledVectorField::new(g.clone(), f.dim(), f.values().to_vec())?
                        .with_band_radius(f.band_radius().map(|b| b * r)))
                })
                .collect::<Result<_>>()?;
            let ratio_max = empirical_ratio(spec, &phi, p, &scaled)?.max;
            Ok(RescalePoint {
                radius: r,
                grid: g,
                ratio_max,
            })
        })
        .collect()
}
