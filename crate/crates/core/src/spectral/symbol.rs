//! Fourier multiplier symbols, their kernels and kernel decay fits.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::{forward_transform, inverse_transform, SampledVectorField, Spectrum};
use super::grid::{euclidean, TorusGrid};
use crate::error::{Error, Result};

/// Refitting on the grid with doubled period may grow `K` by at most this
/// factor before the fit is declared divergent.
pub const DIVERGENCE_GROWTH: f64 = 1.25;

fn one() -> u32 {
    1
}

/// Closed-form symbols. Band-limited forms vanish for `|xi| >= radius`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum SymbolForm {
    /// `1` on the open ball.
    Flat { radius: f64 },
    /// `((1 + cos(pi |xi| / R)) / 2)^order`; the kernel decays like `|x|^{-(2 order + 1)}` in 1-D.
    RaisedCosine {
        radius: f64,
        #[serde(default = "one")]
        order: u32,
    },
    /// `1 - |xi| / R`.
    Triangle { radius: f64 },
    /// `exp(1 - 1 / (1 - |xi|^2 / R^2))`, smooth with value 1 at the origin.
    SmoothBump { radius: f64 },
    /// `e^{-i a . xi}` on the open ball.
    Shift { radius: f64, offset: Vec<f64> },
    /// `exp(-|xi|^2 / (2 width^2))`, not band-limited.
    Gaussian { width: f64 },
    /// `1` at every frequency node.
    AllPass,
    /// `factor * inner`.
    Scaled { factor: f64, inner: Box<SymbolForm> },
    /// `left * right`.
    Product {
        left: Box<SymbolForm>,
        right: Box<SymbolForm>,
    },
    /// `inner(xi / factor)`.
    Dilated { factor: f64, inner: Box<SymbolForm> },
}

impl SymbolForm {
    /// Band radius (`inf` for forms without compact support).
    pub fn radius(&self) -> f64 {
        match self {
            SymbolForm::Flat { radius }
            | SymbolForm::RaisedCosine { radius, .. }
            | SymbolForm::Triangle { radius }
            | SymbolForm::SmoothBump { radius }
            | SymbolForm::Shift { radius, .. } => *radius,
            SymbolForm::Gaussian { .. } | SymbolForm::AllPass => f64::INFINITY,
            SymbolForm::Scaled { inner, .. } => inner.radius(),
            SymbolForm::Product { left, right } => left.radius().min(right.radius()),
            SymbolForm::Dilated { factor, inner } => factor * inner.radius(),
        }
    }

    /// Length scale used for decay fits: the band radius, or the width for a Gaussian.
    pub fn decay_scale(&self) -> f64 {
        match self {
            SymbolForm::Gaussian { width } => *width,
            SymbolForm::AllPass => 1.0,
            SymbolForm::Scaled { inner, .. } => inner.decay_scale(),
            SymbolForm::Product { left, right } => {
                let r = self.radius();
                if r.is_finite() {
                    r
                } else {
                    left.decay_scale().min(right.decay_scale())
                }
            }
            SymbolForm::Dilated { factor, inner } => factor * inner.decay_scale(),
            _ => self.radius(),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let positive = |v: f64, what: &str| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{what} must be positive and finite, got {v}")))
            }
        };
        match self {
            SymbolForm::Flat { radius }
            | SymbolForm::Triangle { radius }
            | SymbolForm::SmoothBump { radius } => positive(*radius, "symbol radius"),
            SymbolForm::RaisedCosine { radius, order } => {
                positive(*radius, "symbol radius")?;
                if *order == 0 {
                    return Err(Error::InvalidParameter("raised-cosine order must be >= 1".into()));
                }
                Ok(())
            }
            SymbolForm::Shift { radius, offset } => {
                positive(*radius, "symbol radius")?;
                if offset.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: offset.len(),
                    });
                }
                Ok(())
            }
            SymbolForm::Gaussian { width } => positive(*width, "gaussian width"),
            SymbolForm::AllPass => Ok(()),
            SymbolForm::Scaled { factor, inner } => {
                if !factor.is_finite() {
                    return Err(Error::InvalidParameter("scale factor must be finite".into()));
                }
                inner.validate(n)
            }
            SymbolForm::Product { left, right } => {
                left.validate(n)?;
                right.validate(n)
            }
            SymbolForm::Dilated { factor, inner } => {
                positive(*factor, "dilation factor")?;
                inner.validate(n)
            }
        }
    }

    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        let r = euclidean(xi);
        let real = |v: f64| Complex64::new(v, 0.0);
        match self {
            SymbolForm::Flat { radius } => real(if r < *radius { 1.0 } else { 0.0 }),
            SymbolForm::RaisedCosine { radius, order } => {
                if r < *radius {
                    real((0.5 * (1.0 + (PI * r / radius).cos())).powi(*order as i32))
                } else {
                    real(0.0)
                }
            }
            SymbolForm::Triangle { radius } => real((1.0 - r / radius).max(0.0)),
            SymbolForm::SmoothBump { radius } => {
                let u = r / radius;
                if u < 1.0 {
                    real((1.0 - 1.0 / (1.0 - u * u)).exp())
                } else {
                    real(0.0)
                }
            }
            SymbolForm::Shift { radius, offset } => {
                if r < *radius {
                    let phase: f64 = xi.iter().zip(offset).map(|(a, b)| a * b).sum();
                    Complex64::from_polar(1.0, -phase)
                } else {
                    real(0.0)
                }
            }
            SymbolForm::Gaussian { width } => real((-0.5 * r * r / (width * width)).exp()),
            SymbolForm::AllPass => real(1.0),
            SymbolForm::Scaled { factor, inner } => inner.eval(xi) * *factor,
            SymbolForm::Product { left, right } => left.eval(xi) * right.eval(xi),
            SymbolForm::Dilated { factor, inner } => {
                let y: Vec<f64> = xi.iter().map(|v| v / factor).collect();
                inner.eval(&y)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            SymbolForm::Flat { radius } => format!("flat(R={radius})"),
            SymbolForm::RaisedCosine { radius, order } => format!("raised-cosine(R={radius},order={order})"),
            SymbolForm::Triangle { radius } => format!("triangle(R={radius})"),
            SymbolForm::SmoothBump { radius } => format!("smooth-bump(R={radius})"),
            SymbolForm::Shift { radius, offset } => format!("shift(R={radius},a={offset:?})"),
            SymbolForm::Gaussian { width } => format!("gaussian(w={width})"),
            SymbolForm::AllPass => "all-pass".into(),
            SymbolForm::Scaled { factor, inner } => format!("{factor}*{}", inner.label()),
            SymbolForm::Product { left, right } => format!("{}*{}", left.label(), right.label()),
            SymbolForm::Dilated { factor, inner } => format!("{}(./{factor})", inner.label()),
        }
    }
}

/// Fitted kernel bound `|F^{-1} phi(x)| <= K R^n (1 + R|x|)^{-M}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "M")]
    pub m: f64,
    /// `K` on the grid with doubled period divided by `K` on the symbol's grid.
    pub growth: f64,
}

type SymbolFn = Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>;

/// A symbol sampled on a grid together with its inverse transform.
#[derive(Clone)]
pub struct MultiplierSymbol {
    grid: TorusGrid,
    radius: f64,
    scale: f64,
    label: String,
    eval: SymbolFn,
    samples: Vec<Complex64>,
    kernel: Vec<Complex64>,
    decay: Option<DecayFit>,
}

impl fmt::Debug for MultiplierSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierSymbol")
            .field("label", &self.label)
            .field("radius", &self.radius)
            .field("grid", &self.grid)
            .field("decay", &self.decay)
            .finish_non_exhaustive()
    }
}

impl MultiplierSymbol {
    pub fn new(form: &SymbolForm, grid: &TorusGrid) -> Result<Self> {
        form.validate(grid.n)?;
        let owned = form.clone();
        Self::build(
            grid,
            form.radius(),
            form.decay_scale(),
            form.label(),
            Arc::new(move |xi: &[f64]| owned.eval(xi)),
        )
    }

    /// A symbol from an arbitrary function, cut off at `|xi| >= radius`.
    pub fn from_fn(
        grid: &TorusGrid,
        radius: f64,
        label: impl Into<String>,
        f: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidParameter(format!("symbol radius {radius} must be positive")));
        }
        Self::build(grid, radius, radius, label.into(), Arc::new(f))
    }

    fn build(grid: &TorusGrid, radius: f64, scale: f64, label: String, eval: SymbolFn) -> Result<Self> {
        grid.validate()?;
        let samples: Vec<Complex64> = (0..grid.len())
            .map(|k| {
                let xi = grid.frequency(k);
                if euclidean(&xi) >= radius {
                    Complex64::new(0.0, 0.0)
                } else {
                    eval(&xi)
                }
            })
            .collect();
        let spec = Spectrum::new(grid.clone(), 1, samples.clone())?;
        let kernel = inverse_transform(&spec).into_values();
        Ok(Self {
            grid: grid.clone(),
            radius,
            scale,
            label,
            eval,
            samples,
            kernel,
            decay: None,
        })
    }

    /// The same symbol sampled on another grid.
    pub fn on_grid(&self, grid: &TorusGrid) -> Result<Self> {
        Self::build(grid, self.radius, self.scale, self.label.clone(), self.eval.clone())
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The `R` of the decay bound.
    pub fn decay_scale(&self) -> f64 {
        self.scale
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        if euclidean(xi) >= self.radius {
            Complex64::new(0.0, 0.0)
        } else {
            (self.eval)(xi)
        }
    }

    /// `phi(xi_k)` in spectral order.
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// `F^{-1} phi(x_j)` in node order.
    pub fn kernel(&self) -> &[Complex64] {
        &self.kernel
    }

    pub fn decay(&self) -> Option<DecayFit> {
        self.decay
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let inner = self.eval.clone();
        Self {
            label: format!("{c}*{}", self.label),
            eval: Arc::new(move |xi: &[f64]| inner(xi) * c),
            samples: self.samples.iter().map(|v| v * c).collect(),
            kernel: self.kernel.iter().map(|v| v * c).collect(),
            decay: None,
            ..self.clone()
        }
    }

    /// The pointwise product `self * other`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let (a, b) = (self.eval.clone(), other.eval.clone());
        let radius = self.radius.min(other.radius);
        let scale = if radius.is_finite() { radius } else { self.scale.min(other.scale) };
        Self::build(
            &self.grid,
            radius,
            scale,
            format!("{}*{}", self.label, other.label),
            Arc::new(move |xi: &[f64]| a(xi) * b(xi)),
        )
    }

    /// `K = max_j |F^{-1} phi(x_j)| (1 + R|x_j|)^M / R^n` on this grid.
    pub fn decay_constant(&self, m_exp: f64) -> Result<f64> {
        if !(m_exp > 0.0) {
            return Err(Error::InvalidParameter(format!("decay exponent M = {m_exp} must be positive")));
        }
        let r = self.scale;
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter("decay fit needs a finite positive scale".into()));
        }
        let rn = r.powi(self.grid.n as i32);
        let mut k = 0.0_f64;
        for (j, v) in self.kernel.iter().enumerate() {
            let x = euclidean(&self.grid.node(j));
            k = k.max(v.norm() * (1.0 + r * x).powf(m_exp) / rn);
        }
        Ok(k)
    }

    /// Fits `K` for exponent `M` and checks it on the grid with doubled period.
    pub fn fit_decay(&self, m_exp: f64) -> Result<DecayFit> {
        let k = self.decay_constant(m_exp)?;
        let k2 = self.on_grid(&self.grid.doubled_period())?.decay_constant(m_exp)?;
        let growth = k2 / k;
        if !(growth <= DIVERGENCE_GROWTH) {
            return Err(Error::DivergentFit { exponent: m_exp, growth });
        }
        Ok(DecayFit { k, m: m_exp, growth })
    }

    /// The symbol with `fit` attached.
    pub fn with_decay(mut self, fit: DecayFit) -> Self {
        self.decay = Some(fit);
        self
    }

    /// `h^n sum_j |(2 pi)^{-n/2} F^{-1} phi(x_j)|`, the norm of the discrete
    /// convolution kernel realizing `phi(D)`.
    pub fn convolution_l1_norm(&self) -> f64 {
        let c = TAU.powf(-0.5 * self.grid.n as f64) * self.grid.cell_volume();
        c * self.kernel.iter().map(|v| v.norm()).sum::<f64>()
    }
}

/// `phi(D) f = F^{-1}[phi F f]`, componentwise.
pub fn apply_multiplier(phi: &MultiplierSymbol, f: &SampledVectorField) -> Result<SampledVectorField> {
    if phi.grid != *f.grid() {
        return Err(Error::GridMismatch);
    }
    let mut s = forward_transform(f);
    let dim = s.dim();
    for (k, z) in phi.samples.iter().enumerate() {
        for v in &mut s.values_mut()[k * dim..(k + 1) * dim] {
            *v *= z;
        }
    }
    let band = match f.band_radius() {
        Some(b) => Some(b.min(phi.radius)),
        None if phi.radius.is_finite() => Some(phi.radius),
        None => None,
    };
    Ok(inverse_transform(&s).with_band_radius(band))
}
