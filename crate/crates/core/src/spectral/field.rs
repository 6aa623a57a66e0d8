//! Sampled vector fields and their spectra.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::fft::fft_nd;
use super::grid::TorusGrid;
use crate::error::{Error, Result};

/// A `C^N`-valued function sampled at every node of a [`TorusGrid`].
///
/// Values are node-major: the `N` components of node `j` occupy
/// `values[j * N .. (j + 1) * N]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledVectorField {
    grid: TorusGrid,
    dim: usize,
    values: Vec<Complex64>,
    band_radius: Option<f64>,
}

/// Fourier coefficients of a field, in the same layout over spectral indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    grid: TorusGrid,
    dim: usize,
    values: Vec<Complex64>,
}

fn check_len(grid: &TorusGrid, dim: usize, len: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidParameter("vector dimension N must be positive".into()));
    }
    if len != grid.len() * dim {
        return Err(Error::DimensionMismatch {
            expected: grid.len() * dim,
            found: len,
        });
    }
    Ok(())
}

impl SampledVectorField {
    pub fn new(grid: TorusGrid, dim: usize, values: Vec<Complex64>) -> Result<Self> {
        grid.validate()?;
        check_len(&grid, dim, values.len())?;
        Ok(Self {
            grid,
            dim,
            values,
            band_radius: None,
        })
    }

    pub fn zeros(grid: TorusGrid, dim: usize) -> Self {
        let len = grid.len() * dim;
        Self {
            grid,
            dim,
            values: vec![Complex64::new(0.0, 0.0); len],
            band_radius: None,
        }
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: TorusGrid, dim: usize, mut f: impl FnMut(&[f64]) -> Vec<Complex64>) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len() * dim);
        for j in 0..grid.len() {
            let v = f(&grid.node(j));
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            values.extend(v);
        }
        Self::new(grid, dim, values)
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// The `N` components at node `j`.
    pub fn at(&self, j: usize) -> &[Complex64] {
        &self.values[j * self.dim..(j + 1) * self.dim]
    }

    pub fn band_radius(&self) -> Option<f64> {
        self.band_radius
    }

    pub fn with_band_radius(mut self, r: Option<f64>) -> Self {
        self.band_radius = r;
        self
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    /// Pointwise sum; the band tag is the larger of the two.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid || self.dim != other.dim {
            return Err(Error::GridMismatch);
        }
        let band_radius = match (self.band_radius, other.band_radius) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Ok(Self {
            grid: self.grid.clone(),
            dim: self.dim,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            band_radius,
        })
    }

    /// Largest componentwise difference `max |f_j - g_j|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Discrete `L^2` norm `(h^n sum_j |f(x_j)|^2)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.cell_volume() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    fn component(&self, c: usize) -> Vec<Complex64> {
        self.values.iter().skip(c).step_by(self.dim).copied().collect()
    }
}

impl Spectrum {
    pub fn new(grid: TorusGrid, dim: usize, values: Vec<Complex64>) -> Result<Self> {
        grid.validate()?;
        check_len(&grid, dim, values.len())?;
        Ok(Self { grid, dim, values })
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn at(&self, k: usize) -> &[Complex64] {
        &self.values[k * self.dim..(k + 1) * self.dim]
    }

    /// Discrete `L^2` norm on the frequency side, `((2 pi / T)^n sum_k |F_k|^2)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        let dxi = self.grid.frequency_spacing().powi(self.grid.n as i32);
        (dxi * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }
}

fn scatter(values: &mut [Complex64], dim: usize, c: usize, comp: &[Complex64]) {
    for (j, v) in comp.iter().enumerate() {
        values[j * dim + c] = *v;
    }
}

/// `F_k = (2 pi)^{-n/2} h^n sum_j f(x_j) e^{-i x_j . xi_k}`, componentwise.
pub fn forward_transform(f: &SampledVectorField) -> Spectrum {
    let g = &f.grid;
    let scale = (TAU).powf(-0.5 * g.n as f64) * g.cell_volume();
    let mut out = vec![Complex64::new(0.0, 0.0); f.values.len()];
    for c in 0..f.dim {
        let mut comp = f.component(c);
        fft_nd(&mut comp, g.n, g.m, false);
        for (k, v) in comp.iter_mut().enumerate() {
            *v *= scale * g.checkerboard(k);
        }
        scatter(&mut out, f.dim, c, &comp);
    }
    Spectrum {
        grid: g.clone(),
        dim: f.dim,
        values: out,
    }
}

/// `f(x_j) = (2 pi)^{-n/2} (2 pi / T)^n sum_k F_k e^{i x_j . xi_k}`; exact
/// inverse of [`forward_transform`].
pub fn inverse_transform(s: &Spectrum) -> SampledVectorField {
    let g = &s.grid;
    let scale = TAU.powf(-0.5 * g.n as f64) * g.frequency_spacing().powi(g.n as i32);
    let mut out = vec![Complex64::new(0.0, 0.0); s.values.len()];
    for c in 0..s.dim {
        let mut comp: Vec<Complex64> = s
            .values
            .iter()
            .skip(c)
            .step_by(s.dim)
            .enumerate()
            .map(|(k, v)| v * g.checkerboard(k))
            .collect();
        fft_nd(&mut comp, g.n, g.m, true);
        for v in comp.iter_mut() {
            *v *= scale;
        }
        scatter(&mut out, s.dim, c, &comp);
    }
    SampledVectorField {
        grid: g.clone(),
        dim: s.dim,
        values: out,
        band_radius: None,
    }
}

/// Samples of the trigonometric interpolant at the shifted nodes `x_j + offset`.
pub fn translate(f: &SampledVectorField, offset: &[f64]) -> Result<SampledVectorField> {
    if offset.len() != f.grid.n {
        return Err(Error::DimensionMismatch {
            expected: f.grid.n,
            found: offset.len(),
        });
    }
    let mut s = forward_transform(f);
    let dim = s.dim;
    for k in 0..s.grid.len() {
        let xi = s.grid.frequency(k);
        let phase: f64 = xi.iter().zip(offset).map(|(a, b)| a * b).sum();
        let z = Complex64::from_polar(1.0, phase);
        for v in &mut s.values[k * dim..(k + 1) * dim] {
            *v *= z;
        }
    }
    Ok(inverse_transform(&s).with_band_radius(f.band_radius))
}
