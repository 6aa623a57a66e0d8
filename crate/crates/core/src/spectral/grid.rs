//! The periodic grid standing in for `R^n`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `m^n` nodes `x_j = -T/2 + j h`, `h = T/m`, on the torus `[-T/2, T/2)^n`,
/// with dual frequencies `2 pi k / T`, `k in [-m/2, m/2)^n`.
///
/// Flat node indices are row-major (last axis fastest). Spectra are stored in
/// FFT order along every axis, so index `kk` holds the signed frequency index
/// `kk` for `kk < m/2` and `kk - m` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusGrid {
    pub n: usize,
    #[serde(rename = "T")]
    pub period: usize,
    pub m: usize,
}

impl TorusGrid {
    pub fn new(n: usize, period: usize, m: usize) -> Result<Self> {
        let g = Self { n, period, m };
        g.validate()?;
        Ok(g)
    }

    /// `T = 64, m = 512` in 1-D and `T = 16, m = 128` per axis otherwise.
    pub fn default_for_dim(n: usize) -> Self {
        if n == 1 {
            Self { n, period: 64, m: 512 }
        } else {
            Self { n, period: 16, m: 128 }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.n) {
            return Err(Error::InvalidParameter(format!(
                "grid dimension n = {} must be 1, 2 or 3",
                self.n
            )));
        }
        if self.period == 0 || !self.period.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "period T = {} must be a positive even integer",
                self.period
            )));
        }
        if self.m == 0 || !self.m.is_multiple_of(self.period) {
            return Err(Error::InvalidParameter(format!(
                "m = {} must be divisible by T = {}",
                self.m, self.period
            )));
        }
        Ok(())
    }

    /// The grid with period and sample count both doubled (same spacing).
    pub fn doubled_period(&self) -> Self {
        Self {
            n: self.n,
            period: 2 * self.period,
            m: 2 * self.m,
        }
    }

    pub fn h(&self) -> f64 {
        self.period as f64 / self.m as f64
    }

    /// Nodes per unit length, `m / T`.
    pub fn nodes_per_unit(&self) -> usize {
        self.m / self.period
    }

    pub fn len(&self) -> usize {
        self.m.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `h^n`.
    pub fn cell_volume(&self) -> f64 {
        self.h().powi(self.n as i32)
    }

    pub fn frequency_spacing(&self) -> f64 {
        TAU / self.period as f64
    }

    /// Largest frequency magnitude per axis, `pi m / T`.
    pub fn nyquist(&self) -> f64 {
        0.5 * self.m as f64 * self.frequency_spacing()
    }

    pub fn coordinate(&self, j: usize) -> f64 {
        -0.5 * self.period as f64 + j as f64 * self.h()
    }

    /// Index of the node at the origin along one axis.
    pub fn origin_index(&self) -> usize {
        self.m / 2
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for a in (0..self.n).rev() {
            idx[a] = flat % self.m;
            flat /= self.m;
        }
        idx
    }

    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi.iter().fold(0, |acc, &i| acc * self.m + i)
    }

    pub fn node(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .into_iter()
            .map(|j| self.coordinate(j))
            .collect()
    }

    pub fn nodes(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.node(i)).collect()
    }

    pub fn signed_frequency_index(&self, kk: usize) -> i64 {
        if kk < self.m / 2 {
            kk as i64
        } else {
            kk as i64 - self.m as i64
        }
    }

    /// The frequency `xi_k` stored at flat spectral index `flat`.
    pub fn frequency(&self, flat: usize) -> Vec<f64> {
        let d = self.frequency_spacing();
        self.multi_index(flat)
            .into_iter()
            .map(|kk| d * self.signed_frequency_index(kk) as f64)
            .collect()
    }

    pub fn frequencies(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.frequency(i)).collect()
    }

    /// `(-1)^{k_1 + ... + k_n}` for the spectral index `flat`.
    pub(crate) fn checkerboard(&self, flat: usize) -> f64 {
        let (mut rest, mut parity) = (flat, 0);
        for _ in 0..self.n {
            parity += rest % self.m;
            rest /= self.m;
        }
        if parity % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

pub(crate) fn euclidean(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}
