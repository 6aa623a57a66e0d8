//! Discrete matrix-weighted norms `(h^n sum_j |W^{1/p}(x_j) f(x_j)|^p)^{1/p}`.

use serde::{Deserialize, Serialize};

use num_complex::Complex64;

use super::field::{forward_transform, inverse_transform, SampledVectorField, Spectrum};
use super::grid::TorusGrid;
use crate::error::{Error, Result};
use crate::muckenhoupt::kernel::{pow_fast, NodeMatrices};
use crate::weights::{weight_root_at, WeightSpec};

/// Where the weighted sum samples `f`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeShift {
    /// Grid nodes.
    None,
    /// Nodes moved by half a cell along every axis, which never hit the origin.
    HalfCell,
    /// `HalfCell` for weights singular at the origin, `None` otherwise.
    #[default]
    Auto,
}

impl NodeShift {
    fn resolve(self, spec: &WeightSpec) -> bool {
        match self {
            NodeShift::None => false,
            NodeShift::HalfCell => true,
            NodeShift::Auto => spec.singular_at_origin(),
        }
    }
}

/// A weighted `L^p` norm on one grid with `W^{1/p}` precomputed at the sample points.
#[derive(Clone, Debug)]
pub struct WeightedLpNorm {
    grid: TorusGrid,
    p: f64,
    shifted: bool,
    roots: NodeMatrices,
    /// `e^{i xi . (h/2, ..., h/2)}` per spectral index when shifted.
    phase: Vec<Complex64>,
}

impl WeightedLpNorm {
    pub fn new(grid: &TorusGrid, spec: &WeightSpec, p: f64, shift: NodeShift) -> Result<Self> {
        grid.validate()?;
        spec.validate()?;
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::ExponentOutOfRange(p));
        }
        if spec.n != grid.n {
            return Err(Error::DimensionMismatch {
                expected: grid.n,
                found: spec.n,
            });
        }
        let shifted = shift.resolve(spec);
        let half = if shifted { 0.5 * grid.h() } else { 0.0 };
        let mats = (0..grid.len())
            .map(|j| {
                let x: Vec<f64> = grid.node(j).into_iter().map(|v| v + half).collect();
                weight_root_at(spec, &x, 1.0 / p)
            })
            .collect::<Result<Vec<_>>>()?;
        let roots = NodeMatrices::pack(&mats);
        let phase = if shifted {
            (0..grid.len())
                .map(|k| Complex64::from_polar(1.0, half * grid.frequency(k).iter().sum::<f64>()))
                .collect()
        } else {
            Vec::new()
        };
        Ok(Self {
            grid: grid.clone(),
            p,
            shifted,
            roots,
            phase,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_shifted(&self) -> bool {
        self.shifted
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    fn sum_at_nodes(&self, f: &SampledVectorField) -> f64 {
        let e = 0.5 * self.p;
        let mut sum = 0.0;
        for j in 0..self.grid.len() {
            sum += pow_fast(self.roots.quad_norm_sq(j, f.at(j)), e);
        }
        self.grid.cell_volume() * sum
    }

    /// `h^n sum_j |W^{1/p} f|^p`, the `p`-th power of the norm.
    pub fn norm_pow(&self, f: &SampledVectorField) -> Result<f64> {
        if *f.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        if self.shifted {
            self.norm_pow_spectrum(forward_transform(f))
        } else {
            Ok(self.sum_at_nodes(f))
        }
    }

    /// As [`norm_pow`](Self::norm_pow) for the field with spectrum `s`.
    pub fn norm_pow_spectrum(&self, mut s: Spectrum) -> Result<f64> {
        if *s.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        if self.shifted {
            let dim = s.dim();
            for (k, z) in self.phase.iter().enumerate() {
                for v in &mut s.values_mut()[k * dim..(k + 1) * dim] {
                    *v *= z;
                }
            }
        }
        Ok(self.sum_at_nodes(&inverse_transform(&s)))
    }

    pub fn norm(&self, f: &SampledVectorField) -> Result<f64> {
        Ok(self.norm_pow(f)?.powf(1.0 / self.p))
    }
}

/// `||f||_{L^p(W)}` with [`NodeShift::Auto`].
pub fn lp_w_norm(f: &SampledVectorField, spec: &WeightSpec, p: f64) -> Result<f64> {
    WeightedLpNorm::new(f.grid(), spec, p, NodeShift::Auto)?.norm(f)
}
