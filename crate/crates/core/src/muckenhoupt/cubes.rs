//! Finite families of axis-parallel cubes `Q(z, r) = z + r [-1/2, 1/2)^n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One cube of a family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cube {
    pub center: Vec<f64>,
    pub side: f64,
}

impl Cube {
    pub fn new(center: Vec<f64>, side: f64) -> Self {
        Self { center, side }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn volume(&self) -> f64 {
        self.side.powi(self.dim() as i32)
    }

    /// The concentric cube with twice the side.
    pub fn doubled(&self) -> Self {
        Self {
            center: self.center.clone(),
            side: 2.0 * self.side,
        }
    }

    /// Midpoint-rule node coordinates along each axis.
    pub fn axis_nodes(&self, q: usize) -> Vec<Vec<f64>> {
        let h = self.side / q as f64;
        self.center
            .iter()
            .map(|&c| {
                (0..q)
                    .map(|i| c - 0.5 * self.side + (i as f64 + 0.5) * h)
                    .collect()
            })
            .collect()
    }

    /// All `q^n` tensor midpoint nodes, last axis fastest.
    pub fn nodes(&self, q: usize) -> Vec<Vec<f64>> {
        tensor_points(&self.axis_nodes(q))
    }
}

/// Cartesian product of per-axis coordinates, last axis fastest.
pub(crate) fn tensor_points(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut points: Vec<Vec<f64>> = vec![Vec::with_capacity(axes.len())];
    for axis in axes {
        let mut next = Vec::with_capacity(points.len() * axis.len());
        for p in &points {
            for &c in axis {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        points = next;
    }
    points
}

/// Cubes of side `base * 2^j`, `j` in `[j_min, j_max]`, centered on the
/// half-side lattice inside `[-half_width, half_width]^n`.
///
/// `window`, when set, further restricts centers at side `r` to
/// `|z_i| <= window * r`. The restriction is stated in units of the side, so
/// dilating a family by `R` still maps it onto the family with `base * R` and
/// `half_width * R`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubeFamily {
    pub n: usize,
    pub j_min: i32,
    pub j_max: i32,
    pub half_width: f64,
    #[serde(default = "one")]
    pub base: f64,
    #[serde(default)]
    pub window: Option<f64>,
    /// Midpoint nodes per axis; must be even so the origin is never a node.
    pub q: usize,
}

fn one() -> f64 {
    1.0
}

impl CubeFamily {
    pub fn new(n: usize, j_min: i32, j_max: i32, half_width: f64, q: usize) -> Result<Self> {
        let fam = Self {
            n,
            j_min,
            j_max,
            half_width,
            base: 1.0,
            window: None,
            q,
        };
        fam.validate()?;
        Ok(fam)
    }

    /// `j` in `[-8, 4]`, box `[-16, 16]^n`; `q = 128` with window 4 in 1-D,
    /// `q = 32` with window 2 otherwise.
    pub fn default_for_dim(n: usize) -> Self {
        let (q, window) = if n == 1 { (128, 4.0) } else { (32, 2.0) };
        Self {
            n,
            j_min: -8,
            j_max: 4,
            half_width: 16.0,
            base: 1.0,
            window: Some(window),
            q,
        }
    }

    pub fn with_q(mut self, q: usize) -> Self {
        self.q = q;
        self
    }

    pub fn with_window(mut self, window: Option<f64>) -> Self {
        self.window = window;
        self
    }

    pub fn with_scales(mut self, j_min: i32, j_max: i32) -> Self {
        self.j_min = j_min;
        self.j_max = j_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("cube dimension must be positive".into()));
        }
        if self.q == 0 || !self.q.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "quadrature order q = {} must be positive and even",
                self.q
            )));
        }
        if self.j_min > self.j_max {
            return Err(Error::EmptyFamily);
        }
        if !(self.half_width.is_finite() && self.half_width >= 0.0) {
            return Err(Error::InvalidParameter("half width must be finite and >= 0".into()));
        }
        if !(self.base.is_finite() && self.base > 0.0) {
            return Err(Error::NonPositiveScale(self.base));
        }
        if let Some(w) = self.window {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidParameter("window must be finite and >= 0".into()));
            }
        }
        Ok(())
    }

    /// The family mapped by `x -> factor * x`.
    pub fn dilate(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::NonPositiveScale(factor));
        }
        Ok(Self {
            base: self.base * factor,
            half_width: self.half_width * factor,
            ..self.clone()
        })
    }

    pub fn sides(&self) -> Vec<f64> {
        (self.j_min..=self.j_max)
            .map(|j| self.base * 2f64.powi(j))
            .collect()
    }

    /// All cubes, ordered by scale and then lexicographically by center.
    pub fn cubes(&self) -> Vec<Cube> {
        let mut out = Vec::new();
        for side in self.sides() {
            let step = 0.5 * side;
            let mut bound = self.half_width;
            if let Some(w) = self.window {
                bound = bound.min(w * side);
            }
            let kmax = (bound / step + 1e-9).floor() as i64;
            let axis: Vec<f64> = (-kmax..=kmax).map(|k| k as f64 * step).collect();
            for center in tensor_points(&vec![axis; self.n]) {
                out.push(Cube::new(center, side));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.cubes().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
