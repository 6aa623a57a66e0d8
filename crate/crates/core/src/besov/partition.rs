//! Dyadic partitions of unity `psi_j(xi) = psi_0(2^{-j} xi)` on `R^n \ {0}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{euclidean, MultiplierSymbol, TorusGrid};

/// Radial bump `b(u)` on `0 < u < 1`, where `u = (|xi| - c1) / (c2 - c1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "kebab-case")]
pub enum BumpProfile {
    /// `exp(-shape / (u (1 - u)))`, smooth.
    SmoothExp { shape: f64 },
    /// `(4 u (1 - u))^order`, `order - 1` times continuously differentiable at the ends.
    Polynomial { order: u32 },
    /// `1 - |2u - 1|`, only continuous.
    PiecewiseLinear,
}

impl BumpProfile {
    pub fn eval(&self, u: f64) -> f64 {
        if !(u > 0.0 && u < 1.0) {
            return 0.0;
        }
        match *self {
            BumpProfile::SmoothExp { shape } => (-shape / (u * (1.0 - u))).exp(),
            BumpProfile::Polynomial { order } => (4.0 * u * (1.0 - u)).powi(order as i32),
            BumpProfile::PiecewiseLinear => 1.0 - (2.0 * u - 1.0).abs(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            BumpProfile::SmoothExp { shape } => format!("smooth-exp({shape})"),
            BumpProfile::Polynomial { order } => format!("polynomial({order})"),
            BumpProfile::PiecewiseLinear => "piecewise-linear".into(),
        }
    }
}

/// A partition `{psi_j}` restricted to `j in [j_lo, j_hi]`, with
/// `supp psi_j` inside the annulus `c1 2^j <= |xi| < c2 2^j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DyadicPartition {
    pub j_lo: i32,
    pub j_hi: i32,
    pub c1: f64,
    pub c2: f64,
    #[serde(flatten)]
    pub profile: BumpProfile,
}

/// Builds and validates a partition.
///
/// The bump vanishes at both ends of its interval, so with `c2 = 2 c1` the
/// radii `c1 2^j` would be covered by no annulus; `c2` must exceed `2 c1`.
pub fn make_partition(c1: f64, c2: f64, j_range: (i32, i32), profile: BumpProfile) -> Result<DyadicPartition> {
    let part = DyadicPartition {
        j_lo: j_range.0,
        j_hi: j_range.1,
        c1,
        c2,
        profile,
    };
    part.validate()?;
    Ok(part)
}

impl DyadicPartition {
    pub fn validate(&self) -> Result<()> {
        if !(self.c1 > 0.0 && self.c1.is_finite() && self.c2 > self.c1 && self.c2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < c1 < c2, got c1 = {}, c2 = {}",
                self.c1, self.c2
            )));
        }
        if self.c2 <= 2.0 * self.c1 {
            return Err(Error::CoverageGap { c1: self.c1, c2: self.c2 });
        }
        if self.c2 > 4.0 * self.c1 {
            return Err(Error::InvalidParameter(format!(
                "need c2 <= 4 c1, got c1 = {}, c2 = {}",
                self.c1, self.c2
            )));
        }
        if self.j_lo > self.j_hi {
            return Err(Error::InvalidParameter("empty j range".into()));
        }
        let mid = self.profile.eval(0.5);
        let valid_params = match self.profile {
            BumpProfile::SmoothExp { shape } => shape > 0.0 && shape.is_finite(),
            BumpProfile::Polynomial { order } => order > 0,
            BumpProfile::PiecewiseLinear => true,
        };
        if !valid_params || !(mid > 0.0 && mid.is_finite()) {
            return Err(Error::DegenerateBump);
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("({}, {}) {}", self.c1, self.c2, self.profile.label())
    }

    /// `h(r)`, the unnormalized bump at radius `r`.
    pub fn bump(&self, r: f64) -> f64 {
        self.profile.eval((r - self.c1) / (self.c2 - self.c1))
    }

    /// `psi_0(r) = h(r) / sum_{k in Z} h(2^{-k} r)`.
    pub fn psi0(&self, r: f64) -> f64 {
        let h = self.bump(r);
        if h == 0.0 {
            return 0.0;
        }
        // Nonzero terms need c1 < 2^{-k} r < c2.
        let k_lo = (r / self.c2).log2().floor() as i32;
        let k_hi = (r / self.c1).log2().ceil() as i32;
        let total: f64 = (k_lo..=k_hi).map(|k| self.bump(r * 2f64.powi(-k))).sum();
        h / total
    }

    /// `psi_j(r) = psi_0(2^{-j} r)`.
    pub fn psi(&self, j: i32, r: f64) -> f64 {
        self.psi0(r * 2f64.powi(-j))
    }

    pub fn js(&self) -> std::ops::RangeInclusive<i32> {
        self.j_lo..=self.j_hi
    }

    /// Radii on which the finite family sums to one: `[c1 2^{j_lo+1}, c2 2^{j_hi-1}]`.
    pub fn covered_interior(&self) -> (f64, f64) {
        (self.c1 * 2f64.powi(self.j_lo + 1), self.c2 * 2f64.powi(self.j_hi - 1))
    }

    /// Outer support radius `c2 2^j`.
    pub fn outer_radius(&self, j: i32) -> f64 {
        self.c2 * 2f64.powi(j)
    }

    /// `psi_j` as a multiplier on `grid`, with decay scale `scale`.
    pub fn symbol(&self, j: i32, grid: &TorusGrid, scale: f64) -> Result<MultiplierSymbol> {
        let part = self.clone();
        let outer = self.outer_radius(j);
        let sym = MultiplierSymbol::from_fn(grid, scale.max(outer), format!("psi_{j} {}", self.label()), move |xi| {
            num_complex::Complex64::new(part.psi(j, euclidean(xi)), 0.0)
        })?;
        Ok(sym)
    }

    /// `psi_j(xi_k)` at every spectral index of `grid`, for each `j`.
    pub fn samples(&self, grid: &TorusGrid) -> Vec<Vec<f64>> {
        let radii: Vec<f64> = (0..grid.len()).map(|k| euclidean(&grid.frequency(k))).collect();
        self.js()
            .map(|j| radii.iter().map(|&r| self.psi(j, r)).collect())
            .collect()
    }
}

/// Fitted kernel constants `|F^{-1} psi_j(x)| <= K_j 2^{jn} (1 + 2^j |x|)^{-M}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionDecay {
    #[serde(rename = "M")]
    pub m: f64,
    /// `(j, K_j)`.
    pub per_j: Vec<(i32, f64)>,
    /// `max_j K_j`.
    pub decay_c: f64,
    /// `max_j K_j / min_j K_j - 1`.
    pub spread: f64,
}

/// Fits `K_j` for every `j` on `grid`; each fit is repeated on the grid with
/// doubled period and a fit that grows by more than the divergence factor fails.
pub fn partition_decay_check(part: &DyadicPartition, m_exp: f64, grid: &TorusGrid) -> Result<PartitionDecay> {
    part.validate()?;
    let mut per_j = Vec::new();
    for j in part.js() {
        let scale = 2f64.powi(j);
        let sym = MultiplierSymbol::from_fn(grid, part.outer_radius(j), "psi_j", {
            let part = part.clone();
            move |xi| num_complex::Complex64::new(part.psi(j, euclidean(xi)), 0.0)
        })?;
        let fit = fit_with_scale(&sym, scale, m_exp, grid)?;
        per_j.push((j, fit));
    }
    let max = per_j.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let min = per_j.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    Ok(PartitionDecay {
        m: m_exp,
        per_j,
        decay_c: max,
        spread: max / min - 1.0,
    })
}

/// `K` at decay scale `scale`, checked against the doubled-period grid.
pub(crate) fn fit_with_scale(sym: &MultiplierSymbol, scale: f64, m_exp: f64, grid: &TorusGrid) -> Result<f64> {
    let k = kernel_constant(sym.kernel(), grid, scale, m_exp);
    let big = grid.doubled_period();
    let k2 = kernel_constant(sym.on_grid(&big)?.kernel(), &big, scale, m_exp);
    let growth = k2 / k;
    if !(growth <= crate::spectral::DIVERGENCE_GROWTH) {
        return Err(Error::DivergentFit { exponent: m_exp, growth });
    }
    Ok(k)
}

fn kernel_constant(kernel: &[num_complex::Complex64], grid: &TorusGrid, scale: f64, m_exp: f64) -> f64 {
    let sn = scale.powi(grid.n as i32);
    kernel
        .iter()
        .enumerate()
        .map(|(j, v)| v.norm() * (1.0 + scale * euclidean(&grid.node(j))).powf(m_exp) / sn)
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard() -> DyadicPartition {
        make_partition(0.5, 2.0, (-5, 5), BumpProfile::SmoothExp { shape: 1.0 }).unwrap()
    }

    #[test]
    fn sums_to_one_on_the_interior() {
        for part in [
            make_partition(0.75, 2.5, (-5, 5), BumpProfile::SmoothExp { shape: 1.0 }).unwrap(),
            make_partition(0.5f64.sqrt(), 8f64.sqrt(), (-5, 5), BumpProfile::Polynomial { order: 6 }).unwrap(),
            standard(),
        ] {
            let (lo, hi) = part.covered_interior();
            for i in 0..=2000 {
                let r = lo * (hi / lo).powf(i as f64 / 2000.0);
                let s: f64 = part.js().map(|j| part.psi(j, r)).sum();
                assert!((s - 1.0).abs() <= 1e-10, "{r} {s}");
            }
        }
    }

    #[test]
    fn support_edges_vanish() {
        let part = make_partition(0.75, 2.5, (-5, 5), BumpProfile::SmoothExp { shape: 1.0 }).unwrap();
        for j in -3..3 {
            assert_eq!(part.psi(j, part.outer_radius(j)), 0.0);
            assert_eq!(part.psi(j, part.c1 * 2f64.powi(j)), 0.0);
            assert_eq!(part.psi(j, 2.0 * 2f64.powi(j)), part.psi0(2.0));
        }
    }

    #[test]
    fn coverage_and_degeneracy_errors() {
        let smooth = BumpProfile::SmoothExp { shape: 1.0 };
        assert_eq!(make_partition(1.0, 1.5, (0, 1), smooth), Err(Error::CoverageGap { c1: 1.0, c2: 1.5 }));
        assert_eq!(make_partition(1.0, 2.0, (0, 1), smooth), Err(Error::CoverageGap { c1: 1.0, c2: 2.0 }));
        assert!(make_partition(1.0, 5.0, (0, 1), smooth).is_err());
        assert_eq!(
            make_partition(1.0, 3.0, (0, 1), BumpProfile::SmoothExp { shape: 1e4 }),
            Err(Error::DegenerateBump)
        );
        assert_eq!(
            make_partition(1.0, 3.0, (0, 1), BumpProfile::Polynomial { order: 0 }),
            Err(Error::DegenerateBump)
        );
    }
}
