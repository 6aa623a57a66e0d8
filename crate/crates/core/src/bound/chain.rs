//! The explicit constant `C = (L c_w c_M K^p [W]_{A_p})^{1/p}` for band-limited multipliers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::lattice::{lattice_sum, peetre_constant};
use crate::error::{Error, Result};
use crate::muckenhoupt::{ap_constant_small_p, doubling_report, CubeFamily, DoublingReport};
use crate::spectral::MultiplierSymbol;
use crate::weights::WeightSpec;

/// Tolerance of the lattice sum inside the chain.
pub const LATTICE_TOL: f64 = 1e-10;

/// Warning attached to every chain: the doubling exponent is a sampled lower estimate.
pub const ONE_SIDED_BETA: &str = "one-sided-beta";

/// Inputs of the constant chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainFactors {
    pub n: usize,
    pub p: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub beta: f64,
    pub c_w: f64,
    pub ap: f64,
}

/// The assembled constant and its derived factors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainConstant {
    #[serde(rename = "L")]
    pub l: f64,
    pub c_m: f64,
    /// `(n + beta) / p`; the chain needs `M` above it.
    pub threshold: f64,
    pub c_theory: f64,
}

/// Checks `M > (n + beta)/p` and assembles the constant.
pub fn constant_from_factors(f: &ChainFactors) -> Result<ChainConstant> {
    if !(f.p > 0.0 && f.p <= 1.0) {
        return Err(Error::ExponentOutOfRange(f.p));
    }
    let threshold = (f.n as f64 + f.beta) / f.p;
    if !(f.m > threshold) {
        return Err(Error::HypothesisViolated { m: f.m, threshold });
    }
    let l = lattice_sum(f.n, f.m * f.p - f.beta, LATTICE_TOL)?;
    let c_m = peetre_constant(f.n, f.m, f.p);
    let c_theory = (l * f.c_w * c_m * f.k.powf(f.p) * f.ap).powf(1.0 / f.p);
    Ok(ChainConstant {
        l,
        c_m,
        threshold,
        c_theory,
    })
}

/// The theoretical part of a boundedness report, plus the empirical fields once filled in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundednessReport {
    pub p: f64,
    pub n: usize,
    #[serde(rename = "N")]
    pub dim: usize,
    #[serde(rename = "R")]
    pub radius: f64,
    pub symbol: String,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub beta: f64,
    pub c_w: f64,
    #[serde(rename = "c_M")]
    pub c_m: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub ap: f64,
    pub threshold: f64,
    #[serde(rename = "C_theory")]
    pub c_theory: f64,
    pub ratio_max: Option<f64>,
    pub corpus_size: usize,
    #[serde(rename = "R_sweep")]
    pub r_sweep: Vec<(f64, f64)>,
    pub warnings: Vec<String>,
}

impl BoundednessReport {
    pub fn factors(&self) -> ChainFactors {
        ChainFactors {
            n: self.n,
            p: self.p,
            k: self.k,
            m: self.m,
            beta: self.beta,
            c_w: self.c_w,
            ap: self.ap,
        }
    }
}

/// Weight-side factors: `[W]_{A_p}` and the doubling data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightFactors {
    pub ap: f64,
    pub doubling: DoublingReport,
}

pub fn weight_factors(
    spec: &WeightSpec,
    p: f64,
    cubes: &CubeFamily,
    directions: &[Vec<Complex64>],
) -> Result<WeightFactors> {
    let ap = ap_constant_small_p(spec, p, cubes)?.value;
    let doubling = doubling_report(spec, p, cubes, directions)?;
    Ok(WeightFactors { ap, doubling })
}

/// `C_theory` for `phi`, whose decay fit must already be attached.
pub fn theoretical_constant(
    spec: &WeightSpec,
    phi: &MultiplierSymbol,
    p: f64,
    cubes: &CubeFamily,
    directions: &[Vec<Complex64>],
) -> Result<BoundednessReport> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ExponentOutOfRange(p));
    }
    let w = weight_factors(spec, p, cubes, directions)?;
    report_from_weight_factors(spec, phi, p, &w)
}

/// As [`theoretical_constant`], reusing precomputed weight factors.
pub fn report_from_weight_factors(
    spec: &WeightSpec,
    phi: &MultiplierSymbol,
    p: f64,
    w: &WeightFactors,
) -> Result<BoundednessReport> {
    let fit = phi
        .decay()
        .ok_or_else(|| Error::InvalidParameter("symbol has no decay fit attached".into()))?;
    let factors = ChainFactors {
        n: spec.n,
        p,
        k: fit.k,
        m: fit.m,
        beta: w.doubling.beta,
        c_w: w.doubling.c_w,
        ap: w.ap,
    };
    let c = constant_from_factors(&factors)?;
    Ok(BoundednessReport {
        p,
        n: spec.n,
        dim: spec.dim,
        radius: phi.radius(),
        symbol: phi.label().to_string(),
        k: fit.k,
        m: fit.m,
        beta: factors.beta,
        c_w: factors.c_w,
        c_m: c.c_m,
        l: c.l,
        ap: factors.ap,
        threshold: c.threshold,
        c_theory: c.c_theory,
        ratio_max: None,
        corpus_size: 0,
        r_sweep: Vec::new(),
        warnings: vec![ONE_SIDED_BETA.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn base() -> ChainFactors {
        ChainFactors {
            n: 1,
            p: 1.0,
            k: 2.0,
            m: 3.0,
            beta: 1.0,
            c_w: 1.0,
            ap: 1.0,
        }
    }

    #[test]
    fn assembled_from_independent_factors() {
        let c = constant_from_factors(&base()).unwrap();
        // L(1, 2) = pi^2/3 - 1, c_M = 1.5^3.
        let expect = (PI * PI / 3.0 - 1.0) * 1.5f64.powi(3) * 2.0;
        assert!((c.c_theory - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn linear_in_k_at_p_one() {
        let a = constant_from_factors(&base()).unwrap().c_theory;
        let b = constant_from_factors(&ChainFactors { k: 4.0, ..base() }).unwrap().c_theory;
        assert!((b - 2.0 * a).abs() <= 1e-12 * b);
    }

    #[test]
    fn hypothesis_is_enforced() {
        let e = constant_from_factors(&ChainFactors { m: 2.0, ..base() });
        assert_eq!(e, Err(Error::HypothesisViolated { m: 2.0, threshold: 2.0 }));
        let e = constant_from_factors(&ChainFactors { p: 0.5, m: 3.5, ..base() });
        assert!(matches!(e, Err(Error::HypothesisViolated { .. })));
    }
}
