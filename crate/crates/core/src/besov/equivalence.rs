//! Comparing Besov norms built from two admissible partitions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::norm::{BesovEvaluator, BesovParams};
use super::partition::{fit_with_scale, DyadicPartition};
use crate::bound::{constant_from_factors, ChainFactors, WeightFactors};
use crate::error::{Error, Result};
use crate::spectral::{SampledVectorField, TorusGrid};

/// Index sets `A_j = {k : [c1 2^j, c2 2^j) meets [c1' 2^k, c2' 2^k)}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapSets {
    /// `(j, A_j)` for each `j` of the first partition, `k` restricted to the second's range.
    pub sets: Vec<(i32, Vec<i32>)>,
    /// `max_j #A_j`.
    pub n0: usize,
    /// `max_k #{j : k in A_j}`.
    pub m0: usize,
    /// `j` whose set was cut by the end of the second range (possibly to nothing).
    pub boundary: Vec<i32>,
    /// Whether `#A_j` is the same for every `j` away from the boundary.
    pub uniform: bool,
}

fn meets(a: &DyadicPartition, j: i32, b: &DyadicPartition, k: i32) -> bool {
    let (alo, ahi) = (a.c1 * 2f64.powi(j), a.c2 * 2f64.powi(j));
    let (blo, bhi) = (b.c1 * 2f64.powi(k), b.c2 * 2f64.powi(k));
    alo.max(blo) < ahi.min(bhi)
}

pub fn overlap_sets(psi: &DyadicPartition, phi: &DyadicPartition) -> OverlapSets {
    let mut sets = Vec::new();
    let mut boundary = Vec::new();
    let mut interior_sizes = Vec::new();
    for j in psi.js() {
        // Supports have ratio at most 4, so overlaps are within a few indices.
        let all: Vec<i32> = (j - 8 + phi_shift(psi, phi)..=j + 8 + phi_shift(psi, phi))
            .filter(|&k| meets(psi, j, phi, k))
            .collect();
        let kept: Vec<i32> = all.iter().copied().filter(|k| phi.js().contains(k)).collect();
        if kept.len() != all.len() {
            boundary.push(j);
        } else {
            interior_sizes.push(kept.len());
        }
        sets.push((j, kept));
    }
    let n0 = sets.iter().map(|(_, a)| a.len()).max().unwrap_or(0);
    let m0 = phi
        .js()
        .map(|k| sets.iter().filter(|(_, a)| a.contains(&k)).count())
        .max()
        .unwrap_or(0);
    let uniform = interior_sizes.windows(2).all(|w| w[0] == w[1]);
    OverlapSets {
        sets,
        n0,
        m0,
        boundary,
        uniform,
    }
}

/// Index offset between the two families, `log2(c1 / c1')` rounded.
fn phi_shift(psi: &DyadicPartition, phi: &DyadicPartition) -> i32 {
    (psi.c1 / phi.c1).log2().round() as i32
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceSummary {
    /// `||f||_{Psi} / ||f||_{Phi}` per corpus member.
    pub ratios: Vec<f64>,
    pub r_min: f64,
    pub r_max: f64,
    /// Corpus members with spectral mass outside either covered interior.
    pub truncated: Vec<usize>,
}

/// Besov norm ratios over the corpus.
pub fn equivalence_experiment(
    corpus: &[SampledVectorField],
    params: &BesovParams,
    psi: &DyadicPartition,
    phi: &DyadicPartition,
) -> Result<EquivalenceSummary> {
    let first = corpus
        .first()
        .ok_or_else(|| Error::InvalidParameter("corpus is empty".into()))?;
    let a = BesovEvaluator::new(first.grid(), params, psi)?;
    let b = BesovEvaluator::new(first.grid(), params, phi)?;
    let rows: Vec<Result<(f64, bool)>> = corpus
        .par_iter()
        .map(|f| {
            let na = a.norm(f)?;
            let nb = b.norm(f)?;
            if na.value == 0.0 || nb.value == 0.0 {
                return Err(Error::ZeroNorm);
            }
            Ok((na.value / nb.value, na.truncation.is_some() || nb.truncation.is_some()))
        })
        .collect();
    let mut ratios = Vec::with_capacity(rows.len());
    let mut truncated = Vec::new();
    for (i, r) in rows.into_iter().enumerate() {
        let (v, t) = r?;
        ratios.push(v);
        if t {
            truncated.push(i);
        }
    }
    let r_min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let r_max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(EquivalenceSummary {
        ratios,
        r_min,
        r_max,
        truncated,
    })
}

/// One direction `||f||_{target} <= C ||f||_{source}` of the equivalence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectedConstant {
    pub overlap: OverlapSets,
    /// `(j, R_j, K_j, C_j)`: band radius, kernel constant and multiplier constant per `j`.
    pub per_j: Vec<(i32, f64, f64, f64)>,
    /// `max_{k in A_j} 2^{(j-k)s}`, maximized over `j`.
    pub smoothness_factor: f64,
    pub value: f64,
}

/// `C` with `||f||_{target} <= C ||f||_{source}`.
///
/// Each `psi_j(D) f = sum_{k in A_j} psi_j(D) phi_k(D) f` is bounded with the
/// multiplier constant of `psi_j` at band radius `R_j`, the largest outer
/// radius among `psi_j` and the `phi_k`, `k in A_j`. The `L^p` quasi-triangle
/// inequality contributes `n0^{1/p - 1}` for `p < 1`, and regrouping the
/// `l^q` sum contributes `n0^{1 - 1/q} m0^{1/q}` (`n0` for `q = inf`).
pub fn directed_constant(
    target: &DyadicPartition,
    source: &DyadicPartition,
    params: &BesovParams,
    m_exp: f64,
    weight: &WeightFactors,
    grid: &TorusGrid,
) -> Result<DirectedConstant> {
    params.validate()?;
    let p = params.p;
    if p > 1.0 {
        return Err(Error::ExponentOutOfRange(p));
    }
    let overlap = overlap_sets(target, source);
    let mut per_j = Vec::new();
    let mut worst = 0.0_f64;
    let mut smoothness_factor = 0.0_f64;
    for (j, set) in &overlap.sets {
        if set.is_empty() {
            continue;
        }
        let radius = set
            .iter()
            .map(|&k| source.outer_radius(k))
            .fold(target.outer_radius(*j), f64::max);
        let sym = target.symbol(*j, grid, radius)?;
        let k_j = fit_with_scale(&sym, radius, m_exp, grid)?;
        let c_j = constant_from_factors(&ChainFactors {
            n: grid.n,
            p,
            k: k_j,
            m: m_exp,
            beta: weight.doubling.beta,
            c_w: weight.doubling.c_w,
            ap: weight.ap,
        })?
        .c_theory;
        let s_j = set
            .iter()
            .map(|&k| 2f64.powf((j - k) as f64 * params.s))
            .fold(0.0, f64::max);
        smoothness_factor = smoothness_factor.max(s_j);
        worst = worst.max(c_j * s_j);
        per_j.push((*j, radius, k_j, c_j));
    }
    let n0 = overlap.n0 as f64;
    let m0 = overlap.m0 as f64;
    let lp = n0.powf((1.0 / p - 1.0).max(0.0));
    let lq = if params.q.is_infinite() {
        n0
    } else {
        n0.powf((1.0 - 1.0 / params.q).max(0.0)) * m0.powf(1.0 / params.q)
    };
    Ok(DirectedConstant {
        overlap,
        per_j,
        smoothness_factor,
        value: worst * lp * lq,
    })
}

/// Both directions and `C_equiv = C_{Psi <- Phi} C_{Phi <- Psi}`, which bounds `r_max / r_min`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceConstant {
    pub psi_from_phi: DirectedConstant,
    pub phi_from_psi: DirectedConstant,
    #[serde(rename = "C_equiv")]
    pub c_equiv: f64,
}

pub fn equivalence_constant(
    psi: &DyadicPartition,
    phi: &DyadicPartition,
    params: &BesovParams,
    m_exp: f64,
    weight: &WeightFactors,
    grid: &TorusGrid,
) -> Result<EquivalenceConstant> {
    let a = directed_constant(psi, phi, params, m_exp, weight, grid)?;
    let b = directed_constant(phi, psi, params, m_exp, weight, grid)?;
    let c_equiv = a.value * b.value;
    Ok(EquivalenceConstant {
        psi_from_phi: a,
        phi_from_psi: b,
        c_equiv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::besov::{make_partition, BumpProfile};

    fn smooth() -> BumpProfile {
        BumpProfile::SmoothExp { shape: 1.0 }
    }

    #[test]
    fn self_overlap_has_three_neighbours() {
        let p = make_partition(0.5, 2.0, (-5, 5), smooth()).unwrap();
        let o = overlap_sets(&p, &p);
        assert_eq!(o.n0, 3);
        assert!(o.uniform);
        assert_eq!(o.boundary, vec![-5, 5]);
        for (j, a) in &o.sets {
            if !o.boundary.contains(j) {
                assert_eq!(a, &vec![j - 1, *j, j + 1]);
            }
        }
    }

    #[test]
    fn shifted_variant_has_four() {
        let p = make_partition(0.5, 2.0, (-5, 5), smooth()).unwrap();
        let q = make_partition(0.5f64.sqrt(), 8f64.sqrt(), (-5, 5), smooth()).unwrap();
        let o = overlap_sets(&p, &q);
        assert_eq!(o.n0, 4);
        let (j, a) = &o.sets[5];
        assert_eq!(*j, 0);
        assert_eq!(a, &vec![-2, -1, 0, 1]);
    }

    #[test]
    fn dilated_partition_shifts_indices() {
        let p = make_partition(0.5, 2.0, (-5, 5), smooth()).unwrap();
        let d = make_partition(1.0, 4.0, (-6, 4), smooth()).unwrap();
        let o = overlap_sets(&p, &d);
        assert_eq!(o.n0, 3);
        let (j, a) = &o.sets[5];
        assert_eq!(a, &vec![j - 2, j - 1, *j]);
    }

    #[test]
    fn disjoint_ranges_are_flagged() {
        let p = make_partition(0.5, 2.0, (0, 2), smooth()).unwrap();
        let q = make_partition(0.5, 2.0, (10, 12), smooth()).unwrap();
        let o = overlap_sets(&p, &q);
        assert!(o.sets.iter().all(|(_, a)| a.is_empty()));
        assert_eq!(o.boundary, vec![0, 1, 2]);
    }
}
