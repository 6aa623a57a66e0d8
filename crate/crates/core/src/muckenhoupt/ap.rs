//! Estimators of the matrix Muckenhoupt constant `[W]_{A_p}`.
//!
//! Both regimes replace the supremum over all cubes by a maximum over a
//! [`CubeFamily`] and integrals by the tensor midpoint rule. For `p <= 1` the
//! essential supremum over `y` becomes a maximum over the same quadrature
//! nodes, so the estimate is a lower bound for the true constant.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cubes::{Cube, CubeFamily};
use super::kernel::{norm_sq, pow_fast, NodeMatrices};
use crate::error::{Error, Result};
use crate::weights::{weight_root_at, WeightSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `0 < p <= 1`.
    SmallP,
    /// `1 < p < infinity`.
    LargeP,
}

/// The discretization an estimate was computed with.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub q: usize,
    pub j_min: i32,
    pub j_max: i32,
    pub half_width: f64,
    pub window: Option<f64>,
    pub base: f64,
}

impl From<&CubeFamily> for Refinement {
    fn from(f: &CubeFamily) -> Self {
        Self {
            q: f.q,
            j_min: f.j_min,
            j_max: f.j_max,
            half_width: f.half_width,
            window: f.window,
            base: f.base,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApEstimate {
    pub value: f64,
    pub p: f64,
    pub regime: Regime,
    pub argmax_cube: Cube,
    pub refinement: Refinement,
    pub cubes_evaluated: usize,
}

pub(crate) fn check_inputs(spec: &WeightSpec, cubes: &CubeFamily) -> Result<Vec<Cube>> {
    spec.validate()?;
    cubes.validate()?;
    if spec.n != cubes.n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            found: cubes.n,
        });
    }
    let list = cubes.cubes();
    if list.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(list)
}

/// `W^sigma` at each node, packed for the pair kernels.
pub(crate) fn node_roots(spec: &WeightSpec, nodes: &[Vec<f64>], sigma: f64) -> Result<NodeMatrices> {
    let mats = nodes
        .iter()
        .map(|x| weight_root_at(spec, x, sigma))
        .collect::<Result<Vec<_>>>()?;
    Ok(NodeMatrices::pack(&mats))
}

/// First maximum of the per-cube values; ties keep the earlier cube.
fn reduce(
    values: Vec<Result<f64>>,
    list: Vec<Cube>,
    p: f64,
    regime: Regime,
    cubes: &CubeFamily,
) -> Result<ApEstimate> {
    let mut best = f64::NEG_INFINITY;
    let mut arg = 0;
    for (i, v) in values.into_iter().enumerate() {
        let v = v?;
        if v > best {
            best = v;
            arg = i;
        }
    }
    let cubes_evaluated = list.len();
    Ok(ApEstimate {
        value: best,
        p,
        regime,
        argmax_cube: list.into_iter().nth(arg).expect("nonempty family"),
        refinement: cubes.into(),
        cubes_evaluated,
    })
}

/// `max_y mean_t ||W^{1/p}(t) W^{-1/p}(y)||^p` over the nodes of one cube.
fn small_p_cube(spec: &WeightSpec, p: f64, cube: &Cube, q: usize) -> Result<f64> {
    let nodes = cube.nodes(q);
    let a = node_roots(spec, &nodes, 1.0 / p)?;
    let b = node_roots(spec, &nodes, -1.0 / p)?;
    let k = nodes.len();
    let e = 0.5 * p;
    let mut best = 0.0_f64;
    for y in 0..k {
        let mut s = 0.0;
        for t in 0..k {
            s += pow_fast(norm_sq(&a, t, &b, y), e);
        }
        best = best.max(s);
    }
    Ok(best / k as f64)
}

/// `mean_x ( mean_t ||W^{1/p}(x) W^{-1/p}(t)||^{p'} )^{p/p'}` over one cube.
fn large_p_cube(spec: &WeightSpec, p: f64, cube: &Cube, q: usize) -> Result<f64> {
    let nodes = cube.nodes(q);
    let a = node_roots(spec, &nodes, 1.0 / p)?;
    let b = node_roots(spec, &nodes, -1.0 / p)?;
    let k = nodes.len();
    let dual = p / (p - 1.0);
    let inner_e = 0.5 * dual;
    let outer_e = p / dual;
    let mut acc = 0.0;
    for x in 0..k {
        let mut s = 0.0;
        for t in 0..k {
            s += pow_fast(norm_sq(&a, x, &b, t), inner_e);
        }
        acc += pow_fast(s / k as f64, outer_e);
    }
    Ok(acc / k as f64)
}

/// `[W]_{A_p}` for `0 < p <= 1`.
pub fn ap_constant_small_p(spec: &WeightSpec, p: f64, cubes: &CubeFamily) -> Result<ApEstimate> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ExponentOutOfRange(p));
    }
    let list = check_inputs(spec, cubes)?;
    let values: Vec<Result<f64>> = list
        .par_iter()
        .map(|c| small_p_cube(spec, p, c, cubes.q))
        .collect();
    reduce(values, list, p, Regime::SmallP, cubes)
}

/// `[W]_{A_p}` for `1 < p < infinity`.
pub fn ap_constant_large_p(spec: &WeightSpec, p: f64, cubes: &CubeFamily) -> Result<ApEstimate> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::ExponentOutOfRange(p));
    }
    let list = check_inputs(spec, cubes)?;
    let values: Vec<Result<f64>> = list
        .par_iter()
        .map(|c| large_p_cube(spec, p, c, cubes.q))
        .collect();
    reduce(values, list, p, Regime::LargeP, cubes)
}

/// Dispatches on the regime of `p`.
pub fn ap_constant(spec: &WeightSpec, p: f64, cubes: &CubeFamily) -> Result<ApEstimate> {
    if p > 1.0 {
        ap_constant_large_p(spec, p, cubes)
    } else {
        ap_constant_small_p(spec, p, cubes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::dilate_weight;

    fn small_family(n: usize) -> CubeFamily {
        CubeFamily::new(n, -3, 2, 4.0, if n == 1 { 16 } else { 6 })
            .unwrap()
            .with_window(Some(2.0))
    }

    #[test]
    fn identity_is_exactly_one() {
        for n in 1..=2 {
            let id = WeightSpec::identity(n, 2);
            let fam = small_family(n);
            assert_eq!(ap_constant_small_p(&id, 1.0, &fam).unwrap().value, 1.0);
            assert_eq!(ap_constant_small_p(&id, 0.5, &fam).unwrap().value, 1.0);
            assert_eq!(ap_constant_large_p(&id, 2.0, &fam).unwrap().value, 1.0);
        }
    }

    #[test]
    fn exponent_ranges_are_enforced() {
        let id = WeightSpec::identity(1, 1);
        let fam = small_family(1);
        assert_eq!(ap_constant_small_p(&id, 1.5, &fam), Err(Error::ExponentOutOfRange(1.5)));
        assert_eq!(ap_constant_small_p(&id, 0.0, &fam), Err(Error::ExponentOutOfRange(0.0)));
        assert_eq!(ap_constant_large_p(&id, 1.0, &fam), Err(Error::ExponentOutOfRange(1.0)));
    }

    #[test]
    fn empty_family_is_an_error() {
        let id = WeightSpec::identity(1, 1);
        let mut fam = small_family(1);
        fam.j_min = 3;
        fam.j_max = 2;
        assert_eq!(ap_constant_small_p(&id, 1.0, &fam), Err(Error::EmptyFamily));
    }

    #[test]
    fn dilation_with_matched_family_is_invariant() {
        let specs = [
            WeightSpec::scalar_power(1, 1, -0.5),
            WeightSpec::diagonal_power(1, vec![-0.5, -0.1]),
            WeightSpec::random_conjugated(1, 2, 3),
        ];
        let fam = small_family(1);
        for spec in &specs {
            let base = ap_constant_small_p(spec, 1.0, &fam).unwrap().value;
            let d = dilate_weight(spec, 2.0).unwrap();
            let v = ap_constant_small_p(&d, 1.0, &fam.dilate(0.5).unwrap()).unwrap().value;
            assert!((v - base).abs() <= 1e-12 * base);
        }
    }

    #[test]
    fn lower_bound_of_one() {
        let fam = small_family(1);
        for spec in [
            WeightSpec::scalar_power(1, 1, -0.25),
            WeightSpec::diagonal_power(1, vec![-0.5, 0.0, -0.3]),
            WeightSpec::random_conjugated(1, 3, 11),
        ] {
            assert!(ap_constant_small_p(&spec, 0.5, &fam).unwrap().value >= 1.0 - 1e-9);
            assert!(ap_constant_large_p(&spec, 3.0, &fam).unwrap().value >= 1.0 - 1e-9);
        }
    }
}
