//! Scalar reductions `w_x(t) = |W^{1/p}(t) x|^p` and their doubling data.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ap::{check_inputs, node_roots};
use super::cubes::{tensor_points, Cube, CubeFamily};
use super::kernel::{pow_fast, NodeMatrices};
use crate::error::{Error, Result};
use crate::rng::{substream, unit_vector};
use crate::weights::{weight_root_at, WeightSpec};

const UNIT_TOL: f64 = 1e-12;

fn check_direction(spec: &WeightSpec, x: &[Complex64]) -> Result<()> {
    if x.len() != spec.dim {
        return Err(Error::DimensionMismatch {
            expected: spec.dim,
            found: x.len(),
        });
    }
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !((norm - 1.0).abs() <= UNIT_TOL) {
        return Err(Error::InvalidParameter(format!(
            "direction has norm {norm}, expected a unit vector"
        )));
    }
    Ok(())
}

/// The scalar weight `t -> |W^{1/p}(t) x|^p` for a fixed unit vector `x`.
#[derive(Clone, Debug)]
pub struct ScalarReduction {
    spec: WeightSpec,
    p: f64,
    direction: Vec<Complex64>,
}

impl ScalarReduction {
    pub fn eval(&self, t: &[f64]) -> Result<f64> {
        let a = weight_root_at(&self.spec, t, 1.0 / self.p)?;
        let v = a.apply(&self.direction);
        let sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        Ok(sq.powf(0.5 * self.p))
    }

    pub fn direction(&self) -> &[Complex64] {
        &self.direction
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

pub fn scalar_reduction(spec: &WeightSpec, p: f64, x: &[Complex64]) -> Result<ScalarReduction> {
    spec.validate()?;
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::ExponentOutOfRange(p));
    }
    check_direction(spec, x)?;
    Ok(ScalarReduction {
        spec: spec.clone(),
        p,
        direction: x.to_vec(),
    })
}

/// The `N` coordinate vectors followed by `2 N^2` seeded random unit vectors.
pub fn default_directions(dim: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = (0..dim)
        .map(|i| {
            let mut e = vec![Complex64::new(0.0, 0.0); dim];
            e[i] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    if dim > 1 {
        let mut rng = substream(seed, "directions");
        out.extend((0..2 * dim * dim).map(|_| unit_vector(&mut rng, dim)));
    }
    out
}

/// Lattice half-width used for the cross-cube constant: 8, 4 and 2 cells in
/// one, two and higher dimensions.
pub fn default_lattice_radius(n: usize) -> usize {
    match n {
        1 => 8,
        2 => 4,
        _ => 2,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoublingReport {
    #[serde(rename = "C_dbl")]
    pub c_dbl: f64,
    pub beta: f64,
    pub c_w: f64,
    pub directions_tested: usize,
    pub worst_direction: Vec<Complex64>,
    pub worst_cube: Cube,
    pub lattice_radius: usize,
    /// Largest scalar `A_1` constant of the reductions `w_x`; only for `p <= 1`.
    pub scalar_a1_max: Option<f64>,
}

/// Quadrature means of `w_x` over the nodes of one cube, one per direction.
/// Also returns the node minima, used for the scalar `A_1` constant.
fn cube_means(
    roots: &NodeMatrices,
    directions: &[Vec<Complex64>],
    p: f64,
    cube: &Cube,
) -> Result<Vec<(f64, f64)>> {
    let k = roots.len();
    let e = 0.5 * p;
    directions
        .iter()
        .map(|x| {
            let mut sum = 0.0;
            let mut min = f64::INFINITY;
            for i in 0..k {
                let w = pow_fast(roots.quad_norm_sq(i, x), e);
                sum += w;
                min = min.min(w);
            }
            let mean = sum / k as f64;
            if !(mean > 0.0) || !mean.is_finite() {
                return Err(Error::ZeroMass {
                    center: cube.center.clone(),
                    side: cube.side,
                });
            }
            Ok((mean, min))
        })
        .collect()
}

struct CubeDoubling {
    ratio: f64,
    direction: usize,
    a1: f64,
}

fn doubling_in_cube(
    spec: &WeightSpec,
    p: f64,
    cube: &Cube,
    q: usize,
    directions: &[Vec<Complex64>],
) -> Result<CubeDoubling> {
    let small = node_roots(spec, &cube.nodes(q), 1.0 / p)?;
    let big_cube = cube.doubled();
    let big = node_roots(spec, &big_cube.nodes(q), 1.0 / p)?;
    let ms = cube_means(&small, directions, p, cube)?;
    let mb = cube_means(&big, directions, p, &big_cube)?;
    let scale = 2f64.powi(cube.dim() as i32);
    let mut out = CubeDoubling {
        ratio: f64::NEG_INFINITY,
        direction: 0,
        a1: 0.0,
    };
    for (d, ((s, smin), (b, _))) in ms.iter().zip(&mb).enumerate() {
        let r = scale * b / s;
        if r > out.ratio {
            out.ratio = r;
            out.direction = d;
        }
        out.a1 = out.a1.max(s / smin);
    }
    Ok(out)
}

/// `max (1 + |k - l|)^{-beta} I_k / I_l` over unit cells `Q(base k, base)`
/// with `|k_i|, |l_i| <= radius`.
fn cross_cube_constant(
    spec: &WeightSpec,
    p: f64,
    base: f64,
    q: usize,
    radius: usize,
    beta: f64,
    directions: &[Vec<Complex64>],
) -> Result<f64> {
    let r = radius as i64;
    let axis: Vec<f64> = (-r..=r).map(|k| k as f64).collect();
    let lattice = tensor_points(&vec![axis; spec.n]);
    let means: Vec<Vec<(f64, f64)>> = lattice
        .par_iter()
        .map(|k| {
            let cube = Cube::new(k.iter().map(|v| v * base).collect(), base);
            let roots = node_roots(spec, &cube.nodes(q), 1.0 / p)?;
            cube_means(&roots, directions, p, &cube)
        })
        .collect::<Result<_>>()?;
    let mut best = 0.0_f64;
    for (i, k) in lattice.iter().enumerate() {
        for (j, l) in lattice.iter().enumerate() {
            let dist = k
                .iter()
                .zip(l)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let penalty = (1.0 + dist).powf(beta);
            for (a, b) in means[i].iter().zip(&means[j]) {
                best = best.max(a.0 / (penalty * b.0));
            }
        }
    }
    Ok(best)
}

/// Doubling constant, doubling exponent and cross-cube constant of the
/// reductions `w_x` over the given directions, with the default lattice radius.
pub fn doubling_report(
    spec: &WeightSpec,
    p: f64,
    cubes: &CubeFamily,
    directions: &[Vec<Complex64>],
) -> Result<DoublingReport> {
    doubling_report_with_radius(spec, p, cubes, directions, default_lattice_radius(spec.n))
}

pub fn doubling_report_with_radius(
    spec: &WeightSpec,
    p: f64,
    cubes: &CubeFamily,
    directions: &[Vec<Complex64>],
    lattice_radius: usize,
) -> Result<DoublingReport> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::ExponentOutOfRange(p));
    }
    let list = check_inputs(spec, cubes)?;
    if directions.is_empty() {
        return Err(Error::InvalidParameter("direction set is empty".into()));
    }
    for x in directions {
        check_direction(spec, x)?;
    }
    let per_cube: Vec<Result<CubeDoubling>> = list
        .par_iter()
        .map(|c| doubling_in_cube(spec, p, c, cubes.q, directions))
        .collect();
    let mut best = CubeDoubling {
        ratio: f64::NEG_INFINITY,
        direction: 0,
        a1: 0.0,
    };
    let mut arg = 0;
    for (i, r) in per_cube.into_iter().enumerate() {
        let r = r?;
        if r.ratio > best.ratio {
            best.ratio = r.ratio;
            best.direction = r.direction;
            arg = i;
        }
        best.a1 = best.a1.max(r.a1);
    }
    let c_dbl = best.ratio;
    let beta = c_dbl.log2();
    let c_w = cross_cube_constant(spec, p, cubes.base, cubes.q, lattice_radius, beta, directions)?;
    Ok(DoublingReport {
        c_dbl,
        beta,
        c_w,
        directions_tested: directions.len(),
        worst_direction: directions[best.direction].clone(),
        worst_cube: list[arg].clone(),
        lattice_radius,
        scalar_a1_max: (p <= 1.0).then_some(best.a1),
    })
}
