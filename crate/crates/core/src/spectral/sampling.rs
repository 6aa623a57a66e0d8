//! Lattice sampling representation of `phi(D) f` for fields with band radius at most 1.
//!
//! For `f` and `phi` band-limited to the unit ball and any offset `u`,
//!
//! ```text
//! phi(D) f (t) = sum_l f(l + u) kappa(t - u - l),   kappa = (2 pi)^{-n/2} F^{-1} phi,
//! ```
//!
//! the sum running over the integer points of the torus. The factor
//! `(2 pi)^{-n/2}` comes from `F(g * f) = (2 pi)^{n/2} Fg Ff` under the
//! symmetric normalization. On the torus the identity holds up to roundoff
//! since both spectra sit well inside `(-pi, pi)^n`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::field::SampledVectorField;
use super::symbol::MultiplierSymbol;
use super::synth::bandlimit_check;
use crate::error::{Error, Result};

const BAND_TOL: f64 = 1e-10;

/// Node offsets of `u` per axis, if `u` is grid-aligned and in `[-1/2, 1/2)^n`.
fn offset_steps(f: &SampledVectorField, u: &[f64]) -> Result<Vec<i64>> {
    let g = f.grid();
    if u.len() != g.n {
        return Err(Error::DimensionMismatch {
            expected: g.n,
            found: u.len(),
        });
    }
    let mut steps = Vec::with_capacity(u.len());
    for &ui in u {
        let s = ui / g.h();
        let r = s.round();
        if !(-0.5..0.5).contains(&ui) || (s - r).abs() > 1e-9 {
            return Err(Error::OffsetNotOnGrid(u.to_vec()));
        }
        steps.push(r as i64);
    }
    Ok(steps)
}

fn check_bands(phi: &MultiplierSymbol, f: &SampledVectorField) -> Result<()> {
    if phi.grid() != f.grid() {
        return Err(Error::GridMismatch);
    }
    if phi.radius() > 1.0 {
        return Err(Error::BandTooLarge(phi.radius()));
    }
    match f.band_radius() {
        Some(b) if b > 1.0 => Err(Error::BandTooLarge(b)),
        Some(_) => Ok(()),
        None => {
            let check = bandlimit_check(f, 1.0, BAND_TOL);
            if check.passed {
                Ok(())
            } else {
                Err(Error::BandTooLarge(f64::INFINITY))
            }
        }
    }
}

/// Per-axis node steps of the integer points `l` of the torus.
fn lattice_steps(f: &SampledVectorField) -> Vec<Vec<i64>> {
    let g = f.grid();
    let half = (g.period / 2) as i64;
    let per = g.nodes_per_unit() as i64;
    let axis: Vec<i64> = (-half..half).map(|l| l * per).collect();
    let mut pts: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..g.n {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    pts
}

fn series_at(
    phi: &MultiplierSymbol,
    f: &SampledVectorField,
    steps: &[i64],
    lattice: &[Vec<i64>],
    t: &[usize],
) -> Vec<Complex64> {
    let g = f.grid();
    let m = g.m as i64;
    let origin = g.origin_index() as i64;
    let c = TAU.powf(-0.5 * g.n as f64);
    let mut out = vec![Complex64::new(0.0, 0.0); f.dim()];
    let mut src = vec![0usize; g.n];
    let mut ker = vec![0usize; g.n];
    for l in lattice {
        for a in 0..g.n {
            // Node of l + u, and of the displacement t - u - l.
            src[a] = (origin + l[a] + steps[a]).rem_euclid(m) as usize;
            ker[a] = (t[a] as i64 - steps[a] - l[a]).rem_euclid(m) as usize;
        }
        let kappa = phi.kernel()[g.flat_index(&ker)] * c;
        for (o, v) in out.iter_mut().zip(f.at(g.flat_index(&src))) {
            *o += v * kappa;
        }
    }
    out
}

/// The sampling series at the node with flat index `t`.
pub fn sampling_series(
    phi: &MultiplierSymbol,
    f: &SampledVectorField,
    u: &[f64],
    t: usize,
) -> Result<Vec<Complex64>> {
    check_bands(phi, f)?;
    let steps = offset_steps(f, u)?;
    if t >= f.grid().len() {
        return Err(Error::InvalidParameter(format!("node index {t} out of range")));
    }
    let lattice = lattice_steps(f);
    Ok(series_at(phi, f, &steps, &lattice, &f.grid().multi_index(t)))
}

/// The sampling series evaluated at every node.
pub fn sampling_series_field(phi: &MultiplierSymbol, f: &SampledVectorField, u: &[f64]) -> Result<SampledVectorField> {
    check_bands(phi, f)?;
    let steps = offset_steps(f, u)?;
    let lattice = lattice_steps(f);
    let g = f.grid();
    let mut values = Vec::with_capacity(f.values().len());
    for t in 0..g.len() {
        values.extend(series_at(phi, f, &steps, &lattice, &g.multi_index(t)));
    }
    SampledVectorField::new(g.clone(), f.dim(), values)
}
