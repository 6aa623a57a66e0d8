//! A scalar reference path for `N = 1`, used to cross-check the matrix code.
//!
//! Weights are `w(x) = c |x|^alpha`. Everything numerical is redone here from
//! the formulas: cube enumeration and midpoint rules, the 1-D transforms (a
//! radix-2 FFT of its own), weighted norms, kernel fits, the lattice sum and
//! the assembled constants. Only the symbol and partition *definitions* are
//! shared, passed in as plain functions of the frequency.
//!
//! The spectral half is one-dimensional; cube statistics work in any `n`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::muckenhoupt::CubeFamily;
use crate::weights::{WeightKind, WeightSpec};

/// `w(x) = coef |x|^alpha` on `R^n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarWeight {
    pub n: usize,
    pub coef: f64,
    pub alpha: f64,
}

impl ScalarWeight {
    /// The scalar form of a `1 x 1` weight, if it has one.
    pub fn from_spec(spec: &WeightSpec) -> Option<Self> {
        if spec.dim != 1 {
            return None;
        }
        let (coef, alpha) = match &spec.kind {
            WeightKind::Identity => (1.0, 0.0),
            WeightKind::ScalarPower { alpha } => (1.0, *alpha),
            WeightKind::DiagonalPower { alphas } if alphas.len() == 1 => (1.0, alphas[0]),
            WeightKind::Scaled { scale, inner } => {
                let w = Self::from_spec(inner)?;
                (w.coef * scale.powf(w.alpha), w.alpha)
            }
            _ => return None,
        };
        Some(Self { n: spec.n, coef, alpha })
    }

    pub fn at(&self, x: &[f64]) -> f64 {
        if self.alpha == 0.0 {
            return self.coef;
        }
        let r2: f64 = x.iter().map(|v| v * v).sum();
        self.coef * r2.powf(0.5 * self.alpha)
    }
}

/// `(center, side)` of every cube in the family, in the family's order.
pub fn family_cubes(fam: &CubeFamily) -> Vec<(Vec<f64>, f64)> {
    let mut out = Vec::new();
    for j in fam.j_min..=fam.j_max {
        let side = fam.base * 2f64.powi(j);
        let step = side / 2.0;
        let bound = match fam.window {
            Some(w) => fam.half_width.min(w * side),
            None => fam.half_width,
        };
        let kmax = (bound / step + 1e-9).floor() as i64;
        let count = (2 * kmax + 1) as usize;
        for flat in 0..count.pow(fam.n as u32) {
            let mut center = vec![0.0; fam.n];
            let mut rest = flat;
            for a in (0..fam.n).rev() {
                center[a] = ((rest % count) as i64 - kmax) as f64 * step;
                rest /= count;
            }
            out.push((center, side));
        }
    }
    out
}

/// Values of `w` at the `q^n` midpoints of the cube.
fn cube_values(w: &ScalarWeight, center: &[f64], side: f64, q: usize) -> Vec<f64> {
    let n = center.len();
    let h = side / q as f64;
    let mut out = Vec::with_capacity(q.pow(n as u32));
    let mut x = vec![0.0; n];
    for flat in 0..q.pow(n as u32) {
        let mut rest = flat;
        for a in (0..n).rev() {
            x[a] = center[a] - side / 2.0 + ((rest % q) as f64 + 0.5) * h;
            rest /= q;
        }
        out.push(w.at(&x));
    }
    out
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// `[w]_{A_p}` over the family: `sup_Q avg_Q w / min_Q w` for `p <= 1`,
/// `sup_Q avg_Q w (avg_Q w^{-1/(p-1)})^{p-1}` for `p > 1`.
pub fn ap_constant(w: &ScalarWeight, p: f64, fam: &CubeFamily) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::ExponentOutOfRange(p));
    }
    let mut best = f64::NEG_INFINITY;
    for (c, side) in family_cubes(fam) {
        let v = cube_values(w, &c, side, fam.q);
        let val = if p <= 1.0 {
            mean(&v) / v.iter().copied().fold(f64::INFINITY, f64::min)
        } else {
            let e = 1.0 / (p - 1.0);
            let dual: Vec<f64> = v.iter().map(|x| x.powf(-e)).collect();
            mean(&v) * mean(&dual).powf(p - 1.0)
        };
        best = best.max(val);
    }
    Ok(best)
}

/// Doubling data of `w`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarDoubling {
    pub c_dbl: f64,
    pub beta: f64,
    pub c_w: f64,
    pub a1_max: f64,
}

/// `C_dbl = sup_Q 2^n avg_{2Q} w / avg_Q w`, `beta = log2 C_dbl`, and
/// `c_w = max avg_{Q_k} w / ((1 + |k - l|)^beta avg_{Q_l} w)` over the unit
/// lattice cubes `|k_i| <= radius` (scaled by the family base).
pub fn doubling(w: &ScalarWeight, fam: &CubeFamily, radius: usize) -> ScalarDoubling {
    let scale = 2f64.powi(w.n as i32);
    let (mut c_dbl, mut a1_max) = (f64::NEG_INFINITY, 0.0_f64);
    for (c, side) in family_cubes(fam) {
        let small = cube_values(w, &c, side, fam.q);
        let big = cube_values(w, &c, 2.0 * side, fam.q);
        let s = mean(&small);
        c_dbl = c_dbl.max(scale * mean(&big) / s);
        a1_max = a1_max.max(s / small.iter().copied().fold(f64::INFINITY, f64::min));
    }
    let beta = c_dbl.log2();
    let r = radius as i64;
    let count = (2 * r + 1) as usize;
    let points: Vec<Vec<f64>> = (0..count.pow(w.n as u32))
        .map(|flat| {
            let mut k = vec![0.0; w.n];
            let mut rest = flat;
            for a in (0..w.n).rev() {
                k[a] = ((rest % count) as i64 - r) as f64;
                rest /= count;
            }
            k
        })
        .collect();
    let means: Vec<f64> = points
        .iter()
        .map(|k| {
            let c: Vec<f64> = k.iter().map(|v| v * fam.base).collect();
            mean(&cube_values(w, &c, fam.base, fam.q))
        })
        .collect();
    let mut c_w = 0.0_f64;
    for (k, mk) in points.iter().zip(&means) {
        for (l, ml) in points.iter().zip(&means) {
            let d: f64 = k.iter().zip(l).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            c_w = c_w.max(mk / ((1.0 + d).powf(beta) * ml));
        }
    }
    ScalarDoubling {
        c_dbl,
        beta,
        c_w,
        a1_max,
    }
}

/// `zeta(s)` for `s > 1`: a direct sum to 15 plus Euler-Maclaurin with
/// Bernoulli terms up to `B_12`.
pub fn zeta(s: f64) -> f64 {
    const N: f64 = 16.0;
    const B: [f64; 6] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
    let head: f64 = (1..16).map(|k| (k as f64).powf(-s)).sum();
    let mut tail = N.powf(1.0 - s) / (s - 1.0) + 0.5 * N.powf(-s);
    // B_{2i} / (2i)! * s (s+1) ... (s+2i-2) * N^{-s-2i+1}
    let mut rising = s;
    let mut fact = 2.0;
    for (i, b) in B.iter().enumerate() {
        let k = 2 * (i + 1);
        tail += b / fact * rising * N.powf(-s - k as f64 + 1.0);
        rising *= (s + k as f64 - 1.0) * (s + k as f64);
        fact *= ((k + 1) * (k + 2)) as f64;
    }
    head + tail
}

/// The assembled constant of the boundedness chain in one dimension:
/// `(L c_w c_M K^p [w]_{A_p})^{1/p}` with `L = 2 zeta(Mp - beta) - 1` and
/// `c_M = (3/2)^{Mp}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarChain {
    pub l: f64,
    pub c_m: f64,
    pub c_theory: f64,
}

pub fn chain_constant(p: f64, k: f64, m_exp: f64, beta: f64, c_w: f64, ap: f64) -> Result<ScalarChain> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ExponentOutOfRange(p));
    }
    let threshold = (1.0 + beta) / p;
    if !(m_exp > threshold) {
        return Err(Error::HypothesisViolated { m: m_exp, threshold });
    }
    let l = 2.0 * zeta(m_exp * p - beta) - 1.0;
    let c_m = 1.5f64.powf(m_exp * p);
    Ok(ScalarChain {
        l,
        c_m,
        c_theory: (l * c_w * c_m * k.powf(p) * ap).powf(1.0 / p),
    })
}

/// In-place radix-2 DFT, `sum_j a_j e^{-+2 pi i jk/m}` (unnormalized).
pub fn fft(a: &mut [Complex64], inverse: bool) {
    let m = a.len();
    assert!(m.is_power_of_two(), "length {m} is not a power of two");
    let bits = m.trailing_zeros();
    for i in 0..m {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            a.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= m {
        let step = Complex64::from_polar(1.0, sign * TAU / len as f64);
        for start in (0..m).step_by(len) {
            let mut tw = Complex64::new(1.0, 0.0);
            for i in 0..len / 2 {
                let u = a[start + i];
                let v = a[start + i + len / 2] * tw;
                a[start + i] = u + v;
                a[start + i + len / 2] = u - v;
                tw *= step;
            }
        }
        len <<= 1;
    }
}

/// The 1-D torus `[-T/2, T/2)` with `m` nodes `x_j = -T/2 + j T/m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub period: f64,
    pub m: usize,
}

impl Line {
    pub fn h(&self) -> f64 {
        self.period / self.m as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        -self.period / 2.0 + j as f64 * self.h()
    }

    /// `xi_k = 2 pi k / T` with `k` taken in `[-m/2, m/2)`.
    pub fn frequency(&self, k: usize) -> f64 {
        let s = if k < self.m / 2 { k as f64 } else { k as f64 - self.m as f64 };
        TAU * s / self.period
    }

    /// `F_k = (2 pi)^{-1/2} h sum_j f_j e^{-i xi_k x_j}`.
    pub fn forward(&self, f: &[Complex64]) -> Vec<Complex64> {
        let mut a = f.to_vec();
        fft(&mut a, false);
        // e^{-i xi_k x_j} = e^{i pi k} e^{-2 pi i jk/m}.
        let c = self.h() / TAU.sqrt();
        a.iter()
            .enumerate()
            .map(|(k, v)| v * if k % 2 == 0 { c } else { -c })
            .collect()
    }

    /// `f_j = (2 pi)^{-1/2} (2 pi / T) sum_k F_k e^{i xi_k x_j}`.
    pub fn inverse(&self, s: &[Complex64]) -> Vec<Complex64> {
        let mut a: Vec<Complex64> = s
            .iter()
            .enumerate()
            .map(|(k, v)| if k % 2 == 0 { *v } else { -v })
            .collect();
        fft(&mut a, true);
        let c = TAU / self.period / TAU.sqrt();
        a.into_iter().map(|v| v * c).collect()
    }

    /// The spectrum shifted so that inverting it samples `x_j + h/2`.
    fn half_cell(&self, s: &[Complex64]) -> Vec<Complex64> {
        s.iter()
            .enumerate()
            .map(|(k, v)| v * Complex64::from_polar(1.0, 0.5 * self.h() * self.frequency(k)))
            .collect()
    }

    /// `int |f|^p w` by the node rule, sampling at half-cell shifted nodes
    /// when `w` is singular at the origin. Takes the spectrum of `f`.
    pub fn lp_pow(&self, spectrum: &[Complex64], w: &ScalarWeight, p: f64) -> f64 {
        let shifted = w.alpha != 0.0;
        let (vals, off) = if shifted {
            (self.inverse(&self.half_cell(spectrum)), 0.5 * self.h())
        } else {
            (self.inverse(spectrum), 0.0)
        };
        let sum: f64 = vals
            .iter()
            .enumerate()
            .map(|(j, v)| v.norm().powf(p) * w.at(&[self.node(j) + off]))
            .sum();
        self.h() * sum
    }
}

/// A 1-D multiplier given by its values, cut off at `|xi| >= radius`, with
/// decay scale `scale`.
pub struct ScalarSymbol<'a> {
    pub radius: f64,
    pub scale: f64,
    pub eval: &'a dyn Fn(f64) -> Complex64,
}

impl ScalarSymbol<'_> {
    pub fn samples(&self, line: &Line) -> Vec<Complex64> {
        (0..line.m)
            .map(|k| {
                let xi = line.frequency(k);
                if xi.abs() >= self.radius {
                    Complex64::new(0.0, 0.0)
                } else {
                    (self.eval)(xi)
                }
            })
            .collect()
    }

    /// `F^{-1} phi` at the nodes.
    pub fn kernel(&self, line: &Line) -> Vec<Complex64> {
        line.inverse(&self.samples(line))
    }

    /// `max_j |F^{-1} phi(x_j)| (1 + R |x_j|)^M / R` with `R` the decay scale.
    pub fn decay_constant(&self, line: &Line, m_exp: f64) -> f64 {
        let r = self.scale;
        self.kernel(line)
            .iter()
            .enumerate()
            .map(|(j, v)| v.norm() * (1.0 + r * line.node(j).abs()).powf(m_exp) / r)
            .fold(0.0, f64::max)
    }
}

/// `max_f ||phi(D) f||_{L^p(w)} / ||f||_{L^p(w)}` over the corpus (node values).
pub fn multiplier_ratio(
    line: &Line,
    symbol: &ScalarSymbol,
    w: &ScalarWeight,
    p: f64,
    corpus: &[Vec<Complex64>],
) -> Vec<f64> {
    let phi = symbol.samples(line);
    corpus
        .iter()
        .map(|f| {
            let s = line.forward(f);
            let out: Vec<Complex64> = s.iter().zip(&phi).map(|(a, b)| a * b).collect();
            (line.lp_pow(&out, w, p) / line.lp_pow(&s, w, p)).powf(1.0 / p)
        })
        .collect()
}

/// `max_t |S(t) - phi(D) f(t)| / max_t |phi(D) f(t)|` where
/// `S(t) = sum_l f(l + u) kappa(t - u - l)` runs over the integers of the torus
/// and `kappa = (2 pi)^{-1/2} F^{-1} phi`. `u` must be a node offset.
pub fn sampling_discrepancy(line: &Line, symbol: &ScalarSymbol, f: &[Complex64], u: f64) -> f64 {
    let per = (1.0 / line.h()).round() as i64;
    let us = (u / line.h()).round() as i64;
    let m = line.m as i64;
    let kernel: Vec<Complex64> = symbol.kernel(line).into_iter().map(|v| v / TAU.sqrt()).collect();
    let phi = symbol.samples(line);
    let direct = line.inverse(&line.forward(f).iter().zip(&phi).map(|(a, b)| a * b).collect::<Vec<_>>());
    let half = line.period as i64 / 2;
    let origin = m / 2;
    let scale = direct.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut worst = 0.0_f64;
    for (t, d) in direct.iter().enumerate() {
        let mut s = Complex64::new(0.0, 0.0);
        for l in -half..half {
            let src = (origin + l * per + us).rem_euclid(m) as usize;
            let ker = (t as i64 - us - l * per).rem_euclid(m) as usize;
            s += f[src] * kernel[ker];
        }
        worst = worst.max((s - d).norm());
    }
    worst / scale
}

/// `(sum_j (2^{js} a_j)^q)^{1/q}`, or the sup for `q = inf`.
pub fn besov_combine(pieces: &[(i32, f64)], s: f64, q: f64) -> f64 {
    let terms = pieces.iter().map(|&(j, a)| 2f64.powf(j as f64 * s) * a);
    if q.is_infinite() {
        terms.fold(0.0, f64::max)
    } else {
        terms.map(|t| t.powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

/// Besov norm of `f` (node values) for the pieces `psi(j, |xi|)`, `j in js`.
#[allow(clippy::too_many_arguments)]
pub fn besov_norm(
    line: &Line,
    f: &[Complex64],
    psi: &dyn Fn(i32, f64) -> f64,
    js: std::ops::RangeInclusive<i32>,
    w: &ScalarWeight,
    s: f64,
    p: f64,
    q: f64,
) -> f64 {
    let spec = line.forward(f);
    let pieces: Vec<(i32, f64)> = js
        .map(|j| {
            let sj: Vec<Complex64> = spec
                .iter()
                .enumerate()
                .map(|(k, v)| v * psi(j, line.frequency(k).abs()))
                .collect();
            (j, line.lp_pow(&sj, w, p).powf(1.0 / p))
        })
        .collect();
    besov_combine(&pieces, s, q)
}

/// Annulus data `[c1 2^j, c2 2^j)`, `j in [lo, hi]`, of a dyadic partition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Annuli {
    pub c1: f64,
    pub c2: f64,
    pub lo: i32,
    pub hi: i32,
}

/// `C` with `||f||_{target} <= C ||f||_{source}`, assembled as in the matrix
/// path: per `j` the chain constant of `psi_j` fitted at the largest outer
/// radius `R_j` among `psi_j` and the overlapping `phi_k`, times
/// `max_k 2^{(j-k)s}`, then `n0^{max(1/p-1, 0)}` and the `l^q` regrouping
/// factor (`n0^{max(1-1/q,0)} m0^{1/q}`, or `n0` for `q = inf`).
#[allow(clippy::too_many_arguments)]
pub fn directed_constant(
    line: &Line,
    target: Annuli,
    target_psi: &dyn Fn(i32, f64) -> f64,
    source: Annuli,
    s: f64,
    p: f64,
    q: f64,
    m_exp: f64,
    beta: f64,
    c_w: f64,
    ap: f64,
) -> Result<f64> {
    let meets = |j: i32, k: i32| {
        let lo = (target.c1 * 2f64.powi(j)).max(source.c1 * 2f64.powi(k));
        let hi = (target.c2 * 2f64.powi(j)).min(source.c2 * 2f64.powi(k));
        lo < hi
    };
    let sets: Vec<(i32, Vec<i32>)> = (target.lo..=target.hi)
        .map(|j| (j, (source.lo..=source.hi).filter(|&k| meets(j, k)).collect()))
        .collect();
    let n0 = sets.iter().map(|(_, a)| a.len()).max().unwrap_or(0) as f64;
    let m0 = (source.lo..=source.hi)
        .map(|k| sets.iter().filter(|(_, a)| a.contains(&k)).count())
        .max()
        .unwrap_or(0) as f64;
    let mut worst = 0.0_f64;
    for (j, set) in &sets {
        if set.is_empty() {
            continue;
        }
        let j = *j;
        let radius = set
            .iter()
            .map(|&k| source.c2 * 2f64.powi(k))
            .fold(target.c2 * 2f64.powi(j), f64::max);
        let eval = move |xi: f64| Complex64::new(target_psi(j, xi.abs()), 0.0);
        let sym = ScalarSymbol {
            radius,
            scale: radius,
            eval: &eval,
        };
        let k = sym.decay_constant(line, m_exp);
        let c = chain_constant(p, k, m_exp, beta, c_w, ap)?.c_theory;
        let sj = set.iter().map(|&k| 2f64.powf((j - k) as f64 * s)).fold(0.0, f64::max);
        worst = worst.max(c * sj);
    }
    let lp = n0.powf((1.0 / p - 1.0).max(0.0));
    let lq = if q.is_infinite() {
        n0
    } else {
        n0.powf((1.0 - 1.0 / q).max(0.0)) * m0.powf(1.0 / q)
    };
    Ok(worst * lp * lq)
}

/// `pi^2/3 - 1`, the closed form of `2 zeta(2) - 1`.
pub const LATTICE_S2: f64 = PI * PI / 3.0 - 1.0;
