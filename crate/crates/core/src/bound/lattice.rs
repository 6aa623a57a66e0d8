//! `L(n, s) = sum_{k in Z^n} (1 + |k|)^{-s}` and the Peetre shift constant.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest lattice radius tried before giving up on `tol`.
fn max_radius(n: usize) -> usize {
    match n {
        1 => 1 << 20,
        2 => 4096,
        _ => 256,
    }
}

/// Surface area of the unit sphere in `R^n`.
fn sphere_area(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => {
            // 2 pi^{n/2} / Gamma(n/2), with Gamma by its recurrence.
            let half = n as f64 / 2.0;
            let mut gamma = if n.is_multiple_of(2) { 1.0 } else { PI.sqrt() };
            let mut x = if n.is_multiple_of(2) { 1.0 } else { 0.5 };
            while x < half {
                gamma *= x;
                x += 1.0;
            }
            2.0 * PI.powf(half) / gamma
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `int_a^inf (1 + r)^{-s} r^{n-1} dr` in closed form.
fn radial_tail(n: usize, s: f64, a: f64) -> f64 {
    let u = 1.0 + a;
    (0..n)
        .map(|i| {
            let sign = if (n - 1 - i).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * binomial(n - 1, i) * u.powf(i as f64 + 1.0 - s) / (s - i as f64 - 1.0)
        })
        .sum()
}

/// `sum_{j >= a} j^{-s}` by Euler-Maclaurin, accurate to `O(a^{-s-5})`.
fn zeta_tail(s: f64, a: f64) -> f64 {
    a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s) + s * a.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * a.powf(-s - 3.0) / 720.0
}

/// `L(n, s)` from the exact sum over `|k| <= rho` plus an integral tail.
///
/// In 1-D the tail is an Euler-Maclaurin expansion. Otherwise it is the
/// radial integral started at the radius of the ball whose volume equals the
/// number of lattice points counted, which cancels the leading boundary error.
pub fn lattice_sum_with_radius(n: usize, s: f64, rho: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("lattice dimension must be positive".into()));
    }
    if !(s > n as f64) {
        return Err(Error::Divergent { n, exponent: s });
    }
    if n == 1 {
        // 1 + 2 sum_{j=2}^{rho+1} j^{-s} + 2 sum_{j > rho+1} j^{-s}
        let direct: f64 = (2..=rho + 1).rev().map(|j| (j as f64).powf(-s)).sum();
        return Ok(1.0 + 2.0 * (direct + zeta_tail(s, rho as f64 + 2.0)));
    }
    let r2 = (rho * rho) as i64;
    let r = rho as i64;
    let mut sum = 0.0;
    let mut count: u64 = 0;
    // Sum over the ball by nested loops; inner loops are bounded by the remaining radius.
    fn rec(dim: usize, left: i64, acc: i64, r: i64, s: f64, sum: &mut f64, count: &mut u64) {
        if dim == 0 {
            *sum += (1.0 + (acc as f64).sqrt()).powf(-s);
            *count += 1;
            return;
        }
        let bound = ((left as f64).sqrt() + 1e-9).floor() as i64;
        let bound = bound.min(r);
        for k in -bound..=bound {
            let k2 = k * k;
            if k2 <= left {
                rec(dim - 1, left - k2, acc + k2, r, s, sum, count);
            }
        }
    }
    rec(n, r2, 0, r, s, &mut sum, &mut count);
    let volume = sphere_area(n) / n as f64;
    let eff = (count as f64 / volume).powf(1.0 / n as f64);
    Ok(sum + sphere_area(n) * radial_tail(n, s, eff))
}

/// `L(n, s)`, doubling the truncation radius until two successive values agree to `tol`.
pub fn lattice_sum(n: usize, s: f64, tol: f64) -> Result<f64> {
    let mut rho = 16;
    let mut prev = lattice_sum_with_radius(n, s, rho)?;
    while rho < max_radius(n) {
        rho *= 2;
        let next = lattice_sum_with_radius(n, s, rho)?;
        if (next - prev).abs() <= tol {
            return Ok(next);
        }
        prev = next;
    }
    Ok(prev)
}

/// `c_M = sup_{u in [-1/2, 1/2)^n} (1 + |u|)^{Mp} = (1 + sqrt(n)/2)^{Mp}`.
pub fn peetre_constant(n: usize, m_exp: f64, p: f64) -> f64 {
    (1.0 + (n as f64).sqrt() / 2.0).powf(m_exp * p)
}
