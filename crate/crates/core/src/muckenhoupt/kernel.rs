//! Pair kernels `||A B||^2` for the cube sweeps.
//!
//! The estimators evaluate the spectral norm of `W^{1/p}(t) W^{-1/p}(y)` for
//! every pair of quadrature nodes, so the small cases get closed forms on
//! packed storage. Each closed form works on the Hermitian matrix
//! `H = (AB)* (AB)` after removing its mean eigenvalue, which keeps clustered
//! spectra accurate.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::weights::{spectral_norm, HermitianMatrix};

/// Node matrices of one size, stored contiguously.
#[derive(Clone, Debug)]
pub(crate) enum NodeMatrices {
    /// `N = 1`: the (positive) scalar value.
    One(Vec<f64>),
    /// `N = 2`, row-major.
    Two(Vec<[Complex64; 4]>),
    /// `N = 3`, row-major.
    Three(Vec<[Complex64; 9]>),
    General(Vec<DMatrix<Complex64>>),
}

impl NodeMatrices {
    pub(crate) fn pack(mats: &[HermitianMatrix]) -> Self {
        let dim = mats.first().map(|m| m.dim()).unwrap_or(1);
        match dim {
            1 => NodeMatrices::One(mats.iter().map(|m| m.get(0, 0).re).collect()),
            2 => NodeMatrices::Two(
                mats.iter()
                    .map(|m| [m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)])
                    .collect(),
            ),
            3 => NodeMatrices::Three(
                mats.iter()
                    .map(|m| {
                        let mut a = [Complex64::new(0.0, 0.0); 9];
                        for i in 0..3 {
                            for j in 0..3 {
                                a[3 * i + j] = m.get(i, j);
                            }
                        }
                        a
                    })
                    .collect(),
            ),
            _ => NodeMatrices::General(mats.iter().map(|m| m.as_matrix().clone()).collect()),
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            NodeMatrices::One(v) => v.len(),
            NodeMatrices::Two(v) => v.len(),
            NodeMatrices::Three(v) => v.len(),
            NodeMatrices::General(v) => v.len(),
        }
    }

    /// `|A_i x|^2` for a vector `x`.
    pub(crate) fn quad_norm_sq(&self, i: usize, x: &[Complex64]) -> f64 {
        match self {
            NodeMatrices::One(v) => v[i] * v[i] * x[0].norm_sqr(),
            NodeMatrices::Two(v) => {
                let a = &v[i];
                (a[0] * x[0] + a[1] * x[1]).norm_sqr() + (a[2] * x[0] + a[3] * x[1]).norm_sqr()
            }
            NodeMatrices::Three(v) => {
                let a = &v[i];
                (0..3)
                    .map(|r| (a[3 * r] * x[0] + a[3 * r + 1] * x[1] + a[3 * r + 2] * x[2]).norm_sqr())
                    .sum()
            }
            NodeMatrices::General(v) => {
                let m = &v[i];
                (0..m.nrows())
                    .map(|r| {
                        (0..m.ncols())
                            .map(|c| m[(r, c)] * x[c])
                            .sum::<Complex64>()
                            .norm_sqr()
                    })
                    .sum()
            }
        }
    }
}

/// `||A_i B_j||^2` where `a` and `b` hold matrices of the same size.
#[inline]
pub(crate) fn norm_sq(a: &NodeMatrices, i: usize, b: &NodeMatrices, j: usize) -> f64 {
    match (a, b) {
        (NodeMatrices::One(a), NodeMatrices::One(b)) => {
            let v = a[i] * b[j];
            v * v
        }
        (NodeMatrices::Two(a), NodeMatrices::Two(b)) => norm_sq_2(&a[i], &b[j]),
        (NodeMatrices::Three(a), NodeMatrices::Three(b)) => norm_sq_3(&a[i], &b[j]),
        (NodeMatrices::General(a), NodeMatrices::General(b)) => {
            let s = spectral_norm(&(&a[i] * &b[j])).unwrap_or(f64::NAN);
            s * s
        }
        _ => f64::NAN,
    }
}

#[inline]
pub(crate) fn norm_sq_2(a: &[Complex64; 4], b: &[Complex64; 4]) -> f64 {
    let c00 = a[0] * b[0] + a[1] * b[2];
    let c01 = a[0] * b[1] + a[1] * b[3];
    let c10 = a[2] * b[0] + a[3] * b[2];
    let c11 = a[2] * b[1] + a[3] * b[3];
    // H = C* C
    let h00 = c00.norm_sqr() + c10.norm_sqr();
    let h11 = c01.norm_sqr() + c11.norm_sqr();
    let h01 = c00.conj() * c01 + c10.conj() * c11;
    let mean = 0.5 * (h00 + h11);
    let half_gap = 0.5 * (h00 - h11);
    mean + (half_gap * half_gap + h01.norm_sqr()).sqrt()
}

#[inline]
pub(crate) fn norm_sq_3(a: &[Complex64; 9], b: &[Complex64; 9]) -> f64 {
    let mut c = [Complex64::new(0.0, 0.0); 9];
    for i in 0..3 {
        for j in 0..3 {
            c[3 * i + j] = a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j];
        }
    }
    // Upper triangle of H = C* C.
    let col = |j: usize| [c[j], c[3 + j], c[6 + j]];
    let dot = |u: [Complex64; 3], v: [Complex64; 3]| u[0].conj() * v[0] + u[1].conj() * v[1] + u[2].conj() * v[2];
    let (k0, k1, k2) = (col(0), col(1), col(2));
    let d0 = dot(k0, k0).re;
    let d1 = dot(k1, k1).re;
    let d2 = dot(k2, k2).re;
    let h01 = dot(k0, k1);
    let h02 = dot(k0, k2);
    let h12 = dot(k1, k2);
    largest_eigenvalue_3(d0, d1, d2, h01, h02, h12)
}

/// Largest eigenvalue of the Hermitian matrix with diagonal `d*` and upper
/// off-diagonal entries `h01, h02, h12`, by the trigonometric cubic solution
/// applied to the traceless part.
pub(crate) fn largest_eigenvalue_3(d0: f64, d1: f64, d2: f64, h01: Complex64, h02: Complex64, h12: Complex64) -> f64 {
    let mean = (d0 + d1 + d2) / 3.0;
    let (e0, e1, e2) = (d0 - mean, d1 - mean, d2 - mean);
    let off = h01.norm_sqr() + h02.norm_sqr() + h12.norm_sqr();
    // For traceless H', the characteristic polynomial is mu^3 - (|H'|_F^2 / 2) mu - det H'.
    let half_frob = 0.5 * (e0 * e0 + e1 * e1 + e2 * e2) + off;
    if half_frob <= 0.0 {
        return mean;
    }
    let det = e0 * e1 * e2 + 2.0 * (h01 * h12 * h02.conj()).re
        - e0 * h12.norm_sqr()
        - e1 * h02.norm_sqr()
        - e2 * h01.norm_sqr();
    let scale = (half_frob / 3.0).sqrt();
    let r = (det / (2.0 * scale * scale * scale)).clamp(-1.0, 1.0);
    mean + 2.0 * scale * (r.acos() / 3.0).cos()
}

/// `x^e` with the exponents that occur most often special-cased.
#[inline]
pub(crate) fn pow_fast(x: f64, e: f64) -> f64 {
    if e == 1.0 {
        x
    } else if e == 0.5 {
        x.sqrt()
    } else if e == 0.25 {
        x.sqrt().sqrt()
    } else if e == 2.0 {
        x * x
    } else {
        x.powf(e)
    }
}
