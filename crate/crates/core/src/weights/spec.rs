//! Analytic descriptors of matrix weights `W: R^n -> C^{N x N}`.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::matrix::{check_positive, hermitian_power, HermitianMatrix};
use crate::error::{Error, Result};
use crate::rng::substream;

/// A matrix weight given in closed form.
///
/// Serializes as a flat JSON object, for example
/// `{"n":1,"N":2,"kind":"diagonal-power","alphas":[-0.5,0.0]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    /// Ambient dimension.
    pub n: usize,
    /// Size of the matrices.
    #[serde(rename = "N")]
    pub dim: usize,
    #[serde(flatten)]
    pub kind: WeightKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightKind {
    /// `W(x) = I`.
    Identity,
    /// `W(x) = |x|^alpha I`.
    ScalarPower { alpha: f64 },
    /// `W(x) = diag(|x|^alpha_1, ..., |x|^alpha_N)`.
    DiagonalPower { alphas: Vec<f64> },
    /// `W(x) = U(x) diag(|x|^alpha_i) U(x)*` with `U(x)` a planar rotation.
    Conjugated {
        rotation: RotationProfile,
        alphas: Vec<f64>,
    },
    /// `W(x) = inner(scale * x)`.
    Scaled { scale: f64, inner: Box<WeightSpec> },
}

/// Rotation by `theta(x) = (rate * |x|) mod 2 pi` in the coordinate plane `plane`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationProfile {
    #[serde(default = "default_plane")]
    pub plane: [usize; 2],
    #[serde(default = "default_rate")]
    pub rate: f64,
}

fn default_plane() -> [usize; 2] {
    [0, 1]
}

fn default_rate() -> f64 {
    1.0
}

impl Default for RotationProfile {
    fn default() -> Self {
        Self {
            plane: default_plane(),
            rate: default_rate(),
        }
    }
}

impl RotationProfile {
    fn angle(&self, radius: f64) -> f64 {
        (self.rate * radius).rem_euclid(TAU)
    }

    fn matrix(&self, dim: usize, radius: f64) -> DMatrix<Complex64> {
        let theta = self.angle(radius);
        let (s, c) = theta.sin_cos();
        let [a, b] = self.plane;
        let mut u = DMatrix::identity(dim, dim);
        u[(a, a)] = Complex64::new(c, 0.0);
        u[(a, b)] = Complex64::new(-s, 0.0);
        u[(b, a)] = Complex64::new(s, 0.0);
        u[(b, b)] = Complex64::new(c, 0.0);
        u
    }
}

fn euclidean(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

impl WeightSpec {
    pub fn identity(n: usize, dim: usize) -> Self {
        Self {
            n,
            dim,
            kind: WeightKind::Identity,
        }
    }

    pub fn scalar_power(n: usize, dim: usize, alpha: f64) -> Self {
        Self {
            n,
            dim,
            kind: WeightKind::ScalarPower { alpha },
        }
    }

    pub fn diagonal_power(n: usize, alphas: Vec<f64>) -> Self {
        Self {
            n,
            dim: alphas.len(),
            kind: WeightKind::DiagonalPower { alphas },
        }
    }

    pub fn conjugated(n: usize, rotation: RotationProfile, alphas: Vec<f64>) -> Self {
        Self {
            n,
            dim: alphas.len(),
            kind: WeightKind::Conjugated { rotation, alphas },
        }
    }

    /// A conjugated weight with seeded exponents in `(-n/2, 0)` and rotation rate in `[1/2, 2)`.
    pub fn random_conjugated(n: usize, dim: usize, seed: u64) -> Self {
        let mut rng = substream(seed, "weights/conjugated");
        let alphas = (0..dim)
            .map(|_| -0.5 * n as f64 * rng.random::<f64>())
            .collect();
        let rate = 0.5 + 1.5 * rng.random::<f64>();
        Self::conjugated(n, RotationProfile { plane: [0, 1], rate }, alphas)
    }

    /// Checks the internal consistency of the descriptor.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.dim == 0 {
            return Err(Error::InvalidParameter(
                "weight dimensions n and N must be positive".into(),
            ));
        }
        let finite = |a: &[f64]| a.iter().all(|v| v.is_finite());
        match &self.kind {
            WeightKind::Identity => Ok(()),
            WeightKind::ScalarPower { alpha } if alpha.is_finite() => Ok(()),
            WeightKind::ScalarPower { .. } => {
                Err(Error::InvalidParameter("exponent must be finite".into()))
            }
            WeightKind::DiagonalPower { alphas } => {
                if alphas.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: alphas.len(),
                    });
                }
                if !finite(alphas) {
                    return Err(Error::InvalidParameter("exponents must be finite".into()));
                }
                Ok(())
            }
            WeightKind::Conjugated { rotation, alphas } => {
                if alphas.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: alphas.len(),
                    });
                }
                let [a, b] = rotation.plane;
                if a == b || a >= self.dim || b >= self.dim {
                    return Err(Error::InvalidParameter(format!(
                        "rotation plane {:?} is not a pair of distinct coordinates below N = {}",
                        rotation.plane, self.dim
                    )));
                }
                if !finite(alphas) || !rotation.rate.is_finite() {
                    return Err(Error::InvalidParameter("parameters must be finite".into()));
                }
                Ok(())
            }
            WeightKind::Scaled { scale, inner } => {
                if !(scale.is_finite() && *scale > 0.0) {
                    return Err(Error::NonPositiveScale(*scale));
                }
                if inner.n != self.n || inner.dim != self.dim {
                    return Err(Error::InvalidParameter(
                        "scaled weight must keep the dimensions of its inner weight".into(),
                    ));
                }
                inner.validate()
            }
        }
    }

    /// True when some exponent is nonzero, i.e. the weight blows up or vanishes at 0.
    pub fn singular_at_origin(&self) -> bool {
        match &self.kind {
            WeightKind::Identity => false,
            WeightKind::ScalarPower { alpha } => *alpha != 0.0,
            WeightKind::DiagonalPower { alphas } | WeightKind::Conjugated { alphas, .. } => {
                alphas.iter().any(|a| *a != 0.0)
            }
            WeightKind::Scaled { inner, .. } => inner.singular_at_origin(),
        }
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Eigenvalues of a power-type weight at radius `r`, before any root is taken.
    fn radial_eigenvalues(&self, alphas: &[f64], x: &[f64]) -> Result<Vec<f64>> {
        let r = euclidean(x);
        if r == 0.0 && alphas.iter().any(|a| *a != 0.0) {
            return Err(Error::SingularPoint { point: x.to_vec() });
        }
        Ok(alphas.iter().map(|a| r.powf(*a)).collect())
    }
}

/// `W(x)`.
pub fn evaluate_weight(spec: &WeightSpec, x: &[f64]) -> Result<HermitianMatrix> {
    spec.check_point(x)?;
    match &spec.kind {
        WeightKind::Identity => Ok(HermitianMatrix::identity(spec.dim)),
        WeightKind::ScalarPower { alpha } => {
            let ev = spec.radial_eigenvalues(&vec![*alpha; spec.dim], x)?;
            Ok(HermitianMatrix::from_real_diagonal(&ev))
        }
        WeightKind::DiagonalPower { alphas } => {
            let ev = spec.radial_eigenvalues(alphas, x)?;
            Ok(HermitianMatrix::from_real_diagonal(&ev))
        }
        WeightKind::Conjugated { rotation, alphas } => {
            let ev = spec.radial_eigenvalues(alphas, x)?;
            Ok(conjugate(rotation, spec.dim, euclidean(x), &ev))
        }
        WeightKind::Scaled { scale, inner } => {
            let y: Vec<f64> = x.iter().map(|v| scale * v).collect();
            evaluate_weight(inner, &y)
        }
    }
}

fn conjugate(rotation: &RotationProfile, dim: usize, radius: f64, ev: &[f64]) -> HermitianMatrix {
    let u = rotation.matrix(dim, radius);
    let d = HermitianMatrix::from_real_diagonal(ev).into_matrix();
    HermitianMatrix::symmetrized(&u * d * u.adjoint())
}

/// The weight `x -> W(scale * x)`.
pub fn dilate_weight(spec: &WeightSpec, scale: f64) -> Result<WeightSpec> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::NonPositiveScale(scale));
    }
    if matches!(spec.kind, WeightKind::Identity) || scale == 1.0 {
        return Ok(spec.clone());
    }
    Ok(WeightSpec {
        n: spec.n,
        dim: spec.dim,
        kind: WeightKind::Scaled {
            scale,
            inner: Box::new(spec.clone()),
        },
    })
}

/// `W(x)^sigma`.
///
/// Power-type weights use the closed form `(|x|^alpha)^sigma`, which is the
/// same arithmetic the diagonal branch of [`hermitian_power`] performs.
pub fn weight_root_at(spec: &WeightSpec, x: &[f64], sigma: f64) -> Result<HermitianMatrix> {
    spec.check_point(x)?;
    let closed = |ev: Vec<f64>| -> Result<Vec<f64>> {
        check_positive(&ev)?;
        Ok(ev.iter().map(|l| l.powf(sigma)).collect())
    };
    match &spec.kind {
        WeightKind::Identity => Ok(HermitianMatrix::identity(spec.dim)),
        WeightKind::ScalarPower { alpha } => {
            let ev = closed(spec.radial_eigenvalues(&vec![*alpha; spec.dim], x)?)?;
            Ok(HermitianMatrix::from_real_diagonal(&ev))
        }
        WeightKind::DiagonalPower { alphas } => {
            let ev = closed(spec.radial_eigenvalues(alphas, x)?)?;
            Ok(HermitianMatrix::from_real_diagonal(&ev))
        }
        WeightKind::Conjugated { rotation, alphas } => {
            let ev = closed(spec.radial_eigenvalues(alphas, x)?)?;
            Ok(conjugate(rotation, spec.dim, euclidean(x), &ev))
        }
        WeightKind::Scaled { scale, inner } => {
            let y: Vec<f64> = x.iter().map(|v| scale * v).collect();
            weight_root_at(inner, &y, sigma)
        }
    }
}

/// `W(x)^sigma` through the eigendecomposition, for cross-checking [`weight_root_at`].
pub fn weight_root_by_eigen(spec: &WeightSpec, x: &[f64], sigma: f64) -> Result<HermitianMatrix> {
    hermitian_power(&evaluate_weight(spec, x)?, sigma)
}
