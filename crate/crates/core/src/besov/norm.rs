//! Homogeneous matrix-weighted Besov norms.

use serde::{Deserialize, Serialize};

use super::partition::DyadicPartition;
use crate::error::{Error, Result};
use crate::spectral::{euclidean, forward_transform, NodeShift, SampledVectorField, Spectrum, TorusGrid, WeightedLpNorm};
use crate::weights::WeightSpec;

/// Spectral mass outside the covered interior is reported above this level.
pub const TRUNCATION_TOL: f64 = 1e-10;

/// `q` serializes as a number, or as the string `"inf"`.
mod summability {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &f64, s: S) -> Result<S::Ok, S::Error> {
        if q.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*q)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(v),
            Raw::Text(t) if matches!(t.as_str(), "inf" | "infinity" | "Infinity") => Ok(f64::INFINITY),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("invalid summability exponent {t:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesovParams {
    pub s: f64,
    pub p: f64,
    #[serde(with = "summability")]
    pub q: f64,
    pub weight: WeightSpec,
}

impl BesovParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p.is_finite()) {
            return Err(Error::ExponentOutOfRange(self.p));
        }
        if !(self.q > 0.0) {
            return Err(Error::InvalidParameter(format!("q = {} must be positive or inf", self.q)));
        }
        if !self.s.is_finite() {
            return Err(Error::InvalidParameter("smoothness s must be finite".into()));
        }
        self.weight.validate()
    }
}

/// Non-fatal: part of the spectrum lies where the finite family does not sum to one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationWarning {
    /// Fraction of spectral energy outside the covered interior.
    pub out_of_range_mass: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesovNorm {
    pub value: f64,
    /// `(j, ||psi_j(D) f||_{L^p(W)})`.
    pub pieces: Vec<(i32, f64)>,
    pub truncation: Option<TruncationWarning>,
}

/// A partition sampled on one grid together with the weighted norm, reusable across fields.
#[derive(Clone, Debug)]
pub struct BesovEvaluator {
    grid: TorusGrid,
    params: BesovParams,
    partition: DyadicPartition,
    samples: Vec<Vec<f64>>,
    norm: WeightedLpNorm,
    interior: (f64, f64),
    radii: Vec<f64>,
}

/// `(sum_j (2^{js} a_j)^q)^{1/q}`, or the maximum for `q = inf`, summed in `j` order.
pub(crate) fn combine(pieces: &[(i32, f64)], s: f64, q: f64) -> f64 {
    if q.is_infinite() {
        pieces
            .iter()
            .map(|&(j, a)| 2f64.powf(j as f64 * s) * a)
            .fold(0.0, f64::max)
    } else {
        pieces
            .iter()
            .map(|&(j, a)| (2f64.powf(j as f64 * s) * a).powf(q))
            .sum::<f64>()
            .powf(1.0 / q)
    }
}

impl BesovEvaluator {
    pub fn new(grid: &TorusGrid, params: &BesovParams, partition: &DyadicPartition) -> Result<Self> {
        params.validate()?;
        partition.validate()?;
        let norm = WeightedLpNorm::new(grid, &params.weight, params.p, NodeShift::Auto)?;
        Ok(Self {
            grid: grid.clone(),
            params: params.clone(),
            partition: partition.clone(),
            samples: partition.samples(grid),
            norm,
            interior: partition.covered_interior(),
            radii: (0..grid.len()).map(|k| euclidean(&grid.frequency(k))).collect(),
        })
    }

    pub fn partition(&self) -> &DyadicPartition {
        &self.partition
    }

    /// Energy fraction of `s` outside the covered interior.
    fn truncation(&self, s: &Spectrum) -> f64 {
        let (lo, hi) = self.interior;
        let (mut total, mut outside) = (0.0, 0.0);
        for (k, &r) in self.radii.iter().enumerate() {
            let e: f64 = s.at(k).iter().map(|z| z.norm_sqr()).sum();
            total += e;
            if r < lo || r > hi {
                outside += e;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            outside / total
        }
    }

    pub fn norm(&self, f: &SampledVectorField) -> Result<BesovNorm> {
        if *f.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let spec = forward_transform(f);
        let mass = self.truncation(&spec);
        let dim = spec.dim();
        let mut pieces = Vec::with_capacity(self.samples.len());
        for (j, psi) in self.partition.js().zip(&self.samples) {
            let mut sj = spec.clone();
            for (k, w) in psi.iter().enumerate() {
                for v in &mut sj.values_mut()[k * dim..(k + 1) * dim] {
                    *v *= w;
                }
            }
            let a = self.norm.norm_pow_spectrum(sj)?.powf(1.0 / self.params.p);
            pieces.push((j, a));
        }
        Ok(BesovNorm {
            value: combine(&pieces, self.params.s, self.params.q),
            pieces,
            truncation: (mass > TRUNCATION_TOL).then_some(TruncationWarning { out_of_range_mass: mass }),
        })
    }
}

/// `||f||_{B^s_{p,q}(W)}` with respect to `partition`.
pub fn besov_norm(f: &SampledVectorField, params: &BesovParams, partition: &DyadicPartition) -> Result<BesovNorm> {
    BesovEvaluator::new(f.grid(), params, partition)?.norm(f)
}
