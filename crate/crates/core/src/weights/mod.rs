//! Hermitian matrix algebra and matrix weights.
//!
//! A matrix weight maps each point of `R^n` to a positive-definite Hermitian
//! `N x N` matrix. Everything downstream needs the fractional powers
//! `W^{1/p}` and `W^{-1/p}`; [`weight_root_at`] supplies them, using closed
//! forms whenever the weight is diagonal.

mod matrix;
mod spec;

pub use matrix::{hermitian_power, spectral_norm, HermitianMatrix, HERMITIAN_TOL, PD_GUARD};
pub use spec::{
    dilate_weight, evaluate_weight, weight_root_at, weight_root_by_eigen, RotationProfile,
    WeightKind, WeightSpec,
};
