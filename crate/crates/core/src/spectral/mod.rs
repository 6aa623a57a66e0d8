//! Periodic-torus stand-in for `R^n`: transforms, band-limited fields,
//! Fourier multipliers and weighted norms.
//!
//! The Fourier transform is normalized as
//! `F f(xi) = (2 pi)^{-n/2} int f(x) e^{-i x . xi} dx` and discretized by the
//! Riemann sum over the grid, which makes the discrete pair exactly invertible.

mod fft;
mod field;
mod grid;
pub mod io;
mod norm;
mod sampling;
mod symbol;
mod synth;

pub use field::{forward_transform, inverse_transform, translate, SampledVectorField, Spectrum};
pub use grid::TorusGrid;
pub(crate) use grid::euclidean;
pub use norm::{lp_w_norm, NodeShift, WeightedLpNorm};
pub use sampling::{sampling_series, sampling_series_field};
pub use symbol::{apply_multiplier, DecayFit, MultiplierSymbol, SymbolForm, DIVERGENCE_GROWTH};
pub use synth::{bandlimit_check, synthesize_bandlimited, synthesize_shell, BandCheck, SpectralProfile};
