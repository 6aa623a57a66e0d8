//! Matrix-weighted `L^p` spaces on a computer.
//!
//! [`weights`] describes matrix weights, [`muckenhoupt`] estimates their `A_p`
//! and doubling constants, [`spectral`] provides the periodic grid, transforms
//! and multipliers, [`bound`] assembles the boundedness constant for
//! band-limited multipliers and checks it empirically, and [`besov`] builds
//! dyadic partitions and compares the Besov norms they induce. [`scalar`] is an
//! independent scalar implementation used to cross-check the rest.

// Range checks are written `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod besov;
pub mod bound;
pub mod error;
pub mod muckenhoupt;
pub mod rng;
pub mod scalar;
pub mod spectral;
pub mod weights;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/muckenhoupt.md")]
    mod muckenhoupt {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/bound.md")]
    mod bound {}
    #[doc = include_str!("../../../book/src/besov.md")]
    mod besov {}
}
