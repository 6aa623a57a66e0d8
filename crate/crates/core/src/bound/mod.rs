//! The boundedness constant for band-limited multipliers on `L^p(W)`,
//! `0 < p <= 1`, and the empirical operator ratios it must dominate.
//!
//! The constant is assembled as
//!
//! ```text
//! C^p = L(n, Mp - beta) * c_w * c_M * K^p * [W]_{A_p}
//! ```
//!
//! from the kernel decay data `(K, M)`, the doubling data `(beta, c_w)` of the
//! scalar reductions, the Peetre constant `c_M` and the lattice sum `L`.

mod chain;
pub mod corpus;
mod empirical;
mod lattice;

pub use chain::{
    constant_from_factors, report_from_weight_factors, theoretical_constant, weight_factors, BoundednessReport,
    ChainConstant, ChainFactors, WeightFactors, LATTICE_TOL, ONE_SIDED_BETA,
};
pub use corpus::{bandlimited_corpus, gaussian_corpus};
pub use empirical::{
    empirical_ratio, large_p_ratio, rescale_experiment, rescaled_grid, EmpiricalRatios, RescalePoint, BAND_TOL,
};
pub use lattice::{lattice_sum, lattice_sum_with_radius, peetre_constant};
