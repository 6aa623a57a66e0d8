//! Matrix Muckenhoupt constants and doubling data of matrix weights.
//!
//! All estimators sweep a finite [`CubeFamily`] with tensor midpoint
//! quadrature. Since `q` is even, the midpoint nodes of a cube centred at a
//! lattice point never include that point, so weights singular at the origin
//! are never sampled there.

mod ap;
mod cubes;
mod doubling;
pub(crate) mod kernel;

pub use ap::{ap_constant, ap_constant_large_p, ap_constant_small_p, ApEstimate, Refinement, Regime};
pub use cubes::{Cube, CubeFamily};
pub use doubling::{
    default_directions, default_lattice_radius, doubling_report, doubling_report_with_radius,
    scalar_reduction, DoublingReport, ScalarReduction,
};
