//! Radial defocusing semilinear wave equation in three dimensions, solved
//! through the reduction `w = r u`, together with the functionals and the
//! hyperboloidal transformation used to study its long-time behaviour.

// NaN must fail the validity checks, so `!(x > 0.0)` is intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod data;
pub mod error;
pub mod functionals;
pub mod grid;
pub mod params;
pub mod solver;
pub mod state;
pub mod stencil;
pub mod transform;

pub use data::{pointwise_tail_check, synthesize_data, weighted_data_norm, DataSpec, Profile};
pub use error::{Error, Result};
pub use grid::{build_grid, RadialGrid};
pub use params::Parameters;
pub use state::ReducedState;
