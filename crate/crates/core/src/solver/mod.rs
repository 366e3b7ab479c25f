//! Time evolution of the reduced equation `w_tt - w_rr = S(r, t, w)`.

pub mod dalembert;
pub mod leapfrog;
pub mod picard;
pub mod profile;
pub mod residual;
pub mod trajectory;

pub use dalembert::{dalembert_free, dalembert_free_backward};
pub use leapfrog::{evolve_leapfrog, evolve_two_sided, BLOWUP_THRESHOLD};
pub use picard::{picard_solve, PicardSolution};
pub use profile::{phi_weight, CoefficientProfile, ProfileKind};
pub use residual::{pde_residual, ResidualSeries};
pub use trajectory::{Accumulator, AccumulatorKind, Trajectory};
