//! Config-driven runs, verification suites and sweeps over the radialwave core.

// NaN must fail the validity checks, so `!(x > 0.0)` is intended.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod output;
pub mod simulate;
pub mod sweep;
pub mod verify;

pub use config::RunConfig;
pub use error::{CliError, Result};
pub use simulate::{run_simulate, simulate, RunSummary, SimulationOutput};
pub use sweep::{run_sweep, SweepAxes};
pub use verify::{run_verify, Suite, Verdict};
