//! Scalar and space-time diagnostics of computed solutions.

pub mod budget;
pub mod decay;
pub mod energy;
pub mod norms;
pub mod report;
pub mod scattering;

pub use budget::{dissipation_check, morawetz_budget, BudgetEntry, DissipationCheck, MorawetzBudget};
pub use decay::{calibrate_b1, calibrate_flux_constant, exterior_decay_report, DecayReport, DecayRow};
pub use energy::{energy, energy_norm, energy_parts, energy_series, morawetz_functional, morawetz_series, EnergyParts};
pub use norms::{mixed_norm, Region};
pub use report::{DefectEntry, DiagnosticReport};
pub use scattering::{scattering_pullback, ScatteringDefect};
