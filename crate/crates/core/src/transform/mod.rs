//! Hyperboloidal transformation `v(s, tau) = (sinh s / s) e^tau u(e^tau sinh s, t0 + e^tau cosh s)`
//! of radial solutions, realized on the reduced fields `s v` and `w = r u`.

pub mod chart;
pub mod commutator;
pub mod integrals;
pub mod push;

pub use crate::solver::profile::phi_weight;
pub use chart::{chart_forward, chart_inverse, split_radius, HyperboloidalChart};
pub use commutator::{
    commutator_convergence, commutator_residual, Commutator, CommutatorResidual, CommutatorSetup, TestField,
};
pub use integrals::{
    change_of_variables, transformed_budgets, transformed_energy, ChangeOfVariables, TransformedBudgets,
    TransformedEnergy,
};
pub use push::{push_forward, TransformedSlice, TransformedTrajectory};
