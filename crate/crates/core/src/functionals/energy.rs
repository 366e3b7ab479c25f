//! Energy, energy norm and the Morawetz functional of a single slice.
//!
//! All three are written in terms of `w = r u`. After an integration by parts
//! `int (w_r - w/r)^2 dr = int w_r^2 dr - w_J^2 / r_J`, so the gradient
//! density never divides by `r` near the origin.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::solver::profile::CoefficientProfile;
use crate::solver::trajectory::Trajectory;
use crate::state::ReducedState;
use crate::stencil::{abs_pow, odd_derivative, trapezoid_by};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyParts {
    /// `(1/2) int |u_t|^2 dx`.
    pub kinetic: f64,
    /// `(1/2) int |u_r|^2 dx`.
    pub gradient: f64,
    /// `e^{-kappa t} / (p+1) int phi |u|^{p+1} dx`; zero for linear profiles.
    pub potential: f64,
}

impl EnergyParts {
    pub fn total(&self) -> f64 {
        self.kinetic + self.gradient + self.potential
    }
}

fn quadratic_parts(state: &ReducedState) -> (f64, f64) {
    let grid = state.grid();
    let dr = grid.dr();
    let wr = odd_derivative(state.w(), dr);
    let wt = state.wdot();
    let n = grid.len();
    let grad = trapezoid_by(n, dr, |j| wr[j] * wr[j]);
    let last = state.w()[n - 1];
    let boundary = last * last / grid.r_max();
    let kin = trapezoid_by(n, dr, |j| wt[j] * wt[j]);
    (kin, grad - boundary)
}

pub fn energy_parts(state: &ReducedState, profile: &CoefficientProfile) -> EnergyParts {
    let (kin, grad) = quadratic_parts(state);
    let potential = if profile.nonlinear {
        let grid = state.grid();
        let p = profile.p;
        let w = state.w();
        let integral = trapezoid_by(grid.len(), grid.dr(), |j| {
            if j == 0 {
                return 0.0;
            }
            let r = grid.r(j);
            profile.phi(r) * abs_pow(w[j] / r, p + 1.0) * r * r
        });
        4.0 * PI / (p + 1.0) * profile.damping(state.t()) * integral
    } else {
        0.0
    };
    EnergyParts {
        kinetic: 2.0 * PI * kin,
        gradient: 2.0 * PI * grad,
        potential,
    }
}

/// `E = int (|u_r|^2 / 2 + |u_t|^2 / 2 + e^{-kappa t} phi |u|^{p+1} / (p+1)) dx`.
pub fn energy(state: &ReducedState, profile: &CoefficientProfile) -> f64 {
    energy_parts(state, profile).total()
}

/// Discrete `H^1 x L^2` norm `(int |u_r|^2 + |u_t|^2 dx)^{1/2}`.
pub fn energy_norm(state: &ReducedState) -> f64 {
    let (kin, grad) = quadratic_parts(state);
    (4.0 * PI * (kin + grad)).max(0.0).sqrt()
}

/// `(t, E(t))` at every snapshot.
pub fn energy_series(traj: &Trajectory, profile: &CoefficientProfile) -> Vec<(f64, f64)> {
    traj.snapshots().iter().map(|s| (s.t(), energy(s, profile))).collect()
}

/// `M = int u_t (u_r + u / r) dx = 4 pi int w_t w_r dr`.
pub fn morawetz_functional(state: &ReducedState) -> f64 {
    let grid = state.grid();
    let wr = odd_derivative(state.w(), grid.dr());
    let wt = state.wdot();
    4.0 * PI * trapezoid_by(grid.len(), grid.dr(), |j| wt[j] * wr[j])
}

pub fn morawetz_series(traj: &Trajectory) -> Vec<(f64, f64)> {
    traj.snapshots()
        .iter()
        .map(|s| (s.t(), morawetz_functional(s)))
        .collect()
}
