//! Coefficient profile `phi` and damping `e^{-kappa t}` of the nonlinearity
//! `G(r, t, u) = -phi(r) e^{-kappa t} |u|^{p-1} u`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::RadialGrid;
use crate::stencil::{abs_pow, derivative, signed_pow};

/// Below this radius `s / sinh s` is evaluated from its Taylor series.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// `s / sinh s`, stable at both ends.
pub fn s_over_sinh(s: f64) -> f64 {
    let s = s.abs();
    if s < SERIES_THRESHOLD {
        let s2 = s * s;
        1.0 - s2 / 6.0 + 7.0 * s2 * s2 / 360.0
    } else if s > 20.0 {
        let e = (-s).exp();
        2.0 * s * e / (1.0 - e * e)
    } else {
        s / s.sinh()
    }
}

/// `(s / sinh s)^{p-1}`.
pub fn phi_weight(s: f64, p: f64) -> f64 {
    abs_pow(s_over_sinh(s), p - 1.0)
}

/// Closed form of `((p-1) phi - s phi') / s` for the hyperbolic profile,
/// i.e. `(p-1) s^{p-1} cosh s / sinh^p s`, written as `(p-1) phi coth s`.
pub fn hyperbolic_morawetz_weight(s: f64, p: f64) -> f64 {
    (p - 1.0) * phi_weight(s, p) / s.tanh()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    /// `phi = 1`.
    Unit,
    /// `phi(s) = (s / sinh s)^{p-1}`.
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientProfile {
    pub kind: ProfileKind,
    pub p: f64,
    pub kappa: f64,
    /// When false the source term is dropped and the equation is linear.
    pub nonlinear: bool,
}

impl CoefficientProfile {
    pub fn new(kind: ProfileKind, p: f64, kappa: f64) -> Result<Self> {
        let profile = CoefficientProfile {
            kind,
            p,
            kappa,
            nonlinear: true,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn unit(p: f64, kappa: f64) -> Result<Self> {
        Self::new(ProfileKind::Unit, p, kappa)
    }

    /// Hyperbolic profile with its natural damping `kappa = p - 3`.
    pub fn hyperbolic(p: f64) -> Result<Self> {
        Self::new(ProfileKind::Hyperbolic, p, p - 3.0)
    }

    pub fn linear(mut self) -> Self {
        self.nonlinear = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(3.0..5.0).contains(&self.p) {
            return invalid(format!("p must satisfy 3 <= p < 5, got {}", self.p));
        }
        if !(self.kappa >= 0.0 && self.kappa.is_finite()) {
            return invalid(format!("kappa must be finite and non-negative, got {}", self.kappa));
        }
        Ok(())
    }

    pub fn phi(&self, s: f64) -> f64 {
        match self.kind {
            ProfileKind::Unit => 1.0,
            ProfileKind::Hyperbolic => phi_weight(s, self.p),
        }
    }

    pub fn damping(&self, t: f64) -> f64 {
        (-self.kappa * t).exp()
    }

    /// Morawetz weight `((p-1) phi - r phi') / r` with `phi'` taken by
    /// finite differences of `phi` on the grid. Entry 0 is left at 0 (the
    /// weight is singular there but always multiplied by `r^2`).
    pub fn morawetz_weight_fd(&self, grid: &RadialGrid) -> Vec<f64> {
        let phi: Vec<f64> = grid.points().map(|r| self.phi(r)).collect();
        let dphi = derivative(&phi, grid.dr());
        let mut out = vec![0.0; grid.len()];
        for j in 1..grid.len() {
            let r = grid.r(j);
            out[j] = ((self.p - 1.0) * phi[j] - r * dphi[j]) / r;
        }
        out
    }

    /// Fails with an invalid-profile error if the finite-difference Morawetz
    /// weight is negative anywhere on the grid.
    pub fn check_morawetz_condition(&self, grid: &RadialGrid) -> Result<Vec<f64>> {
        let weight = self.morawetz_weight_fd(grid);
        if let Some((j, w)) = weight.iter().enumerate().skip(1).find(|(_, w)| !(**w >= 0.0)) {
            return Err(Error::InvalidProfile(format!(
                "(p-1) phi - r phi' is negative ({w}) at r = {}",
                grid.r(j)
            )));
        }
        Ok(weight)
    }
}

/// Per-grid coefficient tables shared by the solvers.
#[derive(Debug, Clone)]
pub(crate) struct Coefficients {
    pub profile: CoefficientProfile,
    /// `phi_j r_j^{1-p}`; the source is `-e^{-kappa t} coef_j |w_j|^{p-1} w_j`.
    pub source: Vec<f64>,
    /// `((p-1) phi_j - r_j phi'_j) r_j^{-p}`.
    pub morawetz: Vec<f64>,
    /// `r_j^{4-2p}` for the `|u|^{2(p-1)} r^2` integrand.
    pub lq: Vec<f64>,
}

impl Coefficients {
    pub fn new(profile: &CoefficientProfile, grid: &RadialGrid) -> Result<Self> {
        profile.validate()?;
        let p = profile.p;
        let weight = profile.morawetz_weight_fd(grid);
        let n = grid.len();
        let mut source = vec![0.0; n];
        let mut morawetz = vec![0.0; n];
        let mut lq = vec![0.0; n];
        for j in 1..n {
            let r = grid.r(j);
            source[j] = profile.phi(r) * r.powf(1.0 - p);
            morawetz[j] = weight[j] * r.powf(1.0 - p);
            lq[j] = r.powf(4.0 - 2.0 * p);
        }
        Ok(Coefficients {
            profile: *profile,
            source,
            morawetz,
            lq,
        })
    }

    /// Fills `out` with the source `S_j` of the reduced equation at time `t`.
    pub fn source_into(&self, w: &[f64], t: f64, out: &mut [f64]) {
        if !self.profile.nonlinear {
            out.iter_mut().for_each(|x| *x = 0.0);
            return;
        }
        let damp = self.profile.damping(t);
        let p = self.profile.p;
        for ((o, &wj), &c) in out.iter_mut().zip(w).zip(&self.source) {
            *o = -damp * c * signed_pow(wj, p);
        }
    }
}
