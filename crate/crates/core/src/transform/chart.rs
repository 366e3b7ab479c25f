//! The chart `(s, tau) -> (r, t) = (e^tau sinh s, t0 + e^tau cosh s)` onto the
//! forward cone `t - t0 > r` of the anchor time `t0`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::{build_grid, RadialGrid};

pub fn chart_forward(s: f64, tau: f64, t0: f64) -> (f64, f64) {
    let e = tau.exp();
    (e * s.sinh(), t0 + e * s.cosh())
}

/// Inverse chart on the open cone; `tau = ln((t-t0)^2 - r^2) / 2`, `s = atanh(r / (t-t0))`.
pub fn chart_inverse(r: f64, t: f64, t0: f64) -> Result<(f64, f64)> {
    let a = t - t0;
    if !(a > r) || r < 0.0 {
        return Err(Error::OutsideCone { r, t, t0 });
    }
    let tau = 0.5 * ((a - r).ln() + (a + r).ln());
    let s = (r / a).atanh();
    Ok((s, tau))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperboloidalChart {
    t0: f64,
    s_grid: RadialGrid,
    tau_min: f64,
    tau_max: f64,
    tau_intervals: usize,
}

impl HyperboloidalChart {
    pub fn new(
        t0: f64,
        s_max: f64,
        s_intervals: usize,
        tau_min: f64,
        tau_max: f64,
        tau_intervals: usize,
    ) -> Result<Self> {
        if !(t0 < -1.0) {
            return invalid(format!("anchor time t0 must be below -1, got {t0}"));
        }
        if !(tau_max > tau_min) || !tau_min.is_finite() || !tau_max.is_finite() {
            return invalid(format!("tau range [{tau_min}, {tau_max}] is empty"));
        }
        if tau_intervals < 2 {
            return invalid("tau grid needs at least 2 intervals");
        }
        Ok(HyperboloidalChart {
            t0,
            s_grid: build_grid(s_max, s_intervals)?,
            tau_min,
            tau_max,
            tau_intervals,
        })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn s_grid(&self) -> &RadialGrid {
        &self.s_grid
    }

    pub fn ds(&self) -> f64 {
        self.s_grid.dr()
    }

    pub fn dtau(&self) -> f64 {
        (self.tau_max - self.tau_min) / self.tau_intervals as f64
    }

    pub fn tau_len(&self) -> usize {
        self.tau_intervals + 1
    }

    pub fn tau(&self, k: usize) -> f64 {
        self.tau_min + k as f64 * self.dtau()
    }

    pub fn taus(&self) -> Vec<f64> {
        (0..self.tau_len()).map(|k| self.tau(k)).collect()
    }

    pub fn forward(&self, j: usize, k: usize) -> (f64, f64) {
        chart_forward(self.s_grid.r(j), self.tau(k), self.t0)
    }

    /// `s0(tau) = acosh(-t0 e^{-tau})`, the radius where the slice crosses `t = 0`.
    pub fn s0(&self, tau: f64) -> Result<f64> {
        split_radius(self.t0, tau)
    }

    /// Extent `(r_max, t_min, t_max)` of the chart image.
    pub fn image_extent(&self) -> (f64, f64, f64) {
        let s_max = self.s_grid.r_max();
        let hi = self.tau_max.exp();
        let lo = self.tau_min.exp();
        (hi * s_max.sinh(), self.t0 + lo, self.t0 + hi * s_max.cosh())
    }
}

pub fn split_radius(t0: f64, tau: f64) -> Result<f64> {
    let x = -t0 * (-tau).exp();
    if !(x >= 1.0) {
        return invalid(format!(
            "s0 is undefined: -t0 e^(-tau) = {x} < 1 (tau = {tau} too large for t0 = {t0})"
        ));
    }
    Ok(x.acosh())
}
