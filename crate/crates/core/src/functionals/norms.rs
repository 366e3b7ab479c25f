//! Mixed space-time Lebesgue norms over regions of the `(r, t)` half plane.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::solver::trajectory::Trajectory;
use crate::stencil::{abs_pow, trapezoid, trapezoid_by};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "region", rename_all = "snake_case")]
pub enum Region {
    All,
    /// `r > t + R`.
    Exterior {
        r_ext: f64,
    },
    /// `(t - t0)^2 - r^2 > 1` inside the forward cone of `t0`.
    Omega {
        t0: f64,
    },
    /// `e^{-2} <= (t - t0)^2 - r^2 <= 1`, `t0 < t <= 0`.
    K {
        t0: f64,
    },
}

impl Region {
    pub fn contains(&self, r: f64, t: f64) -> bool {
        match *self {
            Region::All => true,
            Region::Exterior { r_ext } => r > t + r_ext,
            Region::Omega { t0 } => t > t0 && (t - t0) * (t - t0) - r * r > 1.0,
            Region::K { t0 } => {
                let q = (t - t0) * (t - t0) - r * r;
                t > t0 && t <= 0.0 && t - t0 > r && q >= (-2.0f64).exp() && q <= 1.0
            }
        }
    }
}

/// `(int (int |u|^{q_x} weight dx)^{q_t / q_x} dt)^{1 / q_t}` with `dx = 4 pi r^2 dr`.
///
/// `weight(r, t)` multiplies the spatial density; points outside `region`
/// contribute nothing. Both integrals use the trapezoid rule on the stored
/// snapshots.
pub fn mixed_norm(
    traj: &Trajectory,
    q_t: f64,
    q_x: f64,
    weight: Option<&dyn Fn(f64, f64) -> f64>,
    region: Option<Region>,
) -> Result<f64> {
    if !(q_t >= 1.0) || !(q_x >= 1.0) {
        return invalid(format!("mixed norm exponents must be >= 1, got ({q_t}, {q_x})"));
    }
    let region = region.unwrap_or(Region::All);
    let grid = traj.grid();
    let inner: Vec<f64> = traj
        .snapshots()
        .iter()
        .map(|s| {
            let t = s.t();
            let u = s.u();
            let spatial = trapezoid_by(grid.len(), grid.dr(), |j| {
                let r = grid.r(j);
                if !region.contains(r, t) {
                    return 0.0;
                }
                let wgt = weight.map_or(1.0, |f| f(r, t));
                abs_pow(u[j], q_x) * wgt * r * r
            });
            abs_pow(4.0 * PI * spatial, q_t / q_x)
        })
        .collect();
    Ok(trapezoid(&inner, traj.spacing()).powf(1.0 / q_t))
}
