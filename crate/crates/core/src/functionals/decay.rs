//! Exterior decay `|w| <= B1 (r - t)^{-delta}` and characteristic flux
//! bounds `|w_t +- w_r| <= f(r +- t)` beyond the cone `r > t + R`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::params::Parameters;
use crate::solver::trajectory::Trajectory;
use crate::state::ReducedState;
use crate::stencil::{derivative, odd_derivative};

/// Allowed excess of the decay ratios over 1.
pub const DECAY_TOLERANCE: f64 = 1e-2;

/// End of the slab `t in [0, CALIBRATION_WINDOW]` used for calibration.
pub const CALIBRATION_WINDOW: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub t: f64,
    /// `max |w| (r - t)^delta / B1`.
    pub es1: f64,
    /// `max |w_t + w_r| / f(r + t)`.
    pub plus: f64,
    /// `max |w_t - w_r| / f(r - t)`.
    pub minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub b1: f64,
    pub r_ext: f64,
    pub delta: f64,
    /// Calibrated constant in `f(s) = s|u1| + s|u0'| + C s^{-1-delta}`.
    pub c: f64,
    pub rows: Vec<DecayRow>,
    pub max_es1: f64,
    pub max_plus: f64,
    pub max_minus: f64,
    pub pass: bool,
}

/// `s |u1(s)| + s |u0'(s)|` sampled on the data grid.
struct DataFlux {
    dr: f64,
    values: Vec<f64>,
}

impl DataFlux {
    fn new(data: &ReducedState) -> Self {
        let grid = data.grid();
        let du0 = derivative(&data.u(), grid.dr());
        let u1 = data.u_t();
        let values = (0..grid.len())
            .map(|j| grid.r(j) * (u1[j].abs() + du0[j].abs()))
            .collect();
        DataFlux { dr: grid.dr(), values }
    }

    /// Linear interpolation; zero past the grid.
    fn at(&self, s: f64) -> f64 {
        let x = s / self.dr;
        let k = x.floor();
        if k < 0.0 {
            return self.values[0];
        }
        let k = k as usize;
        if k + 1 >= self.values.len() {
            return if k + 1 == self.values.len() {
                self.values[k]
            } else {
                0.0
            };
        }
        let frac = x - k as f64;
        (1.0 - frac) * self.values[k] + frac * self.values[k + 1]
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Visits every exterior point `(r, t, w, w_t + w_r, w_t - w_r)` with `t >= 0`
/// and `t <= t_max`.
fn for_exterior<F: FnMut(usize, f64, f64, f64, f64, f64)>(traj: &Trajectory, r_ext: f64, t_max: f64, mut visit: F) {
    let grid = traj.grid();
    for (k, s) in traj.snapshots().iter().enumerate() {
        let t = s.t();
        if t < 0.0 || t > t_max {
            continue;
        }
        let wr = odd_derivative(s.w(), grid.dr());
        for j in 0..grid.len() {
            let r = grid.r(j);
            if r <= t + r_ext {
                continue;
            }
            let w = s.w()[j];
            let wt = s.wdot()[j];
            visit(k, r, t, w, wt + wr[j], wt - wr[j]);
        }
    }
}

fn data_slice(traj: &Trajectory) -> Result<&ReducedState> {
    traj.at(0.0)
        .ok_or_else(|| crate::error::Error::InvalidArgument("trajectory has no snapshot at t = 0".into()))
}

/// Smallest power of two `B1` such that `|w| (r - t)^delta <= B1` on the
/// calibration slab; 1 when the exterior field vanishes there.
pub fn calibrate_b1(traj: &Trajectory, r_ext: f64, delta: f64) -> Result<f64> {
    data_slice(traj)?;
    let mut worst = 0.0f64;
    for_exterior(traj, r_ext, CALIBRATION_WINDOW, |_, r, t, w, _, _| {
        worst = worst.max(w.abs() * (r - t).powf(delta));
    });
    if worst == 0.0 {
        return Ok(1.0);
    }
    Ok(2f64.powf(worst.log2().ceil()))
}

/// Smallest `C >= 0` such that the characteristic bounds hold on the calibration slab.
pub fn calibrate_flux_constant(traj: &Trajectory, r_ext: f64, delta: f64) -> Result<f64> {
    let flux = DataFlux::new(data_slice(traj)?);
    let mut c = 0.0f64;
    for_exterior(traj, r_ext, CALIBRATION_WINDOW, |_, r, t, _, zp, zm| {
        for (z, s) in [(zp, r + t), (zm, r - t)] {
            c = c.max((z.abs() - flux.at(s)) * s.powf(1.0 + delta));
        }
    });
    Ok(c)
}

/// Decay ratios over every stored exterior point, with `B1`, `R`, `delta`
/// from `params` and `C` calibrated on `t in [0, 1]`.
pub fn exterior_decay_report(traj: &Trajectory, params: &Parameters) -> Result<DecayReport> {
    if traj.last().t() < 0.0 {
        return invalid("exterior decay needs a trajectory reaching t >= 0");
    }
    let (b1, r_ext, delta) = (params.b1, params.r_ext, params.delta);
    let flux = DataFlux::new(data_slice(traj)?);
    let c = calibrate_flux_constant(traj, r_ext, delta)?;
    let f = |s: f64| flux.at(s) + c * s.powf(-1.0 - delta);
    let mut rows: Vec<Option<DecayRow>> = vec![None; traj.len()];
    for_exterior(traj, r_ext, f64::INFINITY, |k, r, t, w, zp, zm| {
        let row = rows[k].get_or_insert(DecayRow {
            t,
            es1: 0.0,
            plus: 0.0,
            minus: 0.0,
        });
        row.es1 = row.es1.max(ratio(w.abs() * (r - t).powf(delta), b1));
        row.plus = row.plus.max(ratio(zp.abs(), f(r + t)));
        row.minus = row.minus.max(ratio(zm.abs(), f(r - t)));
    });
    let rows: Vec<DecayRow> = rows.into_iter().flatten().collect();
    let max_of = |g: fn(&DecayRow) -> f64| rows.iter().map(g).fold(0.0, f64::max);
    let (max_es1, max_plus, max_minus) = (max_of(|r| r.es1), max_of(|r| r.plus), max_of(|r| r.minus));
    let limit = 1.0 + DECAY_TOLERANCE;
    Ok(DecayReport {
        b1,
        r_ext,
        delta,
        c,
        pass: max_es1 <= limit && max_plus <= limit && max_minus <= limit,
        rows,
        max_es1,
        max_plus,
        max_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;
    use crate::solver::{evolve_leapfrog, CoefficientProfile};

    #[test]
    fn zero_trajectory_has_zero_ratios() {
        let g = build_grid(20.0, 200).unwrap();
        let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
        let traj = evolve_leapfrog(&ReducedState::zeros(g, 0.0), &prof, 3.0, 5).unwrap();
        let params = Parameters::derived(3.0, 0.5, 1.0, 0.0, 1.0, 2.0).unwrap();
        let rep = exterior_decay_report(&traj, &params).unwrap();
        assert!(rep.pass);
        assert_eq!((rep.max_es1, rep.max_plus, rep.max_minus), (0.0, 0.0, 0.0));
        assert_eq!(calibrate_b1(&traj, 2.0, 0.1).unwrap(), 1.0);
    }

    #[test]
    fn field_beyond_the_cone_of_compact_data_vanishes() {
        let g = build_grid(40.0, 800).unwrap();
        let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
        let s0 = ReducedState::from_profiles(
            g,
            0.0,
            |r| if r < 2.0 { (1.0 - r * r / 4.0).powi(4) } else { 0.0 },
            |_| 0.0,
        );
        let traj = evolve_leapfrog(&s0, &prof, 10.0, 10).unwrap();
        // support r < 2, so R = 2.5 leaves the exterior untouched
        let params = Parameters::derived(3.0, 0.5, 1.0, 0.0, 1.0, 2.5).unwrap();
        let rep = exterior_decay_report(&traj, &params).unwrap();
        assert_eq!(rep.max_es1, 0.0);
        assert_eq!(rep.c, 0.0);
        assert!(!rep.rows.is_empty());
    }
}
