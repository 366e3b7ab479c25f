//! Push-forward `s v(s, tau) = w(e^tau sinh s, t0 + e^tau cosh s)` of a
//! computed physical solution onto the chart lattice.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::solver::profile::{s_over_sinh, SERIES_THRESHOLD};
use crate::solver::trajectory::Trajectory;
use crate::state::{divide_by_r, ReducedState};
use crate::stencil::odd_derivative;
use crate::transform::chart::HyperboloidalChart;

/// Offending nodes listed in a coverage error.
const COVERAGE_SAMPLE: usize = 8;

/// One slice `tau = const` of the transformed solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformedSlice {
    pub grid: RadialGrid,
    pub t0: f64,
    pub tau: f64,
    pub sv: Vec<f64>,
    /// `(sv)_s = (t - t0) w_r + r w_t`.
    pub sv_s: Vec<f64>,
    /// `(sv)_tau = r w_r + (t - t0) w_t`.
    pub sv_tau: Vec<f64>,
    pub v: Vec<f64>,
    pub v_tau: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformedTrajectory {
    pub chart: HyperboloidalChart,
    pub slices: Vec<TransformedSlice>,
}

impl TransformedTrajectory {
    /// The slices as a trajectory of `(sv, (sv)_tau)` on the `s` grid, ready
    /// for the residual of the transformed equation.
    pub fn to_trajectory(&self) -> Result<Trajectory> {
        let states = self
            .slices
            .iter()
            .map(|sl| ReducedState::new(sl.grid, sl.tau, sl.sv.clone(), sl.sv_tau.clone()))
            .collect::<Result<Vec<_>>>()?;
        Trajectory::from_snapshots(states, self.chart.dtau())
    }
}

/// Bilinear interpolation on the stored `(r_j, t_n)` lattice.
struct Lattice<'a> {
    traj: &'a Trajectory,
    wr: Vec<Vec<f64>>,
    u: Vec<Vec<f64>>,
    ut: Vec<Vec<f64>>,
}

struct Sample {
    w: f64,
    wr: f64,
    wt: f64,
    u: f64,
    ut: f64,
}

impl Lattice<'_> {
    fn locate(&self, r: f64, t: f64) -> Option<(usize, f64, usize, f64)> {
        let grid = self.traj.grid();
        let x = r / grid.dr();
        let y = (t - self.traj.first().t()) / self.traj.spacing();
        let slack = 1e-9;
        let (jmax, nmax) = (grid.intervals() as f64, (self.traj.len() - 1) as f64);
        if x < -slack || x > jmax + slack || y < -slack || y > nmax + slack {
            return None;
        }
        let x = x.clamp(0.0, jmax);
        let y = y.clamp(0.0, nmax);
        let j = (x.floor() as usize).min(grid.intervals() - 1);
        let n = (y.floor() as usize).min(self.traj.len() - 2);
        Some((j, x - j as f64, n, y - n as f64))
    }

    fn sample(&self, r: f64, t: f64) -> Option<Sample> {
        let (j, a, n, b) = self.locate(r, t)?;
        let snaps = self.traj.snapshots();
        let mix = |f: &dyn Fn(usize, usize) -> f64| {
            (1.0 - b) * ((1.0 - a) * f(n, j) + a * f(n, j + 1)) + b * ((1.0 - a) * f(n + 1, j) + a * f(n + 1, j + 1))
        };
        Some(Sample {
            w: mix(&|n, j| snaps[n].w()[j]),
            wr: mix(&|n, j| self.wr[n][j]),
            wt: mix(&|n, j| snaps[n].wdot()[j]),
            u: mix(&|n, j| self.u[n][j]),
            ut: mix(&|n, j| self.ut[n][j]),
        })
    }
}

/// Interpolates `w`, `w_r`, `w_t` at every chart node.
pub fn push_forward(traj: &Trajectory, chart: &HyperboloidalChart) -> Result<TransformedTrajectory> {
    if traj.len() < 2 {
        return Err(Error::InvalidArgument(
            "push-forward needs at least two snapshots".into(),
        ));
    }
    let grid = traj.grid();
    let lattice = Lattice {
        traj,
        wr: traj
            .snapshots()
            .iter()
            .map(|s| odd_derivative(s.w(), grid.dr()))
            .collect(),
        u: traj.snapshots().iter().map(|s| divide_by_r(s.w(), grid)).collect(),
        ut: traj.snapshots().iter().map(|s| divide_by_r(s.wdot(), grid)).collect(),
    };
    let s_grid = *chart.s_grid();
    let t0 = chart.t0();
    let mut missing = Vec::new();
    let mut count = 0;
    let mut slices = Vec::with_capacity(chart.tau_len());
    for k in 0..chart.tau_len() {
        let tau = chart.tau(k);
        let e = tau.exp();
        let n = s_grid.len();
        let mut slice = TransformedSlice {
            grid: s_grid,
            t0,
            tau,
            sv: vec![0.0; n],
            sv_s: vec![0.0; n],
            sv_tau: vec![0.0; n],
            v: vec![0.0; n],
            v_tau: vec![0.0; n],
        };
        for j in 0..n {
            let s = s_grid.r(j);
            let (sh, ch) = (s.sinh(), s.cosh());
            let (r, dt) = (e * sh, e * ch);
            let Some(p) = lattice.sample(r, t0 + dt) else {
                count += 1;
                if missing.len() < COVERAGE_SAMPLE {
                    missing.push((s, tau));
                }
                continue;
            };
            if j == 0 {
                // w, w_t vanish identically on the axis
                slice.sv_s[0] = dt * p.wr;
            } else {
                slice.sv[j] = p.w;
                slice.sv_s[j] = dt * p.wr + r * p.wt;
                slice.sv_tau[j] = r * p.wr + dt * p.wt;
            }
            if s < SERIES_THRESHOLD {
                let factor = e / s_over_sinh(s);
                slice.v[j] = factor * p.u;
                slice.v_tau[j] = factor * (p.u + dt * p.ut);
            } else {
                slice.v[j] = slice.sv[j] / s;
                slice.v_tau[j] = slice.sv_tau[j] / s;
            }
        }
        slices.push(slice);
    }
    if count > 0 {
        return Err(Error::Coverage { count, nodes: missing });
    }
    Ok(TransformedTrajectory { chart: *chart, slices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;

    #[test]
    fn zero_trajectory_maps_to_zero() {
        let g = build_grid(10.0, 100).unwrap();
        let snaps = (0..=60)
            .map(|k| ReducedState::zeros(g, -1.0 + 0.1 * k as f64))
            .collect();
        let traj = Trajectory::from_snapshots(snaps, 0.1).unwrap();
        let chart = HyperboloidalChart::new(-2.0, 1.0, 16, 0.0, 1.0, 8).unwrap();
        let out = push_forward(&traj, &chart).unwrap();
        assert!(out
            .slices
            .iter()
            .all(|s| s.sv.iter().chain(&s.v).chain(&s.sv_tau).all(|&x| x == 0.0)));
    }

    #[test]
    fn escaping_chart_is_a_coverage_error() {
        let g = build_grid(2.0, 20).unwrap();
        let snaps = (0..=30)
            .map(|k| ReducedState::zeros(g, -1.0 + 0.1 * k as f64))
            .collect();
        let traj = Trajectory::from_snapshots(snaps, 0.1).unwrap();
        let chart = HyperboloidalChart::new(-2.0, 2.0, 16, 0.0, 1.0, 8).unwrap();
        match push_forward(&traj, &chart) {
            Err(Error::Coverage { count, nodes }) => {
                assert!(count > 0);
                assert!(!nodes.is_empty() && nodes.len() <= COVERAGE_SAMPLE);
            }
            other => panic!("expected coverage error, got {other:?}"),
        }
    }
}
