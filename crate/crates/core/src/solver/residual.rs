//! Discrete residual of the reduced equation on stored snapshots.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::solver::profile::{CoefficientProfile, Coefficients};
use crate::solver::trajectory::Trajectory;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSeries {
    /// Times of the interior snapshots.
    pub times: Vec<f64>,
    pub max: Vec<f64>,
    /// `(dr * sum_j R_j^2)^{1/2}` over interior points.
    pub l2: Vec<f64>,
}

impl ResidualSeries {
    pub fn sup(&self) -> f64 {
        self.max.iter().copied().fold(0.0, f64::max)
    }
}

/// `(d_t^2 - d_r^2) w - S(w)` by second differences with the snapshot spacing in time.
pub fn pde_residual(traj: &Trajectory, profile: &CoefficientProfile) -> Result<ResidualSeries> {
    let snaps = traj.snapshots();
    if snaps.len() < 3 {
        return invalid(format!("residual needs at least 3 snapshots, got {}", snaps.len()));
    }
    let grid = traj.grid();
    let coef = Coefficients::new(profile, grid)?;
    let ht2 = traj.spacing().powi(2);
    let dr = grid.dr();
    let dr2 = dr * dr;
    let n = grid.len();
    let mut src = vec![0.0; n];
    let mut out = ResidualSeries {
        times: Vec::new(),
        max: Vec::new(),
        l2: Vec::new(),
    };
    for k in 1..snaps.len() - 1 {
        let (a, b, c) = (snaps[k - 1].w(), snaps[k].w(), snaps[k + 1].w());
        coef.source_into(b, snaps[k].t(), &mut src);
        let mut sup = 0.0f64;
        let mut sq = 0.0;
        for j in 1..n - 1 {
            let res = (c[j] - 2.0 * b[j] + a[j]) / ht2 - (b[j + 1] - 2.0 * b[j] + b[j - 1]) / dr2 - src[j];
            sup = sup.max(res.abs());
            sq += res * res;
        }
        out.times.push(snaps[k].t());
        out.max.push(sup);
        out.l2.push((dr * sq).sqrt());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;
    use crate::solver::leapfrog::evolve_leapfrog;
    use crate::state::ReducedState;

    #[test]
    fn zero_trajectory_has_zero_residual() {
        let g = build_grid(5.0, 50).unwrap();
        let snaps = (0..4).map(|k| ReducedState::zeros(g, 0.1 * k as f64)).collect();
        let traj = Trajectory::from_snapshots(snaps, 0.1).unwrap();
        let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
        let res = pde_residual(&traj, &prof).unwrap();
        assert_eq!(res.times.len(), 2);
        assert_eq!(res.sup(), 0.0);
    }

    #[test]
    fn needs_three_snapshots() {
        let g = build_grid(5.0, 50).unwrap();
        let snaps = (0..2).map(|k| ReducedState::zeros(g, 0.1 * k as f64)).collect();
        let traj = Trajectory::from_snapshots(snaps, 0.1).unwrap();
        let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
        assert!(pde_residual(&traj, &prof).is_err());
    }

    #[test]
    fn wrong_equation_is_detected() {
        let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
        let sup = |intervals: usize| {
            let g = build_grid(3.0, intervals).unwrap();
            let h = g.dr();
            let snaps = (0..20)
                .map(|k| {
                    let t = k as f64 * h;
                    ReducedState::from_profiles(g, t, |r| r.sin() * t.cos() / r, |_| 0.0)
                })
                .collect();
            pde_residual(&Trajectory::from_snapshots(snaps, h).unwrap(), &prof)
                .unwrap()
                .sup()
        };
        let (coarse, fine) = (sup(64), sup(128));
        assert!(coarse > 0.1 && fine > 0.1);
        assert!((coarse / fine) < 1.5);
    }

    #[test]
    fn leapfrog_residual_is_second_order() {
        let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
        let run = |intervals: usize, stride: usize| {
            let g = build_grid(16.0, intervals).unwrap();
            let s0 = ReducedState::from_profiles(g, 0.0, |r| (-r * r).exp(), |_| 0.0);
            let traj = evolve_leapfrog(&s0, &prof, 2.0, stride).unwrap();
            pde_residual(&traj, &prof).unwrap().sup()
        };
        // at stride 1 the stencil is the scheme itself
        let dr = 16.0 / 512.0;
        assert!(run(512, 1) < dr * dr);
        // at stride 2 the time stencil is coarser than the scheme's
        let ratio = run(512, 2) / run(1024, 2);
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }
}
