//! Free pullback of the nonlinear flow and its Cauchy defect.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::functionals::energy::energy_norm;
use crate::solver::dalembert::{dalembert_free, dalembert_free_backward};
use crate::solver::trajectory::{AccumulatorKind, Trajectory};
use crate::state::ReducedState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatteringDefect {
    pub t1: f64,
    pub t2: f64,
    /// `|| S_L(t2 - t1) U(t1) - U(t2) ||` in the energy norm.
    pub defect: f64,
    /// `int_{t1}^{t2} ||G||_{L^2} dt`, when the trajectory carries it.
    pub source_bound: Option<f64>,
    /// Free data at `t = 0` whose linear evolution matches the last snapshot.
    pub profile: ReducedState,
}

fn free_to(state: &ReducedState, t: f64) -> Result<ReducedState> {
    if t >= state.t() {
        dalembert_free(state, t)
    } else {
        dalembert_free_backward(state, t)
    }
}

pub fn scattering_pullback(traj: &Trajectory, t1: f64, t2: f64) -> Result<ScatteringDefect> {
    if !(t1 < t2) {
        return invalid(format!("scattering defect needs t1 < t2, got ({t1}, {t2})"));
    }
    let (Some(k1), Some(k2)) = (traj.index_of(t1), traj.index_of(t2)) else {
        return invalid(format!("times ({t1}, {t2}) are not both stored snapshots"));
    };
    let s1 = &traj.snapshots()[k1];
    let s2 = &traj.snapshots()[k2];
    let pushed = dalembert_free(s1, s2.t())?;
    let defect = energy_norm(&pushed.axpy(-1.0, s2)?);
    let source_bound = traj.accumulator(AccumulatorKind::SourceL1L2).map(|a| a.between(k1, k2));
    let profile = free_to(traj.last(), 0.0)?;
    Ok(ScatteringDefect {
        t1: s1.t(),
        t2: s2.t(),
        defect,
        source_bound,
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;
    use crate::solver::{evolve_leapfrog, CoefficientProfile};

    #[test]
    fn zero_and_linear_runs_have_no_defect() {
        let g = build_grid(30.0, 600).unwrap();
        let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
        let zero = evolve_leapfrog(&ReducedState::zeros(g, 0.0), &prof, 4.0, 10).unwrap();
        assert_eq!(scattering_pullback(&zero, 1.0, 2.0).unwrap().defect, 0.0);

        let s0 = ReducedState::from_profiles(g, 0.0, |r| (-(r - 2.0) * (r - 2.0)).exp(), |_| 0.0);
        let lin = evolve_leapfrog(&s0, &prof.linear(), 4.0, 10).unwrap();
        let d = scattering_pullback(&lin, 1.0, 4.0).unwrap();
        assert!(d.defect <= 1e-12 * energy_norm(&s0), "defect {}", d.defect);
        // the extracted profile is the data itself
        for (a, b) in d.profile.w().iter().zip(s0.w()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(scattering_pullback(&lin, 1.05, 4.0).is_err());
        assert!(scattering_pullback(&lin, 2.0, 1.0).is_err());
    }
}
