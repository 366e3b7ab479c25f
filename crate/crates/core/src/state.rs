//! A time slice of the reduced field `w = r u` and its time derivative.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::grid::RadialGrid;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedState {
    grid: RadialGrid,
    t: f64,
    w: Vec<f64>,
    wdot: Vec<f64>,
}

impl ReducedState {
    pub fn new(grid: RadialGrid, t: f64, w: Vec<f64>, wdot: Vec<f64>) -> Result<Self> {
        if w.len() != grid.len() || wdot.len() != grid.len() {
            return invalid(format!(
                "state arrays have lengths {} and {}, grid has {} points",
                w.len(),
                wdot.len(),
                grid.len()
            ));
        }
        if w[0] != 0.0 || wdot[0] != 0.0 {
            return invalid("reduced field must vanish at r = 0");
        }
        if !t.is_finite() {
            return invalid(format!("state time must be finite, got {t}"));
        }
        Ok(ReducedState { grid, t, w, wdot })
    }

    pub fn zeros(grid: RadialGrid, t: f64) -> Self {
        ReducedState {
            grid,
            t,
            w: vec![0.0; grid.len()],
            wdot: vec![0.0; grid.len()],
        }
    }

    /// Samples `w = r u0(r)` and `wdot = r u1(r)`.
    pub fn from_profiles<F, G>(grid: RadialGrid, t: f64, u0: F, u1: G) -> Self
    where
        F: Fn(f64) -> f64,
        G: Fn(f64) -> f64,
    {
        let mut w = vec![0.0; grid.len()];
        let mut wdot = vec![0.0; grid.len()];
        for j in 1..grid.len() {
            let r = grid.r(j);
            w[j] = r * u0(r);
            wdot[j] = r * u1(r);
        }
        ReducedState { grid, t, w, wdot }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn wdot(&self) -> &[f64] {
        &self.wdot
    }

    pub fn into_parts(self) -> (RadialGrid, f64, Vec<f64>, Vec<f64>) {
        (self.grid, self.t, self.w, self.wdot)
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    /// `u_j = w_j / r_j`, with `u_0` from the even quadratic through `u_1, u_2`.
    pub fn u(&self) -> Vec<f64> {
        divide_by_r(&self.w, &self.grid)
    }

    pub fn u_t(&self) -> Vec<f64> {
        divide_by_r(&self.wdot, &self.grid)
    }

    /// `self + lambda * other`, keeping this state's time.
    pub fn axpy(&self, lambda: f64, other: &ReducedState) -> Result<ReducedState> {
        if other.grid != self.grid {
            return invalid("states live on different grids");
        }
        let w = self.w.iter().zip(&other.w).map(|(a, b)| a + lambda * b).collect();
        let wdot = self.wdot.iter().zip(&other.wdot).map(|(a, b)| a + lambda * b).collect();
        Ok(ReducedState {
            grid: self.grid,
            t: self.t,
            w,
            wdot,
        })
    }

    pub fn scaled(&self, lambda: f64) -> ReducedState {
        ReducedState {
            grid: self.grid,
            t: self.t,
            w: self.w.iter().map(|x| lambda * x).collect(),
            wdot: self.wdot.iter().map(|x| lambda * x).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.w.iter().chain(&self.wdot).fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

pub(crate) fn divide_by_r(w: &[f64], grid: &RadialGrid) -> Vec<f64> {
    let n = w.len();
    let mut u = vec![0.0; n];
    for j in 1..n {
        u[j] = w[j] / grid.r(j);
    }
    if n > 2 {
        u[0] = (4.0 * u[1] - u[2]) / 3.0;
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;

    #[test]
    fn origin_value_is_exact_for_even_quadratics() {
        let g = build_grid(1.0, 16).unwrap();
        let s = ReducedState::from_profiles(g, 0.0, |r| 2.0 - 3.0 * r * r, |_| 1.0);
        assert_eq!(s.w()[0], 0.0);
        assert!((s.u()[0] - 2.0).abs() < 1e-13);
        assert!((s.u_t()[0] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_shapes() {
        let g = build_grid(1.0, 8).unwrap();
        assert!(ReducedState::new(g, 0.0, vec![0.0; 8], vec![0.0; 9]).is_err());
        let mut w = vec![0.0; 9];
        w[0] = 1e-30;
        assert!(ReducedState::new(g, 0.0, w, vec![0.0; 9]).is_err());
    }
}
