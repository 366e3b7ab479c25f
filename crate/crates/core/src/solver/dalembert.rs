//! Exact free evolution of the reduced field on the characteristic lattice.
//!
//! For a shift of `m` cells the solution of `w_tt = w_rr` with odd reflection
//! at the origin and zero extension past `r_max` is
//!
//! ```text
//! w_j(m)    = (W(j+m) + W(j-m)) / 2 + dr * sum_{k = j-m+1, step 2}^{j+m-1} V(k)
//! wdot_j(m) = (V(j+m) + V(j-m)) / 2
//!           + (W(j+m+1) - W(j+m-1) - W(j-m+1) + W(j-m-1)) / (4 dr)
//! ```
//!
//! which is d'Alembert's formula with the velocity integral taken by the
//! midpoint rule on a `2 dr` lattice. It reproduces the unit-Courant
//! leapfrog exactly (including its centered-difference velocity), so the
//! free flow and the linear scheme agree to rounding.

use crate::error::{invalid, Result};
use crate::state::ReducedState;

/// Field on the integers extended oddly below 0 and by zero beyond `J`.
struct Extended<'a> {
    values: &'a [f64],
}

impl Extended<'_> {
    fn at(&self, i: i64) -> f64 {
        let last = self.values.len() as i64 - 1;
        if i < 0 {
            let k = -i;
            if k > last {
                0.0
            } else {
                -self.values[k as usize]
            }
        } else if i > last {
            0.0
        } else {
            self.values[i as usize]
        }
    }
}

/// Parity prefix sums `P(i) = V(i) + V(i-2) + ...` over `[lo, hi]`.
struct ParitySums {
    lo: i64,
    sums: Vec<f64>,
}

impl ParitySums {
    fn new(field: &Extended<'_>, lo: i64, hi: i64) -> Self {
        let n = (hi - lo + 1) as usize;
        let mut sums = vec![0.0; n];
        for idx in 0..n {
            let v = field.at(lo + idx as i64);
            sums[idx] = if idx >= 2 { sums[idx - 2] + v } else { v };
        }
        ParitySums { lo, sums }
    }

    /// `sum_{k = a, a+2, ..., b}`, empty when `b < a`.
    fn range(&self, a: i64, b: i64) -> f64 {
        if b < a {
            return 0.0;
        }
        let hi = self.sums[(b - self.lo) as usize];
        let below = a - 2 - self.lo;
        if below < 0 {
            hi
        } else {
            hi - self.sums[below as usize]
        }
    }
}

/// Free evolution by exactly `m` lattice steps.
pub(crate) fn lattice_shift(w0: &[f64], v0: &[f64], dr: f64, m: usize) -> (Vec<f64>, Vec<f64>) {
    let n = w0.len();
    let wf = Extended { values: w0 };
    let vf = Extended { values: v0 };
    let m = m as i64;
    let lo = -m - 2;
    let hi = n as i64 + m + 2;
    let sums = ParitySums::new(&vf, lo, hi);
    let mut w = vec![0.0; n];
    let mut wdot = vec![0.0; n];
    for j in 1..n as i64 {
        let jp = j + m;
        let jm = j - m;
        w[j as usize] = 0.5 * (wf.at(jp) + wf.at(jm)) + dr * sums.range(jm + 1, jp - 1);
        wdot[j as usize] = 0.5 * (vf.at(jp) + vf.at(jm))
            + (wf.at(jp + 1) - wf.at(jp - 1) - wf.at(jm + 1) + wf.at(jm - 1)) / (4.0 * dr);
    }
    (w, wdot)
}

fn shift_by(state0: &ReducedState, delta: f64) -> Result<ReducedState> {
    let grid = *state0.grid();
    let cells = delta / grid.dr();
    let nearest = cells.round();
    let (w, wdot) = if (cells - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        lattice_shift(state0.w(), state0.wdot(), grid.dr(), nearest as usize)
    } else {
        let lo = cells.floor();
        let frac = cells - lo;
        let (wa, va) = lattice_shift(state0.w(), state0.wdot(), grid.dr(), lo as usize);
        let (wb, vb) = lattice_shift(state0.w(), state0.wdot(), grid.dr(), lo as usize + 1);
        let mix = |a: Vec<f64>, b: Vec<f64>| -> Vec<f64> {
            a.iter().zip(&b).map(|(x, y)| (1.0 - frac) * x + frac * y).collect()
        };
        (mix(wa, wb), mix(va, vb))
    };
    ReducedState::new(grid, state0.t() + delta, w, wdot)
}

/// Free evolution of `state0` forward to time `t >= state0.t()`.
///
/// Shifts that are not whole multiples of `dr` interpolate linearly between
/// the two neighbouring lattice shifts.
pub fn dalembert_free(state0: &ReducedState, t: f64) -> Result<ReducedState> {
    let delta = t - state0.t();
    if !(delta >= 0.0) || !delta.is_finite() {
        return invalid(format!(
            "free evolution runs forward only: target t = {t} precedes t0 = {} (use dalembert_free_backward)",
            state0.t()
        ));
    }
    shift_by(state0, delta)
}

/// Free evolution backward to time `t <= state0.t()`, by time reversal.
pub fn dalembert_free_backward(state0: &ReducedState, t: f64) -> Result<ReducedState> {
    let delta = state0.t() - t;
    if !(delta >= 0.0) || !delta.is_finite() {
        return invalid(format!("backward free evolution needs t = {t} <= t0 = {}", state0.t()));
    }
    let reversed = ReducedState::new(
        *state0.grid(),
        0.0,
        state0.w().to_vec(),
        state0.wdot().iter().map(|v| -v).collect(),
    )?;
    let (grid, _, w, wdot) = shift_by(&reversed, delta)?.into_parts();
    ReducedState::new(grid, t, w, wdot.into_iter().map(|v| -v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;

    #[test]
    fn zero_state_stays_zero() {
        let g = build_grid(10.0, 100).unwrap();
        let s = ReducedState::zeros(g, 0.0);
        let out = dalembert_free(&s, 3.3).unwrap();
        assert!(out.w().iter().chain(out.wdot()).all(|&x| x == 0.0));
        assert!((out.t() - 3.3).abs() < 1e-15);
    }

    #[test]
    fn linear_profile_is_preserved_away_from_origin() {
        let g = build_grid(16.0, 128).unwrap();
        let s = ReducedState::from_profiles(g, 0.0, |_| 1.0, |_| 0.0); // w = r
        let out = dalembert_free(&s, 2.0).unwrap();
        let j = (8.0 / g.dr()) as usize;
        assert!((out.w()[j] - 8.0).abs() < 1e-13);
        assert!(out.wdot()[j].abs() < 1e-13);
    }

    #[test]
    fn rejects_backward_target() {
        let g = build_grid(10.0, 100).unwrap();
        let s = ReducedState::zeros(g, 1.0);
        assert!(dalembert_free(&s, 0.5).is_err());
        assert!(dalembert_free_backward(&s, 1.5).is_err());
    }

    #[test]
    fn backward_inverts_forward() {
        let g = build_grid(20.0, 400).unwrap();
        let s = ReducedState::from_profiles(
            g,
            0.0,
            |r| (-(r - 5.0) * (r - 5.0)).exp(),
            |r| r * (-(r - 4.0) * (r - 4.0)).exp(),
        );
        let fwd = dalembert_free(&s, 3.0).unwrap();
        let back = dalembert_free_backward(&fwd, 0.0).unwrap();
        for (a, b) in back.w().iter().zip(s.w()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
