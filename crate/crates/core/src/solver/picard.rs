//! Picard iteration of the Duhamel formula on the characteristic lattice.
//!
//! Each iterate is `w = w_free + (1/2) int_0^t int_{r-(t-t')}^{r+(t-t')} S(w_prev)`,
//! with the free part from the lattice d'Alembert formula, the time integral
//! by the trapezoid rule and the inner integral by differences of a
//! cumulative trapezoid of the (odd, zero-extended) source.

use crate::error::{invalid, Error, Result};
use crate::solver::dalembert::lattice_shift;
use crate::solver::leapfrog::BLOWUP_THRESHOLD;
use crate::solver::profile::{CoefficientProfile, Coefficients};
use crate::solver::trajectory::{level_integrands, Integrator, Trajectory};
use crate::state::ReducedState;

/// Consecutive gap increases that count as divergence.
pub const MAX_GAP_INCREASES: usize = 3;

#[derive(Debug, Clone)]
pub struct PicardSolution {
    pub trajectory: Trajectory,
    /// Sup-norm distance between successive iterates, one per iteration.
    pub gaps: Vec<f64>,
}

impl PicardSolution {
    pub fn final_gap(&self) -> f64 {
        self.gaps.last().copied().unwrap_or(0.0)
    }
}

/// Space-time lattice `levels x points`.
type Lattice = Vec<Vec<f64>>;

fn duhamel(sources: &Lattice, dr: f64) -> (Lattice, Lattice) {
    let levels = sources.len();
    let n_pts = sources[0].len();
    let last = n_pts as i64 - 1;
    let dt = dr;
    // cumulative[m][i] = int_0^{r_i} S^m dr
    let cumulative: Lattice = sources
        .iter()
        .map(|s| {
            let mut c = vec![0.0; n_pts];
            for i in 1..n_pts {
                c[i] = c[i - 1] + 0.5 * dr * (s[i - 1] + s[i]);
            }
            c
        })
        .collect();
    let cum_at = |m: usize, i: i64| -> f64 {
        let k = i.unsigned_abs() as i64;
        cumulative[m][k.min(last) as usize]
    };
    let src_at = |m: usize, i: i64| -> f64 {
        if i.abs() > last {
            0.0
        } else if i < 0 {
            -sources[m][(-i) as usize]
        } else {
            sources[m][i as usize]
        }
    };
    let mut w = vec![vec![0.0; n_pts]; levels];
    let mut v = vec![vec![0.0; n_pts]; levels];
    for n in 1..levels {
        for m in 0..=n {
            let weight = if m == 0 || m == n { 0.5 } else { 1.0 } * dt * 0.5;
            let d = (n - m) as i64;
            let (wn, vn) = (&mut w[n], &mut v[n]);
            for j in 1..n_pts {
                let jj = j as i64;
                if d > 0 {
                    wn[j] += weight * (cum_at(m, jj + d) - cum_at(m, jj - d));
                }
                vn[j] += weight * (src_at(m, jj + d) + src_at(m, jj - d));
            }
        }
    }
    (w, v)
}

/// Runs at most `iters` Picard iterations on `[t0, t0 + duration]` with `dt = dr`.
pub fn picard_solve(
    state0: &ReducedState,
    profile: &CoefficientProfile,
    duration: f64,
    iters: usize,
) -> Result<PicardSolution> {
    if iters == 0 {
        return invalid("Picard iteration needs iters >= 1");
    }
    if !(duration > 0.0 && duration.is_finite()) {
        return invalid(format!("duration must be positive, got {duration}"));
    }
    let grid = *state0.grid();
    let coef = Coefficients::new(profile, &grid)?;
    let dr = grid.dr();
    let steps = ((duration / dr).round() as usize).max(1);
    let t0 = state0.t();
    let time = |n: usize| t0 + n as f64 * dr;

    let mut free_w = Vec::with_capacity(steps + 1);
    let mut free_v = Vec::with_capacity(steps + 1);
    for n in 0..=steps {
        let (w, v) = lattice_shift(state0.w(), state0.wdot(), dr, n);
        free_w.push(w);
        free_v.push(v);
    }

    let mut current: Lattice = vec![vec![0.0; grid.len()]; steps + 1];
    let mut velocity: Lattice = vec![vec![0.0; grid.len()]; steps + 1];
    let mut gaps = Vec::new();
    let mut increases = 0;
    for _ in 0..iters {
        let sources: Lattice = current
            .iter()
            .enumerate()
            .map(|(n, w)| {
                let mut s = vec![0.0; grid.len()];
                coef.source_into(w, time(n), &mut s);
                s
            })
            .collect();
        let (dw, dv) = duhamel(&sources, dr);
        let mut gap = 0.0f64;
        let mut next = free_w.clone();
        for n in 0..=steps {
            velocity[n] = free_v[n].iter().zip(&dv[n]).map(|(a, b)| a + b).collect();
            for j in 0..grid.len() {
                next[n][j] += dw[n][j];
                let diff = (next[n][j] - current[n][j]).abs();
                gap = if diff.is_nan() { f64::NAN } else { gap.max(diff) };
            }
        }
        let previous = gaps.last().copied();
        gaps.push(gap);
        if !gap.is_finite() || gap > BLOWUP_THRESHOLD {
            return Err(Error::NoContraction { gaps });
        }
        match previous {
            Some(g) if gap > g => increases += 1,
            _ => increases = 0,
        }
        if increases >= MAX_GAP_INCREASES {
            return Err(Error::NoContraction { gaps });
        }
        current = next;
        if gap == 0.0 {
            break;
        }
    }

    let mut integrator = Integrator::new(dr, 1);
    let mut snapshots = Vec::with_capacity(steps + 1);
    let mut src = vec![0.0; grid.len()];
    for n in 0..=steps {
        coef.source_into(&current[n], time(n), &mut src);
        integrator.push(level_integrands(&coef, &grid, &current[n], &src, time(n)));
        let mut w = std::mem::take(&mut current[n]);
        let mut v = std::mem::take(&mut velocity[n]);
        w[0] = 0.0;
        v[0] = 0.0;
        snapshots.push(ReducedState::new(grid, time(n), w, v)?);
    }
    Ok(PicardSolution {
        trajectory: Trajectory::assemble(grid, dr, 1, snapshots, integrator.finish()),
        gaps,
    })
}
