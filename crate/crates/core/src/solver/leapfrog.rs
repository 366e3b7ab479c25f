//! Three-level leapfrog at unit Courant number.

use crate::error::{invalid, Error, Result};
use crate::solver::profile::{CoefficientProfile, Coefficients};
use crate::solver::trajectory::{level_integrands, merge_two_sided, Integrator, Trajectory};
use crate::state::ReducedState;

/// Field magnitude treated as numerical failure.
pub const BLOWUP_THRESHOLD: f64 = 1e12;

/// Number of steps covering `duration`, rounded up to a multiple of `stride`.
pub fn step_count(duration: f64, dt: f64, stride: usize) -> usize {
    let steps = ((duration / dt).round() as usize).max(1);
    steps.div_ceil(stride) * stride
}

fn check_finite(w: &[f64], step: usize, t: f64) -> Result<()> {
    if let Some((j, x)) = w.iter().enumerate().find(|(_, x)| !(x.abs() <= BLOWUP_THRESHOLD)) {
        return Err(Error::NumericalBlowup {
            step,
            time: t,
            detail: format!("|w| = {x} at grid index {j}"),
        });
    }
    Ok(())
}

/// Runs the scheme in direction `dir` (+1 forward, -1 backward in time).
/// Snapshots are ordered along the direction of integration.
fn integrate(
    state0: &ReducedState,
    profile: &CoefficientProfile,
    duration: f64,
    stride: usize,
    dir: f64,
) -> Result<Trajectory> {
    if !(duration > 0.0 && duration.is_finite()) {
        return invalid(format!("duration must be positive, got {duration}"));
    }
    if stride == 0 {
        return invalid("stride must be at least 1");
    }
    let grid = *state0.grid();
    let coef = Coefficients::new(profile, &grid)?;
    let dt = grid.dr();
    let dt2 = dt * dt;
    let last = grid.intervals();
    let total = step_count(duration, dt, stride);
    let t0 = state0.t();
    let time = |n: usize| t0 + dir * n as f64 * dt;

    let mut prev = state0.w().to_vec();
    let mut src = vec![0.0; grid.len()];
    coef.source_into(&prev, time(0), &mut src);

    // Taylor start written in lattice form; the ghost value past r_max is 0.
    let mut curr = vec![0.0; grid.len()];
    for j in 1..=last {
        let right = if j < last { prev[j + 1] } else { 0.0 };
        curr[j] = 0.5 * (right + prev[j - 1]) + dt * dir * state0.wdot()[j] + 0.5 * dt2 * src[j];
    }
    check_finite(&curr, 1, time(1))?;

    let mut integrator = Integrator::new(dt, stride);
    integrator.push(level_integrands(&coef, &grid, &prev, &src, time(0)));
    let mut snapshots = vec![state0.clone()];
    let mut next = vec![0.0; grid.len()];

    for n in 1..=total {
        let t = time(n);
        coef.source_into(&curr, t, &mut src);
        for j in 1..last {
            next[j] = curr[j + 1] + curr[j - 1] - prev[j] + dt2 * src[j];
        }
        next[last] = curr[last - 1];
        check_finite(&next, n + 1, time(n + 1))?;
        integrator.push(level_integrands(&coef, &grid, &curr, &src, t));
        if n % stride == 0 {
            let wdot: Vec<f64> = next
                .iter()
                .zip(&prev)
                .map(|(a, b)| dir * (a - b) / (2.0 * dt))
                .collect();
            snapshots.push(ReducedState::new(grid, t, curr.clone(), wdot)?);
        }
        std::mem::swap(&mut prev, &mut curr);
        std::mem::swap(&mut curr, &mut next);
    }

    Ok(Trajectory::assemble(grid, dt, stride, snapshots, integrator.finish()))
}

/// Evolves `state0` for `duration` with `dt = dr`, storing every `stride`-th level.
pub fn evolve_leapfrog(
    state0: &ReducedState,
    profile: &CoefficientProfile,
    duration: f64,
    stride: usize,
) -> Result<Trajectory> {
    integrate(state0, profile, duration, stride, 1.0)
}

/// Evolves `state0` backward over `back` and forward over `forward`, returning one
/// trajectory with increasing times. The backward half uses the time-reversed
/// scheme with the damping evaluated at the physical (earlier) times.
pub fn evolve_two_sided(
    state0: &ReducedState,
    profile: &CoefficientProfile,
    back: f64,
    forward: f64,
    stride: usize,
) -> Result<Trajectory> {
    let fwd = integrate(state0, profile, forward, stride, 1.0)?;
    if back == 0.0 {
        return Ok(fwd);
    }
    let bwd = integrate(state0, profile, back, stride, -1.0)?;
    Ok(merge_two_sided(bwd, fwd))
}
