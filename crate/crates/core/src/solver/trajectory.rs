//! Strided snapshot sequences with running space-time integrals.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::grid::RadialGrid;
use crate::solver::profile::Coefficients;
use crate::state::ReducedState;
use crate::stencil::{abs_pow, trapezoid, trapezoid_by};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AccumulatorKind {
    /// `int int e^{-kappa t} phi |u|^{p+1} dx dt`.
    Dissipation,
    /// `int int e^{-kappa t} ((p-1) phi - r phi') / r |u|^{p+1} dx dt`.
    Morawetz,
    /// `int ||G(., t)||_{L^2} dt`, the `L^1 L^2` norm of the nonlinearity.
    SourceL1L2,
    /// `int int |u|^{2(p-1)} dx dt`.
    SpacetimeLq,
}

impl AccumulatorKind {
    pub const ALL: [AccumulatorKind; 4] = [
        AccumulatorKind::Dissipation,
        AccumulatorKind::Morawetz,
        AccumulatorKind::SourceL1L2,
        AccumulatorKind::SpacetimeLq,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AccumulatorKind::Dissipation => "dissipation",
            AccumulatorKind::Morawetz => "morawetz",
            AccumulatorKind::SourceL1L2 => "source_l1l2",
            AccumulatorKind::SpacetimeLq => "spacetime_lq",
        }
    }

    fn index(&self) -> usize {
        *self as usize
    }
}

/// Running integral sampled at the snapshot times.
///
/// `increments[k]` is the integral over `[t_k, t_{k+1}]` summed on its own,
/// so small late-time contributions are not lost against a large total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Accumulator {
    pub kind: AccumulatorKind,
    pub cumulative: Vec<f64>,
    pub increments: Vec<f64>,
}

impl Accumulator {
    pub fn total(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    /// Integral between snapshot indices `a <= b`.
    pub fn between(&self, a: usize, b: usize) -> f64 {
        self.increments[a..b].iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    grid: RadialGrid,
    dt: f64,
    stride: usize,
    snapshots: Vec<ReducedState>,
    accumulators: Vec<Accumulator>,
}

impl Trajectory {
    pub(crate) fn assemble(
        grid: RadialGrid,
        dt: f64,
        stride: usize,
        snapshots: Vec<ReducedState>,
        accumulators: Vec<Accumulator>,
    ) -> Self {
        Trajectory {
            grid,
            dt,
            stride,
            snapshots,
            accumulators,
        }
    }

    /// Wraps externally produced snapshots with uniform spacing `spacing`.
    /// No accumulators are attached.
    pub fn from_snapshots(snapshots: Vec<ReducedState>, spacing: f64) -> Result<Self> {
        let Some(first) = snapshots.first() else {
            return invalid("trajectory needs at least one snapshot");
        };
        if !(spacing > 0.0) {
            return invalid(format!("snapshot spacing must be positive, got {spacing}"));
        }
        let grid = *first.grid();
        for (k, s) in snapshots.iter().enumerate() {
            if *s.grid() != grid {
                return invalid(format!("snapshot {k} lives on a different grid"));
            }
            let expected = first.t() + k as f64 * spacing;
            if (s.t() - expected).abs() > 1e-9 * spacing.max(expected.abs()) {
                return invalid(format!(
                    "snapshot {k} at t = {} breaks uniform spacing {spacing}",
                    s.t()
                ));
            }
        }
        Ok(Trajectory {
            grid,
            dt: spacing,
            stride: 1,
            snapshots,
            accumulators: Vec::new(),
        })
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    /// Step of the underlying scheme.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    /// Time between stored snapshots.
    pub fn spacing(&self) -> f64 {
        self.dt * self.stride as f64
    }

    pub fn snapshots(&self) -> &[ReducedState] {
        &self.snapshots
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|s| s.t()).collect()
    }

    pub fn first(&self) -> &ReducedState {
        &self.snapshots[0]
    }

    pub fn last(&self) -> &ReducedState {
        self.snapshots.last().expect("trajectory is never empty")
    }

    /// Index of the snapshot stored at time `t`, if any.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let t0 = self.first().t();
        let h = self.spacing();
        let k = ((t - t0) / h).round();
        if k < 0.0 || k as usize >= self.snapshots.len() {
            return None;
        }
        let k = k as usize;
        ((self.snapshots[k].t() - t).abs() <= 1e-9 * h).then_some(k)
    }

    pub fn at(&self, t: f64) -> Option<&ReducedState> {
        self.index_of(t).map(|k| &self.snapshots[k])
    }

    pub fn accumulator(&self, kind: AccumulatorKind) -> Option<&Accumulator> {
        self.accumulators.iter().find(|a| a.kind == kind)
    }

    pub fn accumulators(&self) -> &[Accumulator] {
        &self.accumulators
    }
}

/// Instantaneous integrands of the accumulators at one time level.
pub(crate) fn level_integrands(coef: &Coefficients, grid: &RadialGrid, w: &[f64], source: &[f64], t: f64) -> [f64; 4] {
    let p = coef.profile.p;
    let dr = grid.dr();
    let damp = coef.profile.damping(t);
    let n = grid.len();
    let dissipation = trapezoid_by(n, dr, |j| coef.source[j] * abs_pow(w[j], p + 1.0));
    let morawetz = trapezoid_by(n, dr, |j| coef.morawetz[j] * abs_pow(w[j], p + 1.0));
    let source_sq = trapezoid_by(n, dr, |j| source[j] * source[j]);
    let lq = trapezoid_by(n, dr, |j| coef.lq[j] * abs_pow(w[j], 2.0 * p - 2.0));
    [
        4.0 * PI * damp * dissipation,
        4.0 * PI * damp * morawetz,
        (4.0 * PI * source_sq).sqrt(),
        4.0 * PI * lq,
    ]
}

/// Trapezoid-in-time accumulation of level integrands, sampled every `stride` levels.
pub(crate) struct Integrator {
    dt: f64,
    stride: usize,
    last: Option<[f64; 4]>,
    running: [f64; 4],
    interval: [f64; 4],
    levels: usize,
    cumulative: Vec<[f64; 4]>,
    increments: Vec<[f64; 4]>,
}

impl Integrator {
    pub fn new(dt: f64, stride: usize) -> Self {
        Integrator {
            dt,
            stride,
            last: None,
            running: [0.0; 4],
            interval: [0.0; 4],
            levels: 0,
            cumulative: Vec::new(),
            increments: Vec::new(),
        }
    }

    /// Feeds the integrands of the next time level.
    pub fn push(&mut self, f: [f64; 4]) {
        if let Some(prev) = self.last {
            for i in 0..4 {
                let inc = 0.5 * self.dt * (prev[i] + f[i]);
                self.running[i] += inc;
                self.interval[i] += inc;
            }
        }
        if self.levels % self.stride == 0 {
            self.cumulative.push(self.running);
            if self.levels > 0 {
                self.increments.push(self.interval);
            }
            self.interval = [0.0; 4];
        }
        self.last = Some(f);
        self.levels += 1;
    }

    pub fn finish(self) -> Vec<Accumulator> {
        AccumulatorKind::ALL
            .iter()
            .map(|&kind| Accumulator {
                kind,
                cumulative: self.cumulative.iter().map(|c| c[kind.index()]).collect(),
                increments: self.increments.iter().map(|c| c[kind.index()]).collect(),
            })
            .collect()
    }
}

/// Joins a backward run (snapshots ordered by decreasing time, both
/// runs sharing the same first state) with a forward run.
pub(crate) fn merge_two_sided(backward: Trajectory, forward: Trajectory) -> Trajectory {
    let mut snapshots: Vec<ReducedState> = backward.snapshots.into_iter().skip(1).rev().collect();
    let offset = snapshots.len();
    snapshots.extend(forward.snapshots);
    let accumulators = AccumulatorKind::ALL
        .iter()
        .map(|&kind| {
            let back = backward
                .accumulators
                .iter()
                .find(|a| a.kind == kind)
                .expect("backward accumulator");
            let fwd = forward
                .accumulators
                .iter()
                .find(|a| a.kind == kind)
                .expect("forward accumulator");
            let mut increments: Vec<f64> = back.increments.iter().rev().copied().collect();
            increments.extend(&fwd.increments);
            let back_total = back.total();
            let mut cumulative: Vec<f64> = back.cumulative.iter().skip(1).rev().map(|c| back_total - c).collect();
            cumulative.extend(fwd.cumulative.iter().map(|c| back_total + c));
            debug_assert_eq!(cumulative.len(), offset + fwd.cumulative.len());
            Accumulator {
                kind,
                cumulative,
                increments,
            }
        })
        .collect();
    Trajectory {
        grid: forward.grid,
        dt: forward.dt,
        stride: forward.stride,
        snapshots,
        accumulators,
    }
}

/// Time-trapezoid of a per-snapshot series.
pub fn integrate_series(values: &[f64], spacing: f64) -> f64 {
    trapezoid(values, spacing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrator_matches_trapezoid() {
        let dt = 0.1;
        let mut acc = Integrator::new(dt, 2);
        let f: Vec<f64> = (0..=8).map(|n| (n as f64 * dt).powi(2)).collect();
        for &v in &f {
            acc.push([v, 1.0, 0.0, 2.0 * v]);
        }
        let out = acc.finish();
        let diss = &out[0];
        assert_eq!(diss.cumulative.len(), 5);
        assert_eq!(diss.increments.len(), 4);
        assert!((diss.total() - trapezoid(&f, dt)).abs() < 1e-15);
        assert!((diss.between(0, 4) - diss.total()).abs() < 1e-15);
        assert!((out[1].total() - 0.8).abs() < 1e-15);
    }
}
