//! Uniform radial grid `r_j = j * dr`, `j = 0..=J`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Smallest number of intervals a grid may have.
pub const MIN_INTERVALS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    dr: f64,
    intervals: usize,
}

/// Builds a uniform grid on `[0, r_max]` with `intervals` cells.
pub fn build_grid(r_max: f64, intervals: usize) -> Result<RadialGrid> {
    if !(r_max.is_finite() && r_max > 0.0) {
        return invalid(format!("r_max must be positive, got {r_max}"));
    }
    if intervals < MIN_INTERVALS {
        return invalid(format!(
            "grid needs at least {MIN_INTERVALS} intervals, got {intervals}"
        ));
    }
    Ok(RadialGrid {
        dr: r_max / intervals as f64,
        intervals,
    })
}

impl RadialGrid {
    pub fn dr(&self) -> f64 {
        self.dr
    }

    /// Number of intervals `J`.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    /// Number of grid points, `J + 1`.
    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn r(&self, j: usize) -> f64 {
        j as f64 * self.dr
    }

    pub fn r_max(&self) -> f64 {
        self.r(self.intervals)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.intervals).map(move |j| self.r(j))
    }

    /// Same extent, `factor` times as many intervals.
    pub fn refined(&self, factor: usize) -> RadialGrid {
        RadialGrid {
            dr: self.dr / factor as f64,
            intervals: self.intervals * factor,
        }
    }
}
