//! Initial-data families and checks of the weighted-norm hypotheses.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::grid::RadialGrid;
use crate::state::ReducedState;
use crate::stencil::{derivative, trapezoid_by};

/// Relative size below which a Gaussian counts as truncated.
pub const TRUNCATION_LEVEL: f64 = 1e-12;

/// Tolerance on the pointwise tail ratio.
pub const TAIL_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Profile {
    #[default]
    Zero,
    /// `a * exp(-((r - r_c) / sigma)^2)`.
    Gaussian {
        amplitude: f64,
        width: f64,
        #[serde(default)]
        center: f64,
    },
    /// `a (1+r)^{-1-eps-eta}` for positions and `a (1+r)^{-2-eps-eta}` for
    /// velocities, smoothly tapered to zero on `[0.75 cutoff, cutoff]`.
    Tail {
        epsilon: f64,
        eta: f64,
        amplitude: f64,
        cutoff: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Position,
    Velocity,
}

impl Profile {
    fn validate(&self) -> Result<()> {
        match *self {
            Profile::Zero => Ok(()),
            Profile::Gaussian {
                amplitude,
                width,
                center,
            } => {
                if !(width > 0.0) || !amplitude.is_finite() || !(center >= 0.0) {
                    return invalid(format!(
                        "gaussian needs width > 0, finite amplitude, center >= 0 (got a={amplitude}, sigma={width}, r_c={center})"
                    ));
                }
                Ok(())
            }
            Profile::Tail {
                epsilon,
                eta,
                amplitude,
                cutoff,
            } => {
                if !(eta > 0.0) {
                    return invalid(format!(
                        "tail family needs eta > 0 for a finite weighted norm, got {eta}"
                    ));
                }
                if !(epsilon > 0.0) || !(cutoff > 0.0) || !amplitude.is_finite() {
                    return invalid(format!(
                        "tail family needs epsilon > 0, cutoff > 0 (got eps={epsilon}, cutoff={cutoff})"
                    ));
                }
                Ok(())
            }
        }
    }

    /// Radius beyond which the profile is negligible (exactly zero for tails).
    pub fn cutoff(&self) -> f64 {
        match *self {
            Profile::Zero => 0.0,
            Profile::Gaussian { width, center, .. } => center + width * (1.0 / TRUNCATION_LEVEL).ln().sqrt(),
            Profile::Tail { cutoff, .. } => cutoff,
        }
    }

    fn eval(&self, r: f64, slot: Slot) -> f64 {
        match *self {
            Profile::Zero => 0.0,
            Profile::Gaussian {
                amplitude,
                width,
                center,
            } => {
                let z = (r - center) / width;
                amplitude * (-z * z).exp()
            }
            Profile::Tail {
                epsilon,
                eta,
                amplitude,
                cutoff,
            } => {
                let base = match slot {
                    Slot::Position => 1.0 + epsilon + eta,
                    Slot::Velocity => 2.0 + epsilon + eta,
                };
                amplitude * (1.0 + r).powf(-base) * taper(r, cutoff)
            }
        }
    }
}

/// `C^inf` step: 1 below `0.75 c`, 0 above `c`.
fn taper(r: f64, cutoff: f64) -> f64 {
    let x = (r - 0.75 * cutoff) / (0.25 * cutoff);
    if x <= 0.0 {
        return 1.0;
    }
    if x >= 1.0 {
        return 0.0;
    }
    let psi = |y: f64| if y > 0.0 { (-1.0 / y).exp() } else { 0.0 };
    let a = psi(1.0 - x);
    a / (a + psi(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct DataSpec {
    #[serde(default)]
    pub position: Profile,
    #[serde(default)]
    pub velocity: Profile,
}

impl DataSpec {
    pub fn zero() -> Self {
        DataSpec::default()
    }

    pub fn gaussian(amplitude: f64, width: f64, center: f64) -> Self {
        DataSpec {
            position: Profile::Gaussian {
                amplitude,
                width,
                center,
            },
            velocity: Profile::Zero,
        }
    }

    /// Position and velocity tails with shared parameters.
    pub fn tail(epsilon: f64, eta: f64, amplitude: f64, cutoff: f64) -> Self {
        let p = Profile::Tail {
            epsilon,
            eta,
            amplitude,
            cutoff,
        };
        DataSpec {
            position: p,
            velocity: p,
        }
    }

    pub fn cutoff(&self) -> f64 {
        self.position.cutoff().max(self.velocity.cutoff())
    }

    pub fn validate(&self) -> Result<()> {
        self.position.validate()?;
        self.velocity.validate()
    }

    pub fn u0(&self, r: f64) -> f64 {
        self.position.eval(r, Slot::Position)
    }

    pub fn u1(&self, r: f64) -> f64 {
        self.velocity.eval(r, Slot::Velocity)
    }
}

/// Samples the data at `t = 0`, enforcing the truncation rule `cutoff <= r_max / 2`.
pub fn synthesize_data(spec: &DataSpec, grid: &RadialGrid) -> Result<ReducedState> {
    spec.validate()?;
    let cutoff = spec.cutoff();
    if cutoff > 0.5 * grid.r_max() {
        return invalid(format!(
            "data cutoff radius {cutoff} exceeds r_max/2 = {}",
            0.5 * grid.r_max()
        ));
    }
    Ok(ReducedState::from_profiles(*grid, 0.0, |r| spec.u0(r), |r| spec.u1(r)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedNorms {
    /// `||grad u0||_{L^2(dmu)}` combined with `||u1||_{L^2(dmu)}`.
    pub norm_mu: f64,
    /// Square root of `int (|u0'|^2 + |u1|^2) r^{3+2eps} dr`.
    pub norm_r: f64,
}

/// Weighted norms of data at `t = 0`.
pub fn weighted_data_norm(state: &ReducedState, epsilon: f64) -> Result<WeightedNorms> {
    if state.t() != 0.0 {
        return invalid(format!("weighted norms need data at t = 0, got t = {}", state.t()));
    }
    let grid = state.grid();
    let dr = grid.dr();
    let du0 = derivative(&state.u(), dr);
    let u1 = state.u_t();
    let density = |j: usize| du0[j] * du0[j] + u1[j] * u1[j];
    let mu = trapezoid_by(grid.len(), dr, |j| {
        let r = grid.r(j);
        density(j) * r * r * (1.0 + r).powf(1.0 + 2.0 * epsilon)
    });
    let radial = trapezoid_by(grid.len(), dr, |j| {
        let r = grid.r(j);
        density(j) * r.powf(3.0 + 2.0 * epsilon)
    });
    Ok(WeightedNorms {
        norm_mu: (4.0 * PI * mu).sqrt(),
        norm_r: radial.sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailReport {
    pub max_ratio: f64,
    /// Radius attaining the maximum (0 when the exterior is empty).
    pub r_at_max: f64,
    pub pass: bool,
}

/// Largest `|u0(r)| r^{1+eps} / A` over grid points with `r >= 1`.
pub fn pointwise_tail_check(state: &ReducedState, a_bound: f64, epsilon: f64) -> Result<TailReport> {
    if state.t() != 0.0 {
        return invalid(format!("tail check needs data at t = 0, got t = {}", state.t()));
    }
    let grid = state.grid();
    let mut best = (0.0, 0.0);
    for (j, wj) in state.w().iter().enumerate() {
        let r = grid.r(j);
        if r < 1.0 {
            continue;
        }
        let ratio = (wj / r).abs() * r.powf(1.0 + epsilon) / a_bound;
        if ratio > best.0 {
            best = (ratio, r);
        }
    }
    Ok(TailReport {
        max_ratio: best.0,
        r_at_max: best.1,
        pass: best.0 <= 1.0 + TAIL_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;

    #[test]
    fn zero_data() {
        let g = build_grid(10.0, 64).unwrap();
        let s = synthesize_data(&DataSpec::zero(), &g).unwrap();
        assert!(s.w().iter().chain(s.wdot()).all(|&x| x == 0.0));
        let n = weighted_data_norm(&s, 0.5).unwrap();
        assert_eq!((n.norm_mu, n.norm_r), (0.0, 0.0));
        let tail = pointwise_tail_check(&s, 1.0, 0.5).unwrap();
        assert_eq!(tail.max_ratio, 0.0);
        assert!(tail.pass);
    }

    #[test]
    fn gaussian_spot_value() {
        let g = build_grid(40.0, 4096).unwrap();
        let s = synthesize_data(&DataSpec::gaussian(1.0, 1.0, 0.0), &g).unwrap();
        let j1 = (1.0 / g.dr()).round() as usize;
        let r = g.r(j1);
        assert!((s.w()[j1] - r * (-r * r).exp()).abs() < 1e-15);
        let g8 = build_grid(16.0, 128).unwrap();
        let s8 = synthesize_data(&DataSpec::gaussian(1.0, 1.0, 0.0), &g8).unwrap();
        assert!((s8.w()[8] - (-1.0f64).exp()).abs() < 1e-15);
        assert!((s8.w()[8] - 0.3678794).abs() < 1e-7);
    }

    #[test]
    fn tail_requires_positive_margin() {
        let g = build_grid(40.0, 256).unwrap();
        assert!(synthesize_data(&DataSpec::tail(0.5, 0.0, 1.0, 10.0), &g).is_err());
        assert!(synthesize_data(&DataSpec::tail(0.5, -0.1, 1.0, 10.0), &g).is_err());
        assert!(synthesize_data(&DataSpec::tail(0.5, 0.5, 1.0, 10.0), &g).is_ok());
    }

    #[test]
    fn truncation_rule() {
        let g = build_grid(8.0, 256).unwrap();
        assert!(synthesize_data(&DataSpec::gaussian(1.0, 1.0, 0.0), &g).is_err());
        assert!(synthesize_data(&DataSpec::gaussian(1.0, 0.5, 0.0), &g).is_ok());
    }

    #[test]
    fn taper_is_a_smooth_step() {
        assert_eq!(taper(0.5, 4.0), 1.0);
        assert_eq!(taper(3.0, 4.0), 1.0);
        assert_eq!(taper(4.0, 4.0), 0.0);
        assert!((taper(3.5, 4.0) - 0.5).abs() < 1e-15);
        let mut prev = 1.0;
        for k in 0..=100 {
            let v = taper(3.0 + k as f64 / 100.0, 4.0);
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn algebraic_decay_fails_tail_check() {
        let g = build_grid(200.0, 2000).unwrap();
        let s = ReducedState::from_profiles(g, 0.0, |r| 1.0 / (1.0 + r), |_| 0.0);
        let report = pointwise_tail_check(&s, 1.0, 0.5).unwrap();
        assert!(!report.pass);
        assert!(report.r_at_max > 190.0);
    }
}
