//! Finite-difference checks of the intertwining identities
//!
//! ```text
//! (d_t^2 - d_r^2)(r u)        = r (u_tt - u_rr - 2 u_r / r)             (T3)
//! (d_tau^2 - d_s^2) w(T(s,tau)) = e^{2 tau} [(d_t^2 - d_r^2) w](T(s,tau)) (T4)
//! ```
//!
//! For T4 both sides are centered second differences with step `h`, so the
//! residual is pure discretization error of order `h^2`. For T3 the matched
//! stencils satisfy the identity exactly (a discrete product rule), so the
//! convergence measurement compares the differenced left side with the
//! closed-form right side when the test field supplies one.

use serde::{Deserialize, Serialize};

use crate::transform::chart::chart_forward;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Commutator {
    T3,
    T4,
}

/// Sample window and step of a commutator check. For `T3` the window is in
/// `(r, t)`; for `T4` it is in `(s, tau)` and `t0` anchors the chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutatorSetup {
    pub t0: f64,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub samples: (usize, usize),
    pub h: f64,
}

impl CommutatorSetup {
    /// `t0 = -12`, `s in [0.25, 1.5]`, `tau in [1.25, 2]`, `h = 0.01`; the
    /// image sits on the bump `exp(-(r-5)^2 - (t+5)^2)`.
    pub fn pinned_t4() -> Self {
        CommutatorSetup {
            t0: -12.0,
            x_range: (0.25, 1.5),
            y_range: (1.25, 2.0),
            samples: (26, 16),
            h: 0.01,
        }
    }

    /// `r in [0.5, 3]`, `t in [-1, 1]`, `h = 0.01`.
    pub fn pinned_t3() -> Self {
        CommutatorSetup {
            t0: 0.0,
            x_range: (0.5, 3.0),
            y_range: (-1.0, 1.0),
            samples: (26, 21),
            h: 0.01,
        }
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.h = h;
        self
    }

    fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (nx, ny) = self.samples;
        let lerp = |(a, b): (f64, f64), k: usize, n: usize| {
            if n <= 1 {
                a
            } else {
                a + (b - a) * k as f64 / (n - 1) as f64
            }
        };
        (0..ny).flat_map(move |k| (0..nx).map(move |j| (lerp(self.x_range, j, nx), lerp(self.y_range, k, ny))))
    }
}

type Field = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Smooth closed-form field `f(r, t)`, optionally with `f_r` and `f_tt - f_rr`.
pub struct TestField {
    value: Field,
    d_r: Option<Field>,
    wave: Option<Field>,
}

impl TestField {
    pub fn new(value: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        TestField {
            value: Box::new(value),
            d_r: None,
            wave: None,
        }
    }

    pub fn with_derivatives(
        mut self,
        d_r: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        wave: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.d_r = Some(Box::new(d_r));
        self.wave = Some(Box::new(wave));
        self
    }

    pub fn value(&self, r: f64, t: f64) -> f64 {
        (self.value)(r, t)
    }

    /// `exp(-(r - a)^2 - (t - b)^2)` with its closed-form derivatives.
    pub fn gaussian(a: f64, b: f64) -> Self {
        let g = move |r: f64, t: f64| (-(r - a).powi(2) - (t - b).powi(2)).exp();
        TestField::new(g).with_derivatives(
            move |r, t| -2.0 * (r - a) * g(r, t),
            // f_tt - f_rr = (4 (t-b)^2 - 4 (r-a)^2) f
            move |r, t| 4.0 * ((t - b).powi(2) - (r - a).powi(2)) * g(r, t),
        )
    }

    pub fn zero() -> Self {
        TestField::new(|_, _| 0.0).with_derivatives(|_, _| 0.0, |_, _| 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutatorResidual {
    pub h: f64,
    pub max: f64,
    /// Largest magnitude of either side, for scale.
    pub scale: f64,
}

fn wave_fd(f: &dyn Fn(f64, f64) -> f64, x: f64, y: f64, h: f64) -> f64 {
    // d_y^2 - d_x^2
    let c = f(x, y);
    (f(x, y + h) - 2.0 * c + f(x, y - h) - f(x + h, y) + 2.0 * c - f(x - h, y)) / (h * h)
}

/// `testfield` is `u` for [`Commutator::T3`] and `w` for [`Commutator::T4`].
pub fn commutator_residual(testfield: &TestField, which: Commutator, setup: &CommutatorSetup) -> CommutatorResidual {
    let h = setup.h;
    let mut max = 0.0f64;
    let mut scale = 0.0f64;
    for (x, y) in setup.nodes() {
        let (lhs, rhs) = match which {
            Commutator::T3 => {
                let u = |r: f64, t: f64| testfield.value(r, t);
                let w = |r: f64, t: f64| r * u(r, t);
                let lhs = wave_fd(&w, x, y, h);
                let rhs = match (&testfield.d_r, &testfield.wave) {
                    (Some(d_r), Some(wave)) => x * (wave(x, y) - 2.0 * d_r(x, y) / x),
                    _ => {
                        let u_r = (u(x + h, y) - u(x - h, y)) / (2.0 * h);
                        x * (wave_fd(&u, x, y, h) - 2.0 * u_r / x)
                    }
                };
                (lhs, rhs)
            }
            Commutator::T4 => {
                let t0 = setup.t0;
                let w = |r: f64, t: f64| testfield.value(r, t);
                let pulled = |s: f64, tau: f64| {
                    let (r, t) = chart_forward(s, tau, t0);
                    w(r, t)
                };
                let lhs = wave_fd(&pulled, x, y, h);
                let (r, t) = chart_forward(x, y, t0);
                let rhs = (2.0 * y).exp() * wave_fd(&w, r, t, h);
                (lhs, rhs)
            }
        };
        max = max.max((lhs - rhs).abs());
        scale = scale.max(lhs.abs()).max(rhs.abs());
    }
    CommutatorResidual { h, max, scale }
}

/// Residual ratio between steps `h` and `h / 2`.
pub fn commutator_convergence(
    testfield: &TestField,
    which: Commutator,
    setup: &CommutatorSetup,
) -> (CommutatorResidual, CommutatorResidual, f64) {
    let coarse = commutator_residual(testfield, which, setup);
    let fine = commutator_residual(testfield, which, &setup.with_step(0.5 * setup.h));
    let ratio = if fine.max == 0.0 {
        f64::INFINITY
    } else {
        coarse.max / fine.max
    };
    (coarse, fine, ratio)
}
