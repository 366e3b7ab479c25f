//! Physical and analytic constants governing one experiment.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    /// Nonlinearity exponent, `3 <= p < 5`.
    pub p: f64,
    /// Weight exponent of the data measure `(1+|x|)^{1+2 eps} dx`.
    pub epsilon: f64,
    /// Bound on the weighted data norms.
    pub a_bound: f64,
    /// Damping exponent in `e^{-kappa t}`.
    pub kappa: f64,
    /// Exterior decay exponent.
    pub delta: f64,
    /// Exterior decay amplitude.
    pub b1: f64,
    /// Exterior radius.
    pub r_ext: f64,
    /// Hyperboloid anchor time.
    pub t0: f64,
}

/// `delta = min(eps/2, 1/10)`.
pub fn derived_delta(epsilon: f64) -> f64 {
    (0.5 * epsilon).min(0.1)
}

/// `t0 = -sqrt(R^2 + 1) - 1`.
pub fn derived_anchor(r_ext: f64) -> f64 {
    -(r_ext * r_ext + 1.0).sqrt() - 1.0
}

impl Parameters {
    pub fn new(
        p: f64,
        epsilon: f64,
        a_bound: f64,
        kappa: f64,
        delta: f64,
        b1: f64,
        r_ext: f64,
        t0: f64,
    ) -> Result<Self> {
        let params = Parameters {
            p,
            epsilon,
            a_bound,
            kappa,
            delta,
            b1,
            r_ext,
            t0,
        };
        params.validate()?;
        Ok(params)
    }

    /// Fills `delta` and `t0` from `epsilon` and `R`.
    pub fn derived(p: f64, epsilon: f64, a_bound: f64, kappa: f64, b1: f64, r_ext: f64) -> Result<Self> {
        Self::new(
            p,
            epsilon,
            a_bound,
            kappa,
            derived_delta(epsilon),
            b1,
            r_ext,
            derived_anchor(r_ext),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(3.0..5.0).contains(&self.p) {
            return invalid(format!("p must satisfy 3 <= p < 5, got {}", self.p));
        }
        if !(self.epsilon > 0.0) {
            return invalid(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if !(self.a_bound > 0.0) {
            return invalid(format!("A must be positive, got {}", self.a_bound));
        }
        if !(self.kappa >= 0.0) {
            return invalid(format!("kappa must be non-negative, got {}", self.kappa));
        }
        // The derived value min(eps/2, 1/10) sits on the 1/10 cap, so that end is closed.
        if !(self.delta > 0.0 && self.delta < self.epsilon && self.delta <= 0.1) {
            return invalid(format!(
                "delta must satisfy 0 < delta < epsilon and delta <= 1/10, got {}",
                self.delta
            ));
        }
        if !(self.b1 > 0.0) {
            return invalid(format!("B1 must be positive, got {}", self.b1));
        }
        if !(self.r_ext >= 1.0) {
            return invalid(format!("R must be at least 1, got {}", self.r_ext));
        }
        if !(self.t0 < -1.0) {
            return invalid(format!("t0 must be below -1, got {}", self.t0));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_rules() {
        let params = Parameters::derived(3.0, 0.5, 1.0, 0.0, 1.0, 2.0).unwrap();
        assert_eq!(params.delta, 0.1);
        assert!((params.t0 - (-(5.0f64).sqrt() - 1.0)).abs() < 1e-15);

        let small = Parameters::derived(4.0, 0.1, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((small.delta - 0.05).abs() < 1e-15);
        assert!((small.t0 + 2f64.sqrt() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Parameters::derived(5.0, 0.5, 1.0, 0.0, 1.0, 2.0).is_err());
        assert!(Parameters::derived(2.9, 0.5, 1.0, 0.0, 1.0, 2.0).is_err());
        assert!(Parameters::derived(3.0, 0.0, 1.0, 0.0, 1.0, 2.0).is_err());
        assert!(Parameters::derived(3.0, 0.5, 1.0, -1.0, 1.0, 2.0).is_err());
        assert!(Parameters::derived(3.0, 0.5, 1.0, 0.0, 1.0, 0.5).is_err());
        assert!(Parameters::new(3.0, 0.05, 1.0, 0.0, 0.05, 1.0, 2.0, -4.0).is_err());
        assert!(Parameters::new(3.0, 0.5, 1.0, 0.0, 0.11, 1.0, 2.0, -4.0).is_err());
        assert!(Parameters::new(3.0, 0.5, 1.0, 0.0, 0.05, 1.0, 2.0, -0.5).is_err());
    }
}
