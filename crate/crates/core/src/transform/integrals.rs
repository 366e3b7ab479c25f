//! Integrals on the transformed side: the slice energy `E(tau)`, the
//! space-time budgets `I'`, `I_2` and friends, and the change of variables
//! `dx dt = 4 pi e^{4 tau} sinh^2 s ds dtau`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::functionals::budget::{BudgetEntry, MORAWETZ_ENVELOPE};
use crate::solver::profile::{hyperbolic_morawetz_weight, phi_weight};
use crate::stencil::{abs_pow, trapezoid, trapezoid_by};
use crate::transform::chart::{chart_forward, split_radius, HyperboloidalChart};
use crate::transform::push::{TransformedSlice, TransformedTrajectory};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformedEnergy {
    pub tau: f64,
    pub s0: f64,
    /// Full energy including the potential term.
    pub total: f64,
    /// Quadratic part over `s < s0`.
    pub interior: f64,
    /// Quadratic part over `s > s0`.
    pub exterior: f64,
}

/// Trapezoid of grid samples over `[0, x]` (`x` inside the grid), with the
/// partial last cell integrated against the linear interpolant.
fn trapezoid_to(values: &[f64], h: f64, x: f64) -> f64 {
    let n = values.len();
    let pos = (x / h).clamp(0.0, (n - 1) as f64);
    let k = pos.floor() as usize;
    let full = trapezoid(&values[..=k], h);
    if k + 1 >= n {
        return full;
    }
    let frac = pos - k as f64;
    let end = values[k] + frac * (values[k + 1] - values[k]);
    full + 0.5 * frac * h * (values[k] + end)
}

/// `E(tau) = int (|v_s|^2/2 + |v_tau|^2/2 + e^{-(p-3)tau} phi |v|^{p+1}/(p+1)) dy`,
/// with the quadratic part split at `s0(tau)`.
pub fn transformed_energy(slice: &TransformedSlice, p: f64) -> Result<TransformedEnergy> {
    let s0 = split_radius(slice.t0, slice.tau)?;
    let grid = &slice.grid;
    let ds = grid.dr();
    let quad: Vec<f64> = (0..grid.len())
        .map(|j| {
            let a = slice.sv_s[j] - slice.v[j];
            let b = slice.sv_tau[j];
            2.0 * PI * (a * a + b * b)
        })
        .collect();
    let damp = (-(p - 3.0) * slice.tau).exp();
    let potential = 4.0 * PI / (p + 1.0)
        * damp
        * trapezoid_by(grid.len(), ds, |j| {
            let s = grid.r(j);
            phi_weight(s, p) * abs_pow(slice.v[j], p + 1.0) * s * s
        });
    let whole = trapezoid(&quad, ds);
    let interior = trapezoid_to(&quad, ds, s0.min(grid.r_max()));
    Ok(TransformedEnergy {
        tau: slice.tau,
        s0,
        total: whole + potential,
        interior,
        exterior: whole - interior,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformedBudgets {
    /// Energy at the first slice with `tau >= 0`.
    pub initial_energy: f64,
    pub entries: Vec<BudgetEntry>,
    /// `I_2` integrand never exceeds the `I'` integrand on the lattice.
    pub i2_dominated: bool,
}

impl TransformedBudgets {
    pub fn entry(&self, name: &str) -> Option<&BudgetEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Budgets over the `tau >= 0` slices: `I'`, the hyperbolic Morawetz integral,
/// `I_2` and, when `with_decay`, the dissipation integral against
/// `(p+1)/(p-3) E(0)`.
pub fn transformed_budgets(vtraj: &TransformedTrajectory, p: f64, with_decay: bool) -> Result<TransformedBudgets> {
    if !(3.0..5.0).contains(&p) {
        return invalid(format!("p must satisfy 3 <= p < 5, got {p}"));
    }
    if with_decay && p <= 3.0 {
        return invalid("the (p+1)/(p-3) dissipation bound is void at p = 3");
    }
    let slices: Vec<&TransformedSlice> = vtraj.slices.iter().filter(|s| s.tau >= 0.0).collect();
    let Some(first) = slices.first() else {
        return invalid("transformed trajectory has no slice with tau >= 0");
    };
    let e0 = transformed_energy(first, p)?.total;
    let grid = first.grid;
    let ds = grid.dr();
    let mut i2_dominated = true;
    let mut series = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    for sl in &slices {
        let damp = (-(p - 3.0) * sl.tau).exp();
        let mut acc = [0.0; 4];
        let mut values = [
            vec![0.0; grid.len()],
            vec![0.0; grid.len()],
            vec![0.0; grid.len()],
            vec![0.0; grid.len()],
        ];
        for j in 0..grid.len() {
            let s = grid.r(j);
            let phi = phi_weight(s, p);
            let v = sl.v[j];
            let lq = abs_pow(v, 2.0 * (p - 1.0));
            let i_prime = damp * phi * lq;
            let i2 = damp * damp * abs_pow(phi, (2.0 * p - 4.0) / (p - 1.0)) * lq;
            if i2 > i_prime {
                i2_dominated = false;
            }
            let mor = if j == 0 {
                0.0
            } else {
                damp * hyperbolic_morawetz_weight(s, p) * abs_pow(v, p + 1.0)
            };
            let diss = damp * phi * abs_pow(v, p + 1.0);
            let dy = 4.0 * PI * s * s;
            values[0][j] = i_prime * dy;
            values[1][j] = mor * dy;
            values[2][j] = diss * dy;
            values[3][j] = i2 * dy;
        }
        for i in 0..4 {
            acc[i] = trapezoid(&values[i], ds);
            series[i].push(acc[i]);
        }
    }
    let dtau = vtraj.chart.dtau();
    let total = |i: usize| trapezoid(&series[i], dtau);
    let mut entries = vec![
        BudgetEntry::new("i_prime", total(0), f64::INFINITY),
        BudgetEntry::new("transformed_morawetz", total(1), MORAWETZ_ENVELOPE * e0),
    ];
    if with_decay {
        entries.push(BudgetEntry::new(
            "transformed_dissipation",
            total(2),
            (p + 1.0) / (p - 3.0) * e0,
        ));
    }
    let i_prime = total(0);
    entries.push(BudgetEntry::new("i2", total(3), i_prime));
    Ok(TransformedBudgets {
        initial_energy: e0,
        entries,
        i2_dominated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChangeOfVariables {
    pub physical: f64,
    pub transformed: f64,
    pub relative_gap: f64,
}

/// Compares `int int_Omega g dx dt` (physical lattice with `intervals` cells
/// on `[0, r_max]` and `dt = dr` on `[t0, t_max]`) with
/// `int_0^inf int_0^inf g(T(s,tau)) 4 pi e^{4 tau} sinh^2 s ds dtau` on the
/// chart lattice. `Omega = {r^2 < (t - t0)^2 - 1, t > t0}` is the image of `tau > 0`.
pub fn change_of_variables(
    g: &dyn Fn(f64, f64) -> f64,
    t0: f64,
    r_max: f64,
    t_max: f64,
    intervals: usize,
    chart: &HyperboloidalChart,
) -> Result<ChangeOfVariables> {
    if !(chart.tau(0) == 0.0) {
        return invalid("change of variables needs a chart starting at tau = 0");
    }
    if !(r_max > 0.0 && t_max > t0 + 1.0) || intervals < 8 {
        return invalid("physical window is empty");
    }
    let dr = r_max / intervals as f64;
    let steps = ((t_max - t0) / dr).ceil() as usize;
    let mut inner = Vec::with_capacity(steps + 1);
    let mut row = vec![0.0; intervals + 1];
    for n in 0..=steps {
        let t = t0 + n as f64 * dr;
        let q = (t - t0) * (t - t0) - 1.0;
        if q <= 0.0 {
            inner.push(0.0);
            continue;
        }
        let edge = q.sqrt().min(r_max);
        for (j, x) in row.iter_mut().enumerate() {
            let r = j as f64 * dr;
            *x = 4.0 * PI * r * r * g(r, t);
        }
        inner.push(trapezoid_to(&row, dr, edge));
    }
    let physical = trapezoid(&inner, dr);

    let s_grid = chart.s_grid();
    let rows: Vec<f64> = (0..chart.tau_len())
        .map(|k| {
            let tau = chart.tau(k);
            trapezoid_by(s_grid.len(), s_grid.dr(), |j| {
                let s = s_grid.r(j);
                let (r, t) = chart_forward(s, tau, t0);
                g(r, t) * 4.0 * PI * (4.0 * tau).exp() * s.sinh().powi(2)
            })
        })
        .collect();
    let transformed = trapezoid(&rows, chart.dtau());
    Ok(ChangeOfVariables {
        physical,
        transformed,
        relative_gap: (physical - transformed).abs() / physical.abs().max(f64::MIN_POSITIVE),
    })
}
