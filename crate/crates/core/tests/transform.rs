use proptest::prelude::*;
use radialwave_core::solver::{evolve_leapfrog, evolve_two_sided, CoefficientProfile};
use radialwave_core::transform::{
    chart_forward, chart_inverse, phi_weight, push_forward, split_radius, transformed_budgets, transformed_energy,
    HyperboloidalChart,
};
use radialwave_core::{build_grid, synthesize_data, DataSpec, Error};

/// Free evolution of the unit Gaussian at rest, in `w = r u` form.
fn free_gaussian_w(r: f64, t: f64) -> f64 {
    let w0 = |x: f64| x * (-x * x).exp();
    0.5 * (w0(r + t) + w0(r - t))
}

#[test]
fn chart_examples() {
    assert_eq!(chart_forward(0.0, 0.0, -2.0), (0.0, -1.0));
    let (s, tau) = chart_inverse(0.0, 0.0, -2.0).unwrap();
    assert_eq!(s, 0.0);
    assert!((tau - 2f64.ln()).abs() < 1e-15);
    assert!(matches!(chart_inverse(3.0, 0.0, -2.0), Err(Error::OutsideCone { .. })));
}

#[test]
fn split_radius_examples() {
    let s0 = split_radius(-2f64.sqrt(), 0.0).unwrap();
    assert!((s0 - 2f64.sqrt().acosh()).abs() < 1e-15);
    assert!(split_radius(-2.0, 1.0).is_err());
    let chart = HyperboloidalChart::new(-3.0, 2.0, 16, -1.0, 0.5, 8).unwrap();
    assert_eq!(chart.s0(0.0).unwrap(), 3f64.acosh());
}

#[test]
fn chart_constructor_rejects_bad_anchor_and_ranges() {
    assert!(HyperboloidalChart::new(-0.5, 2.0, 16, 0.0, 1.0, 8).is_err());
    assert!(HyperboloidalChart::new(-2.0, 2.0, 16, 1.0, 1.0, 8).is_err());
    assert!(HyperboloidalChart::new(-2.0, 2.0, 16, 0.0, 1.0, 1).is_err());
}

#[test]
fn phi_weight_examples() {
    assert_eq!(phi_weight(0.0, 3.0), 1.0);
    let s = 1.5f64;
    assert!((phi_weight(s, 3.0) - (s / s.sinh()).powi(2)).abs() < 1e-15);
}

#[test]
fn push_forward_matches_closed_form_free_wave() {
    let t0 = -2.5;
    let grid = build_grid(12.0, 2048).unwrap();
    let s0 = synthesize_data(&DataSpec::gaussian(1.0, 1.0, 0.0), &grid).unwrap();
    let prof = CoefficientProfile::unit(3.0, 0.0).unwrap().linear();
    let chart = HyperboloidalChart::new(t0, 2.0, 64, -0.5, 1.0, 48).unwrap();
    let (_, t_lo, t_hi) = chart.image_extent();
    let traj = evolve_two_sided(&s0, &prof, -t_lo + 0.1, t_hi + 0.1, 1).unwrap();
    let vtraj = push_forward(&traj, &chart).unwrap();
    let mut worst = 0.0f64;
    for (k, slice) in vtraj.slices.iter().enumerate() {
        for j in 0..slice.grid.len() {
            let (r, t) = chart.forward(j, k);
            worst = worst.max((slice.sv[j] - free_gaussian_w(r, t)).abs());
        }
    }
    assert!(worst < 1e-4, "worst {worst}");
}

#[test]
fn chart_outside_the_window_is_a_coverage_error() {
    let grid = build_grid(6.0, 256).unwrap();
    let s0 = synthesize_data(&DataSpec::gaussian(1.0, 0.5, 0.0), &grid).unwrap();
    let traj = evolve_leapfrog(&s0, &CoefficientProfile::unit(3.0, 0.0).unwrap(), 2.0, 1).unwrap();
    let chart = HyperboloidalChart::new(-2.0, 3.0, 32, 0.0, 1.0, 8).unwrap();
    assert!(matches!(push_forward(&traj, &chart), Err(Error::Coverage { .. })));
}

#[test]
fn transformed_budgets_for_p4() {
    let t0 = -2.5;
    let grid = build_grid(20.0, 2560).unwrap();
    let s0 = synthesize_data(&DataSpec::gaussian(1.0, 0.5, 0.0), &grid).unwrap();
    let prof = CoefficientProfile::unit(4.0, 0.0).unwrap();
    let chart = HyperboloidalChart::new(t0, 2.5, 256, -0.5, 0.875, 176).unwrap();
    let (_, t_lo, t_hi) = chart.image_extent();
    let traj = evolve_two_sided(&s0, &prof, -t_lo + 0.1, t_hi + 0.1, 1).unwrap();
    let vtraj = push_forward(&traj, &chart).unwrap();
    let b = transformed_budgets(&vtraj, 4.0, true).unwrap();
    assert!(b.i2_dominated);
    assert!(b.initial_energy > 0.0);
    let diss = b.entry("transformed_dissipation").unwrap();
    assert_eq!(diss.bound, 5.0 * b.initial_energy);
    assert!(diss.pass, "{diss:?}");
    let i2 = b.entry("i2").unwrap();
    assert!(i2.pass && i2.bound == b.entry("i_prime").unwrap().value);
    assert!(transformed_budgets(&vtraj, 3.0, true).is_err());
    for slice in &vtraj.slices {
        let e = transformed_energy(slice, 4.0).unwrap();
        assert!(e.total.is_finite() && e.interior >= 0.0 && e.exterior >= -1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hyperboloid_identity(s in 0.0..20.0f64, tau in -3.0..3.0f64, t0 in -10.0..-1.01f64) {
        let (r, t) = chart_forward(s, tau, t0);
        let a = t - t0;
        prop_assert!(((a * a - r * r) - (2.0 * tau).exp()).abs() <= 1e-14 * a * a);
    }

    #[test]
    fn inverse_undoes_forward(s in 0.0..4.0f64, tau in -2.0..2.0f64, t0 in -10.0..-1.01f64) {
        let (r, t) = chart_forward(s, tau, t0);
        let (s2, tau2) = chart_inverse(r, t, t0).unwrap();
        prop_assert!((s2 - s).abs() <= 1e-12);
        prop_assert!((tau2 - tau).abs() <= 1e-12);
    }

    #[test]
    fn phi_weight_is_a_decreasing_fraction(s in 0.0..30.0f64, ds in 0.01..1.0f64, p in 3.0..4.99f64) {
        let a = phi_weight(s, p);
        prop_assert!(a > 0.0 && a <= 1.0);
        prop_assert!(phi_weight(s + ds, p) <= a);
    }
}
