use proptest::prelude::*;
use radialwave_core::functionals::{
    calibrate_b1, dissipation_check, energy, exterior_decay_report, mixed_norm, morawetz_budget, morawetz_functional,
    scattering_pullback, BudgetEntry, Region,
};
use radialwave_core::solver::{evolve_leapfrog, CoefficientProfile, Trajectory};
use radialwave_core::{build_grid, synthesize_data, DataSpec, Parameters, ReducedState};

fn gaussian(r_max: f64, n: usize, a: f64, width: f64, center: f64) -> ReducedState {
    synthesize_data(&DataSpec::gaussian(a, width, center), &build_grid(r_max, n).unwrap()).unwrap()
}

fn run(r_max: f64, n: usize, prof: &CoefficientProfile, t: f64, stride: usize) -> Trajectory {
    evolve_leapfrog(&gaussian(r_max, n, 1.0, 1.0, 0.0), prof, t, stride).unwrap()
}

#[test]
fn budget_entry_pass_flag() {
    assert!(BudgetEntry::new("x", 0.5, 1.0).pass);
    assert!(!BudgetEntry::new("x", 2.0, 1.0).pass);
    assert!(BudgetEntry::new("x", 1e300, f64::INFINITY).pass);
}

#[test]
fn zero_data_gives_zero_functionals() {
    let s = ReducedState::zeros(build_grid(10.0, 128).unwrap(), 0.0);
    let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
    assert_eq!(energy(&s, &prof), 0.0);
    assert_eq!(morawetz_functional(&s), 0.0);
    let traj = evolve_leapfrog(&s, &prof, 2.0, 4).unwrap();
    assert_eq!(mixed_norm(&traj, 4.0, 4.0, None, None).unwrap(), 0.0);
}

#[test]
fn mixed_norm_rejects_small_exponents() {
    let traj = run(12.0, 128, &CoefficientProfile::unit(3.0, 0.0).unwrap(), 1.0, 4);
    assert!(mixed_norm(&traj, 0.5, 2.0, None, None).is_err());
}

#[test]
fn mixed_norm_grows_with_horizon_and_region() {
    let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
    let long = run(30.0, 1024, &prof, 10.0, 8);
    let short = evolve_leapfrog(long.first(), &prof, 5.0, 8).unwrap();
    let all = mixed_norm(&long, 4.0, 4.0, None, None).unwrap();
    assert!(mixed_norm(&short, 4.0, 4.0, None, None).unwrap() <= all);
    let ext = mixed_norm(&long, 4.0, 4.0, None, Some(Region::Exterior { r_ext: 1.0 })).unwrap();
    let farther = mixed_norm(&long, 4.0, 4.0, None, Some(Region::Exterior { r_ext: 3.0 })).unwrap();
    assert!(farther <= ext && ext <= all);
    let damped = mixed_norm(&long, 4.0, 4.0, Some(&|_, t| (-t).exp()), None).unwrap();
    assert!(damped <= all);
}

#[test]
fn region_membership() {
    assert!(Region::Exterior { r_ext: 2.0 }.contains(5.0, 2.0));
    assert!(!Region::Exterior { r_ext: 2.0 }.contains(4.0, 2.0));
    assert!(Region::Omega { t0: -2.0 }.contains(0.0, 0.0));
    assert!(!Region::Omega { t0: -2.0 }.contains(2.0, 0.0));
    // (t - t0)^2 - r^2 = 0.5 lies in the annulus between e^-2 and 1
    assert!(Region::K { t0: -2.0 }.contains(3.5f64.sqrt(), 0.0));
    assert!(!Region::K { t0: -2.0 }.contains(0.0, 1.0));
}

#[test]
fn dissipation_identity_converges_at_second_order() {
    let prof = CoefficientProfile::hyperbolic(4.0).unwrap();
    let defect = |n: usize| {
        let traj = run(20.0, n, &prof, 5.0, 4);
        let chk = dissipation_check(&traj, &prof).unwrap();
        assert!(chk.budget.pass);
        chk.identity_defect / chk.initial_energy
    };
    let ratio = defect(512) / defect(1024);
    assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn dissipation_check_needs_damping() {
    let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
    let traj = run(12.0, 128, &prof, 1.0, 4);
    assert!(dissipation_check(&traj, &prof).is_err());
}

#[test]
fn morawetz_budget_examples() {
    for prof in [
        CoefficientProfile::unit(3.0, 0.0).unwrap(),
        CoefficientProfile::hyperbolic(4.0).unwrap(),
    ] {
        let traj = run(25.6, 1024, &prof, 10.0, 8);
        let mb = morawetz_budget(&traj, &prof).unwrap();
        assert!(mb.budget.pass, "{:?}", mb.budget);
        assert!(mb.series.windows(2).all(|w| w[1].1 >= w[0].1));
        assert_eq!(mb.closed_form_mismatch.is_some(), prof.kappa > 0.0);
    }
}

#[test]
fn scattering_defect_is_bounded_by_the_source() {
    let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
    let traj = run(25.6, 1024, &prof, 10.0, 8);
    let d = scattering_pullback(&traj, 5.0, 10.0).unwrap();
    let bound = d.source_bound.unwrap();
    assert!(d.defect <= bound * (1.0 + 1e-2) + 1e-12, "{} vs {}", d.defect, bound);
    assert_eq!(d.profile.t(), 0.0);
    assert!(scattering_pullback(&traj, 10.0, 5.0).is_err());
    assert!(scattering_pullback(&traj, 5.0, 10.01).is_err());
}

#[test]
fn scattering_defect_vanishes_for_linear_flow() {
    let prof = CoefficientProfile::unit(3.0, 0.0).unwrap().linear();
    let traj = evolve_leapfrog(&gaussian(25.6, 1024, 1.0, 1.0, 6.0), &prof, 10.0, 8).unwrap();
    let d = scattering_pullback(&traj, 5.0, 10.0).unwrap();
    assert!(d.defect <= 1e-10, "{}", d.defect);
}

#[test]
fn tail_data_es1_is_uniform_in_horizon() {
    let (epsilon, cutoff) = (0.5, 8.0);
    let data = DataSpec::tail(epsilon, 0.1, 1.0, cutoff);
    let s0 = synthesize_data(&data, &build_grid(64.0, 4096).unwrap()).unwrap();
    let prof = CoefficientProfile::unit(3.0, 0.0).unwrap();
    let delta = radialwave_core::params::derived_delta(epsilon);
    let mut es1 = Vec::new();
    for t in [10.0, 20.0, 40.0] {
        let traj = evolve_leapfrog(&s0, &prof, t, 4).unwrap();
        let b1 = calibrate_b1(&traj, 2.0, delta).unwrap();
        let params = Parameters::derived(3.0, epsilon, 1.0, 0.0, b1, 2.0).unwrap();
        es1.push(exterior_decay_report(&traj, &params).unwrap().max_es1);
    }
    assert!(es1.iter().all(|&e| e <= 1.0 + 1e-2), "{es1:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn morawetz_functional_is_dominated_by_energy(a in 0.0..4.0f64, width in 0.3..1.5f64, c in 0.0..3.0f64, p in 3.0..4.9f64) {
        let g = build_grid(24.0, 512).unwrap();
        let s0 = synthesize_data(&DataSpec::gaussian(a, width, c), &g).unwrap();
        // give the state a nonzero velocity by stepping it forward
        let prof = CoefficientProfile::unit(p, 0.0).unwrap();
        let s = evolve_leapfrog(&s0, &prof, 1.0, 8).unwrap().last().clone();
        let m = morawetz_functional(&s).abs();
        prop_assert!(m <= 4.0 * energy(&s, &prof) * (1.0 + 1e-9) + 1e-300);
    }
}
