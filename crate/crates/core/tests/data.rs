use std::f64::consts::PI;

use approx::assert_relative_eq;
use proptest::prelude::*;
use radialwave_core::{
    build_grid, pointwise_tail_check, synthesize_data, weighted_data_norm, DataSpec, Error, Profile,
};

#[test]
fn grid_examples() {
    let g = build_grid(1.0, 8).unwrap();
    assert_eq!(g.dr(), 0.125);
    assert_eq!(g.r(3), 0.375);
    assert_eq!(build_grid(40.0, 4096).unwrap().dr(), 0.009765625);
    assert!(matches!(build_grid(0.0, 8), Err(Error::InvalidArgument(_))));
}

#[test]
fn gaussian_spot_value_at_one() {
    let g = build_grid(40.0, 4096).unwrap();
    let s = synthesize_data(&DataSpec::gaussian(1.0, 1.0, 0.0), &g).unwrap();
    for (j, r) in g.points().enumerate() {
        assert_eq!(s.w()[j], r * (-r * r).exp());
    }
    assert!(s.wdot().iter().all(|&v| v == 0.0));
    // r = 1 is not a node of the 4096-cell grid; use one where it is
    let g = build_grid(40.0, 4000).unwrap();
    let s = synthesize_data(&DataSpec::gaussian(1.0, 1.0, 0.0), &g).unwrap();
    assert_relative_eq!(s.w()[100], 0.3678794, max_relative = 1e-6);
}

#[test]
fn tail_norm_is_finite_and_converges() {
    let spec = DataSpec::tail(0.5, 0.5, 1.0, 20.0);
    let norms: Vec<f64> = [1024, 2048, 4096]
        .iter()
        .map(|&n| {
            let s = synthesize_data(&spec, &build_grid(40.0, n).unwrap()).unwrap();
            weighted_data_norm(&s, 0.5).unwrap().norm_mu
        })
        .collect();
    assert!(norms.iter().all(|n| n.is_finite() && *n > 0.0));
    let ratio = (norms[0] - norms[1]).abs() / (norms[1] - norms[2]).abs();
    assert!((3.0..5.0).contains(&ratio), "{norms:?}");
}

#[test]
fn gaussian_weighted_norm_matches_richardson_oracle() {
    // 8x refinement plus one Richardson step serves as the reference value
    let spec = DataSpec::gaussian(1.0, 1.0, 0.0);
    let at = |n: usize| {
        let s = synthesize_data(&spec, &build_grid(40.0, n).unwrap()).unwrap();
        weighted_data_norm(&s, 0.5).unwrap()
    };
    let (fine, finer) = (at(8 * 512), at(16 * 512));
    let oracle = (4.0 * finer.norm_mu - fine.norm_mu) / 3.0;
    let coarse = at(512);
    assert_relative_eq!(coarse.norm_mu, oracle, max_relative = 1e-3);
    assert!(coarse.norm_r * coarse.norm_r <= coarse.norm_mu * coarse.norm_mu / (4.0 * PI));
}

#[test]
fn gaussian_passes_tail_check_with_its_norm() {
    let g = build_grid(40.0, 4096).unwrap();
    let s = synthesize_data(&DataSpec::gaussian(1.0, 1.0, 0.0), &g).unwrap();
    let a = weighted_data_norm(&s, 0.5).unwrap().norm_r;
    assert!(pointwise_tail_check(&s, a, 0.5).unwrap().pass);
}

#[test]
fn data_specs_round_trip_through_json() {
    let spec = DataSpec::tail(0.5, 0.25, 2.0, 12.0);
    let text = serde_json::to_string(&spec).unwrap();
    assert_eq!(serde_json::from_str::<DataSpec>(&text).unwrap(), spec);
    let p: Profile =
        serde_json::from_str(r#"{"family": "gaussian", "amplitude": 1, "width": 2, "center": 0}"#).unwrap();
    assert_relative_eq!(p.cutoff(), 2.0 * 1e12f64.ln().sqrt(), max_relative = 1e-14);
}

fn spec_strategy() -> impl Strategy<Value = DataSpec> {
    prop_oneof![
        (0.1..2.0f64, 0.5..2.0f64, 0.0..3.0f64).prop_map(|(a, w, c)| DataSpec::gaussian(a, w, c)),
        (0.1..1.0f64, 0.05..1.0f64, 0.1..2.0f64, 4.0..10.0f64).prop_map(|(e, eta, a, c)| DataSpec::tail(e, eta, a, c)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn origin_value_is_exactly_zero(spec in spec_strategy()) {
        let s = synthesize_data(&spec, &build_grid(32.0, 512).unwrap()).unwrap();
        prop_assert_eq!(s.w()[0], 0.0);
        prop_assert_eq!(s.wdot()[0], 0.0);
    }

    #[test]
    fn norms_scale_quadratically(spec in spec_strategy(), lambda in 0.1..10.0f64, eps in 0.1..1.0f64) {
        let s = synthesize_data(&spec, &build_grid(32.0, 512).unwrap()).unwrap();
        let base = weighted_data_norm(&s, eps).unwrap();
        let scaled = weighted_data_norm(&s.scaled(lambda), eps).unwrap();
        let l2 = lambda * lambda;
        prop_assert!((scaled.norm_mu.powi(2) - l2 * base.norm_mu.powi(2)).abs() <= 1e-12 * l2 * base.norm_mu.powi(2));
        prop_assert!((scaled.norm_r.powi(2) - l2 * base.norm_r.powi(2)).abs() <= 1e-12 * l2 * base.norm_r.powi(2));
    }

    #[test]
    fn radial_norm_is_dominated(spec in spec_strategy(), eps in 0.1..1.0f64) {
        let s = synthesize_data(&spec, &build_grid(32.0, 512).unwrap()).unwrap();
        let n = weighted_data_norm(&s, eps).unwrap();
        prop_assert!(n.norm_r.powi(2) <= n.norm_mu.powi(2) / (4.0 * PI) * (1.0 + 1e-12));
    }
}
