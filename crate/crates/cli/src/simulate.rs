//! Single configured run: evolve, analyse, write artifacts.

use std::path::Path;

use radialwave_core::functionals::{
    calibrate_b1, dissipation_check, energy_series, exterior_decay_report, mixed_norm, morawetz_budget,
    morawetz_series, scattering_pullback, BudgetEntry, DefectEntry, DiagnosticReport,
};
use radialwave_core::params::derived_delta;
use radialwave_core::solver::{
    evolve_leapfrog, evolve_two_sided, pde_residual, picard_solve, AccumulatorKind, Trajectory,
};
use radialwave_core::transform::{push_forward, transformed_budgets, transformed_energy};
use radialwave_core::{build_grid, synthesize_data, DataSpec, Parameters, Profile};
use serde::{Deserialize, Serialize};

use crate::config::{Analysis, Backend, Format, RunConfig};
use crate::error::Result;
use crate::output::{ensure_dir, series_csv, write_json, write_text};

/// Relative energy drift allowed for undamped runs.
pub const DRIFT_TOLERANCE: f64 = 1e-4;

/// Energy increase between snapshots allowed for damped runs, relative to `E(0)`.
pub const MONOTONICITY_TOLERANCE: f64 = 1e-6;

/// Dissipation identity defect allowed, relative to `E(0)`.
pub const IDENTITY_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecaySummary {
    pub b1: f64,
    pub r_ext: f64,
    pub delta: f64,
    pub c: f64,
    pub max_es1: f64,
    pub max_plus: f64,
    pub max_minus: f64,
    pub pass: bool,
}

/// Contents of `summary.json`; also one row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub pass: bool,
    pub p: f64,
    pub epsilon: f64,
    pub family: String,
    pub snapshots: usize,
    pub final_time: f64,
    pub initial_energy: f64,
    pub final_energy: f64,
    /// `max |E(t) - E(0)| / E(0)` (0 for zero data).
    pub energy_drift: Option<f64>,
    pub dissipation_defect: Option<f64>,
    pub morawetz_budget: Option<f64>,
    /// `I(T) = ||u||^4_{L^4 L^4([0, T])}`.
    pub spacetime_l4: Option<f64>,
    pub scattering_defect: Option<f64>,
    /// Largest of the three exterior decay ratios.
    pub decay_max_ratio: Option<f64>,
    pub budgets: Vec<BudgetEntry>,
    pub norms: Vec<(String, f64)>,
    pub defects: Vec<DefectEntry>,
    pub decay: Option<DecaySummary>,
}

/// Named `time,value` series written as `<name>.csv`.
pub type NamedSeries = Vec<(String, Vec<(f64, f64)>)>;

pub struct SimulationOutput {
    pub report: DiagnosticReport,
    pub summary: RunSummary,
}

pub fn family_name(data: &DataSpec) -> &'static str {
    let name = |p: &Profile| match p {
        Profile::Zero => "zero",
        Profile::Gaussian { .. } => "gaussian",
        Profile::Tail { .. } => "tail",
    };
    match (data.position, data.velocity) {
        (Profile::Zero, v) => name(&v),
        (pos, _) => name(&pos),
    }
}

fn relative(value: f64, scale: f64) -> f64 {
    if value == 0.0 {
        0.0
    } else {
        value / scale
    }
}

fn evolve(cfg: &RunConfig) -> Result<Trajectory> {
    let grid = build_grid(cfg.grid.r_max, cfg.grid.intervals)?;
    let s0 = synthesize_data(&cfg.data, &grid)?;
    let prof = cfg.parameters.coefficient_profile()?;
    Ok(match cfg.backend {
        Backend::Leapfrog => evolve_leapfrog(&s0, &prof, cfg.time.horizon, cfg.time.stride)?,
        Backend::Picard { iters } => picard_solve(&s0, &prof, cfg.time.horizon, iters)?.trajectory,
    })
}

/// Runs the configured analyses without touching the disk.
pub fn simulate(cfg: &RunConfig) -> Result<(DiagnosticReport, RunSummary, NamedSeries)> {
    cfg.validate()?;
    let prof = cfg.parameters.coefficient_profile()?;
    let traj = evolve(cfg)?;
    let mut report = DiagnosticReport::default();
    let mut extra = NamedSeries::new();
    let energies = energy_series(&traj, &prof);
    let e0 = energies[0].1;
    let mut summary = RunSummary {
        pass: true,
        p: cfg.parameters.p,
        epsilon: cfg.parameters.epsilon,
        family: family_name(&cfg.data).into(),
        snapshots: traj.len(),
        final_time: traj.last().t(),
        initial_energy: e0,
        final_energy: energies.last().map_or(e0, |e| e.1),
        energy_drift: None,
        dissipation_defect: None,
        morawetz_budget: None,
        spacetime_l4: None,
        scattering_defect: None,
        decay_max_ratio: None,
        budgets: Vec::new(),
        norms: Vec::new(),
        defects: Vec::new(),
        decay: None,
    };

    for analysis in &cfg.analyses {
        match analysis {
            Analysis::Energy => {
                let drift = energies.iter().map(|(_, e)| (e - e0).abs()).fold(0.0, f64::max);
                summary.energy_drift = Some(relative(drift, e0));
                if prof.kappa == 0.0 {
                    report
                        .budgets
                        .push(BudgetEntry::new("energy_drift", relative(drift, e0), DRIFT_TOLERANCE));
                } else {
                    let rise = energies.windows(2).map(|w| w[1].1 - w[0].1).fold(0.0, f64::max);
                    report.budgets.push(BudgetEntry::new(
                        "energy_increase",
                        relative(rise, e0),
                        MONOTONICITY_TOLERANCE,
                    ));
                }
                report.energy_series = energies.clone();
            }
            Analysis::Dissipation => {
                let chk = dissipation_check(&traj, &prof)?;
                let defect = relative(chk.identity_defect, e0);
                summary.dissipation_defect = Some(defect);
                report.budgets.push(chk.budget);
                report
                    .budgets
                    .push(BudgetEntry::new("dissipation_identity", defect, IDENTITY_TOLERANCE));
                let acc = traj
                    .accumulator(AccumulatorKind::Dissipation)
                    .expect("leapfrog stores dissipation");
                extra.push((
                    "dissipation".into(),
                    traj.times().into_iter().zip(acc.cumulative.clone()).collect(),
                ));
            }
            Analysis::Morawetz => {
                let mb = morawetz_budget(&traj, &prof)?;
                summary.morawetz_budget = Some(mb.budget.value);
                report.budgets.push(mb.budget);
                if let Some(m) = mb.closed_form_mismatch {
                    report.norms.push(("morawetz_weight_mismatch".into(), m));
                }
                report.morawetz_series = morawetz_series(&traj);
                extra.push(("morawetz_budget".into(), mb.series));
            }
            Analysis::Norms => {
                let l4 = mixed_norm(&traj, 4.0, 4.0, None, None)?.powi(4);
                summary.spacetime_l4 = Some(l4);
                report.norms.push(("l4l4_fourth_power".into(), l4));
                for kind in [AccumulatorKind::SpacetimeLq, AccumulatorKind::SourceL1L2] {
                    if let Some(acc) = traj.accumulator(kind) {
                        report.norms.push((kind.name().into(), acc.total()));
                    }
                }
            }
            Analysis::Scattering => {
                let times = traj.times();
                let (t1, t2) = (times[(times.len() - 1) / 2], times[times.len() - 1]);
                if t1 < t2 {
                    let d = scattering_pullback(&traj, t1, t2)?;
                    summary.scattering_defect = Some(d.defect);
                    report.defects.push(DefectEntry {
                        t1,
                        t2,
                        defect: d.defect,
                        source_bound: d.source_bound,
                    });
                }
            }
            Analysis::Decay => {
                let eps = cfg.parameters.epsilon;
                let r_ext = cfg.r_ext();
                let b1 = match cfg.parameters.b1 {
                    Some(b) => b,
                    None => calibrate_b1(&traj, r_ext, derived_delta(eps))?,
                };
                let params = Parameters::derived(prof.p, eps, cfg.parameters.a_bound, prof.kappa, b1, r_ext)?;
                let rep = exterior_decay_report(&traj, &params)?;
                summary.decay_max_ratio = Some(rep.max_es1.max(rep.max_plus).max(rep.max_minus));
                summary.decay = Some(DecaySummary {
                    b1: rep.b1,
                    r_ext: rep.r_ext,
                    delta: rep.delta,
                    c: rep.c,
                    max_es1: rep.max_es1,
                    max_plus: rep.max_plus,
                    max_minus: rep.max_minus,
                    pass: rep.pass,
                });
                extra.push(("decay_es1".into(), rep.rows.iter().map(|r| (r.t, r.es1)).collect()));
                extra.push(("decay_plus".into(), rep.rows.iter().map(|r| (r.t, r.plus)).collect()));
                extra.push(("decay_minus".into(), rep.rows.iter().map(|r| (r.t, r.minus)).collect()));
                report.decay = Some(rep);
            }
            Analysis::Residual => {
                let res = pde_residual(&traj, &prof)?;
                report.norms.push(("residual_sup".into(), res.sup()));
                extra.push((
                    "residual".into(),
                    res.times.iter().copied().zip(res.max.iter().copied()).collect(),
                ));
            }
        }
    }

    if let Some(req) = &cfg.transform {
        transform_analyses(cfg, req, &mut report, &mut extra)?;
    }

    summary.pass = report.all_pass();
    summary.budgets = report.budgets.clone();
    summary.norms = report.norms.clone();
    summary.defects = report.defects.clone();
    Ok((report, summary, extra))
}

/// Two-sided run covering the chart image, then `E(tau)` and the transformed budgets.
fn transform_analyses(
    cfg: &RunConfig,
    req: &crate::config::ChartRequest,
    report: &mut DiagnosticReport,
    extra: &mut NamedSeries,
) -> Result<()> {
    let chart = cfg.chart(req)?;
    let grid = build_grid(cfg.grid.r_max, cfg.grid.intervals)?;
    let s0 = synthesize_data(&cfg.data, &grid)?;
    let prof = cfg.parameters.coefficient_profile()?;
    let (_, t_lo, t_hi) = chart.image_extent();
    let margin = 0.1;
    let traj = evolve_two_sided(&s0, &prof, (margin - t_lo).max(0.0), t_hi + margin, 1)?;
    let vtraj = push_forward(&traj, &chart)?;
    let p = prof.p;
    let mut series = Vec::with_capacity(vtraj.slices.len());
    for slice in &vtraj.slices {
        // E(tau) needs s0(tau), which exists only while -t0 e^{-tau} >= 1
        if let Ok(e) = transformed_energy(slice, p) {
            series.push((slice.tau, e.total));
        }
    }
    if let Some(least) = series.iter().map(|x| x.1).reduce(f64::min) {
        report.norms.push(("transformed_energy_min".into(), least));
    }
    extra.push(("transformed_energy".into(), series));
    if vtraj.slices.iter().any(|s| s.tau >= 0.0) {
        let b = transformed_budgets(&vtraj, p, p > 3.0)?;
        report
            .norms
            .push(("transformed_initial_energy".into(), b.initial_energy));
        report.budgets.extend(b.entries);
    }
    Ok(())
}

/// [`simulate`] plus the artifacts in `dir`.
pub fn run_simulate(cfg: &RunConfig, dir: &Path) -> Result<SimulationOutput> {
    let (report, summary, extra) = simulate(cfg)?;
    write_artifacts(cfg, dir, &report, &summary, &extra)?;
    Ok(SimulationOutput { report, summary })
}

fn write_artifacts(
    cfg: &RunConfig,
    dir: &Path,
    report: &DiagnosticReport,
    summary: &RunSummary,
    extra: &[(String, Vec<(f64, f64)>)],
) -> Result<()> {
    ensure_dir(dir)?;
    if cfg.output.formats.contains(&Format::Csv) {
        if !report.energy_series.is_empty() {
            write_text(&dir.join("energy.csv"), &series_csv(&report.energy_series))?;
        }
        if !report.morawetz_series.is_empty() {
            write_text(&dir.join("morawetz.csv"), &series_csv(&report.morawetz_series))?;
        }
        for (name, rows) in extra {
            write_text(&dir.join(format!("{name}.csv")), &series_csv(rows))?;
        }
    }
    if cfg.output.formats.contains(&Format::Json) {
        write_json(&dir.join("summary.json"), summary)?;
    }
    Ok(())
}
