//! Cartesian parameter sweeps over `p`, `epsilon` and the data family.

use std::fmt::Write as _;
use std::path::Path;

use radialwave_core::{DataSpec, Profile};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{ensure_dir, format_float, write_text};
use crate::simulate::{family_name, run_simulate, RunSummary};

pub const DEFAULT_CAP: usize = 64;

/// Caps the sweep thread pool.
pub const THREADS_ENV: &str = "RADIALWAVE_THREADS";

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepAxes {
    pub p: Vec<f64>,
    pub epsilon: Vec<f64>,
    pub family: Vec<String>,
}

impl SweepAxes {
    /// Parses one `name=v1,v2,...` argument into the matching axis.
    pub fn add(&mut self, spec: &str) -> Result<()> {
        let bad = || CliError::Axis(spec.into());
        let (name, values) = spec.split_once('=').ok_or_else(bad)?;
        let items: Vec<&str> = values.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if items.is_empty() {
            return Err(bad());
        }
        let floats = || {
            items
                .iter()
                .map(|s| s.parse::<f64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()
        };
        match name.trim() {
            "p" => self.p = floats()?,
            "epsilon" => self.epsilon = floats()?,
            "family" => {
                if let Some(f) = items.iter().find(|f| !matches!(**f, "zero" | "gaussian" | "tail")) {
                    return Err(CliError::Axis(format!("{spec}: unknown family `{f}`")));
                }
                self.family = items.iter().map(|s| s.to_string()).collect();
            }
            _ => return Err(bad()),
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.p.len().max(1) * self.epsilon.len().max(1) * self.family.len().max(1)
    }
}

/// Replaces the data by the named family, keeping the base data when it already
/// belongs to it. New tail data fills the largest cutoff the window rule allows.
fn with_family(cfg: &RunConfig, family: &str) -> DataSpec {
    if family_name(&cfg.data) == family {
        return cfg.data;
    }
    match family {
        "zero" => DataSpec::zero(),
        "gaussian" => DataSpec::gaussian(1.0, 1.0, 0.0),
        _ => {
            let room = cfg.grid.r_max - cfg.time.horizon - crate::config::WINDOW_MARGIN;
            DataSpec::tail(cfg.parameters.epsilon, 0.1, 1.0, room.min(0.5 * cfg.grid.r_max))
        }
    }
}

/// Expands the axes in `p`-major order.
pub fn expand(base: &RunConfig, axes: &SweepAxes) -> Vec<RunConfig> {
    let ps = if axes.p.is_empty() {
        vec![base.parameters.p]
    } else {
        axes.p.clone()
    };
    let eps = if axes.epsilon.is_empty() {
        vec![base.parameters.epsilon]
    } else {
        axes.epsilon.clone()
    };
    let fams = if axes.family.is_empty() {
        vec![family_name(&base.data).to_string()]
    } else {
        axes.family.clone()
    };
    let mut out = Vec::new();
    for &p in &ps {
        for &e in &eps {
            for f in &fams {
                let mut cfg = base.clone();
                cfg.parameters.p = p;
                cfg.parameters.epsilon = e;
                cfg.data = with_family(&cfg, f);
                if let Profile::Tail { ref mut epsilon, .. } = cfg.data.position {
                    *epsilon = e;
                }
                if let Profile::Tail { ref mut epsilon, .. } = cfg.data.velocity {
                    *epsilon = e;
                }
                out.push(cfg);
            }
        }
    }
    out
}

pub struct SweepRow {
    pub index: usize,
    pub outcome: Result<RunSummary>,
}

const COLUMNS: &str = "index,p,epsilon,family,status,pass,initial_energy,energy_drift,dissipation_defect,\
morawetz_budget,spacetime_l4,scattering_defect,decay_max_ratio";

fn opt(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

pub fn aggregate_csv(configs: &[RunConfig], rows: &[SweepRow]) -> String {
    let mut out = format!("{COLUMNS}\n");
    for row in rows {
        let cfg = &configs[row.index];
        let head = format!(
            "{},{},{},{}",
            row.index,
            format_float(cfg.parameters.p),
            format_float(cfg.parameters.epsilon),
            family_name(&cfg.data)
        );
        let _ = match &row.outcome {
            Ok(s) => writeln!(
                out,
                "{head},ok,{},{},{},{},{},{},{},{}",
                s.pass,
                format_float(s.initial_energy),
                opt(s.energy_drift),
                opt(s.dissipation_defect),
                opt(s.morawetz_budget),
                opt(s.spacetime_l4),
                opt(s.scattering_defect),
                opt(s.decay_max_ratio)
            ),
            Err(e) => writeln!(out, "{head},error {},false,,,,,,,", e.exit_code()),
        };
    }
    out
}

fn thread_count() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs every point into `dir/run_NNN` and writes `dir/sweep.csv`.
pub fn run_sweep(base: &RunConfig, axes: &SweepAxes, cap: usize, dir: &Path) -> Result<Vec<SweepRow>> {
    let size = axes.size();
    if size > cap {
        return Err(CliError::SweepCap { size, cap });
    }
    let configs = expand(base, axes);
    for cfg in &configs {
        cfg.validate()?;
    }
    ensure_dir(dir)?;
    let run_one = |(index, cfg): (usize, &RunConfig)| SweepRow {
        index,
        outcome: run_simulate(cfg, &dir.join(format!("run_{index:03}"))).map(|o| o.summary),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count() {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::config(THREADS_ENV, e.to_string()))?;
    let rows: Vec<SweepRow> = pool.install(|| configs.par_iter().enumerate().map(run_one).collect());
    write_text(&dir.join("sweep.csv"), &aggregate_csv(&configs, &rows))?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axes_parse_and_count() {
        let mut axes = SweepAxes::default();
        axes.add("p=3,3.5,4").unwrap();
        axes.add("family=gaussian,tail").unwrap();
        assert_eq!(axes.p, vec![3.0, 3.5, 4.0]);
        assert_eq!(axes.size(), 6);
        assert!(axes.add("q=1").is_err());
        assert!(axes.add("p=x").is_err());
        assert!(axes.add("family=bogus").is_err());
    }
}
