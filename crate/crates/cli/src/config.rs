//! Run configuration: one JSON document, unknown keys rejected.

use std::path::{Path, PathBuf};

use radialwave_core::solver::{CoefficientProfile, ProfileKind};
use radialwave_core::transform::HyperboloidalChart;
use radialwave_core::DataSpec;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Margin in the window rule `r_max >= cutoff + T + WINDOW_MARGIN`.
pub const WINDOW_MARGIN: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterConfig {
    pub p: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_a_bound")]
    pub a_bound: f64,
    #[serde(default = "default_profile")]
    pub profile: ProfileKind,
    /// Defaults to 0 for the unit profile and `p - 3` for the hyperbolic one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    /// Calibrated on `t in [0, 1]` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<f64>,
    /// Defaults to twice the data cutoff, and at least 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_ext: Option<f64>,
}

fn default_epsilon() -> f64 {
    0.5
}

fn default_a_bound() -> f64 {
    1.0
}

fn default_profile() -> ProfileKind {
    ProfileKind::Unit
}

impl ParameterConfig {
    pub fn kappa(&self) -> f64 {
        self.kappa.unwrap_or(match self.profile {
            ProfileKind::Unit => 0.0,
            ProfileKind::Hyperbolic => self.p - 3.0,
        })
    }

    pub fn coefficient_profile(&self) -> Result<CoefficientProfile> {
        CoefficientProfile::new(self.profile, self.p, self.kappa())
            .map_err(|e| CliError::config("parameters", e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub r_max: f64,
    #[serde(rename = "J")]
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    #[serde(rename = "T")]
    pub horizon: f64,
    #[serde(default = "default_stride")]
    pub stride: usize,
}

fn default_stride() -> usize {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Backend {
    #[default]
    Leapfrog,
    Picard {
        iters: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Analysis {
    /// Energy series with the drift (kappa = 0) or monotonicity (kappa > 0) verdict.
    Energy,
    /// Dissipation identity and `(p+1)/kappa E(0)` bound; needs kappa > 0.
    Dissipation,
    Morawetz,
    /// `I(T) = ||u||^4_{L^4 L^4}` and the `L^{2(p-1)}` space-time norm.
    Norms,
    /// Cauchy defect of the free pullback between `T/2` and `T`.
    Scattering,
    Decay,
    Residual,
}

impl Analysis {
    pub fn name(&self) -> &'static str {
        match self {
            Analysis::Energy => "energy",
            Analysis::Dissipation => "dissipation",
            Analysis::Morawetz => "morawetz",
            Analysis::Norms => "norms",
            Analysis::Scattering => "scattering",
            Analysis::Decay => "decay",
            Analysis::Residual => "residual",
        }
    }
}

fn default_analyses() -> Vec<Analysis> {
    vec![Analysis::Energy]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartRequest {
    pub s_max: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    #[serde(rename = "s_J")]
    pub s_intervals: usize,
    #[serde(rename = "tau_J")]
    pub tau_intervals: usize,
    /// Defaults to `-sqrt(R^2 + 1) - 1` with `R` from the parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_directory")]
    pub directory: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
}

fn default_directory() -> PathBuf {
    PathBuf::from("out")
}

fn default_formats() -> Vec<Format> {
    vec![Format::Csv, Format::Json]
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            directory: default_directory(),
            formats: default_formats(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub parameters: ParameterConfig,
    pub grid: GridConfig,
    pub time: TimeConfig,
    #[serde(default)]
    pub data: DataSpec,
    #[serde(default)]
    pub backend: Backend,
    #[serde(default = "default_analyses")]
    pub analyses: Vec<Analysis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<ChartRequest>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::config(
                if path == "." { String::new() } else { path },
                e.into_inner().to_string(),
            )
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn has(&self, analysis: Analysis) -> bool {
        self.analyses.contains(&analysis)
    }

    pub fn r_ext(&self) -> f64 {
        self.parameters.r_ext.unwrap_or((2.0 * self.data.cutoff()).max(1.0))
    }

    pub fn validate(&self) -> Result<()> {
        let prof = self.parameters.coefficient_profile()?;
        let par = &self.parameters;
        radialwave_core::Parameters::derived(
            par.p,
            par.epsilon,
            par.a_bound,
            prof.kappa,
            par.b1.unwrap_or(1.0),
            self.r_ext(),
        )
        .map_err(|e| CliError::config("parameters", e.to_string()))?;
        if !(self.grid.r_max > 0.0 && self.grid.r_max.is_finite()) {
            return Err(CliError::config("grid.r_max", "must be positive and finite"));
        }
        if self.grid.intervals < 8 {
            return Err(CliError::config("grid.J", "needs at least 8 intervals"));
        }
        if !(self.time.horizon > 0.0 && self.time.horizon.is_finite()) {
            return Err(CliError::config("time.T", "must be positive and finite"));
        }
        if self.time.stride == 0 {
            return Err(CliError::config("time.stride", "must be at least 1"));
        }
        self.data
            .validate()
            .map_err(|e| CliError::config("data", e.to_string()))?;
        let cutoff = self.data.cutoff();
        let needed = cutoff + self.time.horizon + WINDOW_MARGIN;
        if self.grid.r_max < needed {
            return Err(CliError::config(
                "grid.r_max",
                format!(
                    "window rule r_max >= cutoff + T + {WINDOW_MARGIN} needs r_max >= {needed} (cutoff {cutoff}, T {}), got {}",
                    self.time.horizon, self.grid.r_max
                ),
            ));
        }
        if let Backend::Picard { iters } = self.backend {
            if iters == 0 {
                return Err(CliError::config("backend.iters", "must be at least 1"));
            }
            if self.time.stride != 1 {
                return Err(CliError::config(
                    "time.stride",
                    "the picard backend stores every level; use stride 1",
                ));
            }
            if self.transform.is_some() {
                return Err(CliError::config(
                    "transform",
                    "the chart needs a two-sided leapfrog run",
                ));
            }
        }
        if self.has(Analysis::Dissipation) && !(prof.kappa > 0.0) {
            return Err(CliError::config("analyses", "dissipation needs kappa > 0"));
        }
        if let Some(chart) = &self.transform {
            if prof.kind != ProfileKind::Unit || prof.kappa != 0.0 {
                return Err(CliError::config(
                    "transform",
                    "the chart pushes forward undamped unit-profile runs only",
                ));
            }
            if self.time.stride != 1 {
                return Err(CliError::config("transform", "a chart request needs time.stride = 1"));
            }
            self.chart(chart)?;
        }
        if self.output.formats.is_empty() {
            return Err(CliError::config("output.formats", "list at least one format"));
        }
        Ok(())
    }

    pub fn chart(&self, req: &ChartRequest) -> Result<HyperboloidalChart> {
        let t0 = req
            .t0
            .unwrap_or_else(|| radialwave_core::params::derived_anchor(self.r_ext()));
        HyperboloidalChart::new(
            t0,
            req.s_max,
            req.s_intervals,
            req.tau_min,
            req.tau_max,
            req.tau_intervals,
        )
        .map_err(|e| CliError::config("transform", e.to_string()))
    }
}
