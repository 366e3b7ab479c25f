//! Collected diagnostics of one run.

use serde::{Deserialize, Serialize};

use crate::functionals::budget::BudgetEntry;
use crate::functionals::decay::DecayReport;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectEntry {
    pub t1: f64,
    pub t2: f64,
    pub defect: f64,
    pub source_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub energy_series: Vec<(f64, f64)>,
    pub morawetz_series: Vec<(f64, f64)>,
    pub budgets: Vec<BudgetEntry>,
    pub norms: Vec<(String, f64)>,
    pub defects: Vec<DefectEntry>,
    pub decay: Option<DecayReport>,
}

impl DiagnosticReport {
    /// Every budget and the decay table (if any) pass.
    pub fn all_pass(&self) -> bool {
        self.budgets.iter().all(|b| b.pass) && self.decay.as_ref().is_none_or(|d| d.pass)
    }

    pub fn norm(&self, name: &str) -> Option<f64> {
        self.norms.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn budget(&self, name: &str) -> Option<&BudgetEntry> {
        self.budgets.iter().find(|b| b.name == name)
    }
}
