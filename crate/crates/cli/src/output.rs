//! Artifact writers. Floats use the shortest decimal that round-trips.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, Result};

pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        serde_json::to_string(&v).expect("finite floats serialize")
    }
}

/// `time,value` CSV with a header row.
pub fn series_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("time,value\n");
    for &(t, v) in rows {
        let _ = writeln!(out, "{},{}", format_float(t), format_float(v));
    }
    out
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    write_text(path, &text)
}
