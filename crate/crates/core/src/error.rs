use thiserror::Error;

/// Errors raised by the radial wave laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical blow-up at step {step} (t = {time}): {detail}")]
    NumericalBlowup { step: usize, time: f64, detail: String },

    #[error("Picard iteration does not contract: gaps {gaps:?}")]
    NoContraction { gaps: Vec<f64> },

    #[error("invalid coefficient profile: {0}")]
    InvalidProfile(String),

    #[error("point (r = {r}, t = {t}) lies outside the forward cone of t0 = {t0}")]
    OutsideCone { r: f64, t: f64, t0: f64 },

    #[error("chart image escapes the stored window at {count} node(s), first: {nodes:?}")]
    Coverage { count: usize, nodes: Vec<(f64, f64)> },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
