use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A config value violates a rule; `path` is the dotted field path.
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("unknown verification suite `{0}` (expected identities, monotonicity, morawetz, transform, scattering, decay or all)")]
    UnknownSuite(String),

    #[error("sweep has {size} points, above the cap of {cap}")]
    SweepCap { size: usize, cap: usize },

    /// Some sweep points errored; `code` is the worst of their exit codes.
    #[error("{failed} sweep run(s) failed")]
    RunsFailed { failed: usize, code: u8 },

    #[error("bad sweep axis `{0}`")]
    Axis(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] radialwave_core::Error),
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for anything the user can fix in the inputs, 3 for numerical failure.
    pub fn exit_code(&self) -> u8 {
        use radialwave_core::Error as E;
        match self {
            CliError::Core(E::NumericalBlowup { .. } | E::NoContraction { .. }) => 3,
            CliError::RunsFailed { code, .. } => *code,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
