use std::path::PathBuf;

use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rate set: {0}")]
    InvalidRates(String),

    #[error("operation requires the symmetric scheme (gamma_a = gamma_b, r_a = r_b)")]
    AsymmetricRates,

    #[error(
        "step size underflow at t = {time:e} (dt = {step:e}); use steady_state for this rate scale"
    )]
    StiffnessFailure { time: f64, step: f64 },

    #[error("invalid integration request: {0}")]
    InvalidIntegration(String),

    #[error("steady-state system is singular: {0}")]
    SingularSystem(String),

    #[error(
        "two-photon coherence has imaginary part {0:e}; dressed mapping needs a real coherence"
    )]
    NonRealCoherence(f64),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("negative emission weight {0:e}")]
    NegativeWeight(f64),

    #[error("spectrum has zero width")]
    ZeroWidth,

    #[error("grid half-span {half_span:e} is below 50 line widths ({width:e})")]
    TruncationError { half_span: f64, width: f64 },

    #[error("unknown collision channel {0}")]
    UnknownChannel(String),

    #[error("invalid plasma conditions: {0}")]
    InvalidPlasma(String),

    #[error("{}", config_message(.line, .field, .message))]
    Config {
        line: Option<usize>,
        field: Option<String>,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn config_message(line: &Option<usize>, field: &Option<String>, message: &str) -> String {
    match (line, field) {
        (Some(l), Some(f)) => format!("config error at line {l} ({f}): {message}"),
        (Some(l), None) => format!("config error at line {l}: {message}"),
        (None, Some(f)) => format!("config error ({f}): {message}"),
        (None, None) => format!("config error: {message}"),
    }
}

impl Error {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            line: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } => 2,
            Error::SingularSystem(_)
            | Error::StiffnessFailure { .. }
            | Error::InvalidRates(_)
            | Error::AsymmetricRates
            | Error::InvalidIntegration(_)
            | Error::NonRealCoherence(_)
            | Error::DivisionByZero(_)
            | Error::NegativeWeight(_)
            | Error::UnknownChannel(_)
            | Error::InvalidPlasma(_) => 3,
            Error::TruncationError { .. } | Error::ZeroWidth => 4,
            Error::Io { .. } => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
