use thiserror::Error;

/// Errors raised while building or evaluating controllers and episodes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unknown linguistic label `{0}`")]
    UnknownLabel(String),

    #[error("label counts differ: state frame has {state}, control frame has {control}")]
    MismatchedFrames { state: usize, control: usize },

    #[error("invalid inference line: {0}")]
    InvalidLine(String),

    #[error("value {value} is outside the domain of the map ({domain})")]
    OutOfDomain { value: f64, domain: String },

    #[error("non-finite state or input: {0}")]
    NonFinite(String),

    #[error("Riccati iteration did not converge after {iterations} iterations (last step {last_delta:e})")]
    RiccatiDiverged { iterations: usize, last_delta: f64 },

    #[error("closed loop is unstable (spectral radius {0})")]
    UnstableClosedLoop(f64),

    #[error("{0}")]
    Metric(String),

    #[error("config `{path}`{}: {message}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Config {
        path: String,
        line: Option<usize>,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

pub(crate) fn check_unit_open(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("{v} is not in (0, 1)")))
    }
}
