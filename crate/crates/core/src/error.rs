use thiserror::Error;

pub type Result<T> = std::result::Result<T, LabError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole of zeta at s = 1")]
    Pole,
    #[error("height {t} outside the supported range (max {max})")]
    OutOfRange { t: f64, max: f64 },
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("precision target not met: {0}")]
    Precision(String),
    #[error("t = {t} is within {distance:e} of the zero ordinate {gamma}")]
    Proximity { t: f64, gamma: f64, distance: f64 },
    #[error("zero scan could not be certified on [{lo}, {hi}]: {reason}")]
    IncompleteScan { lo: f64, hi: f64, reason: String },
    #[error("zero cache does not cover [{lo}, {hi}]")]
    Coverage { lo: f64, hi: f64 },
    #[error("corrupt cache: {0}")]
    CorruptCache(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("quadrature budget of {max_evals} evaluations exceeded (partial value {partial})")]
    Budget { max_evals: usize, partial: f64 },
    #[error("range error: {0}")]
    Range(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}
