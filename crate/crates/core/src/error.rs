use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An input lies outside the domain where the requested quantity exists.
    #[error("domain error: {0}")]
    Domain(String),

    /// Total energy reaches the potential barrier: the orbit is not bounded.
    #[error("unstable: energy exceeds critical ({energy} >= {critical})")]
    Unstable { energy: f64, critical: f64 },

    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Lost synchronism during time integration.
    #[error("simulation diverged at t = {time:.4} s (|angle| > 10*pi)")]
    Divergence { time: f64 },

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("invalid machine group: {0}")]
    InvalidGroup(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
