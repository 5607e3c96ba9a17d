use std::path::PathBuf;

use thiserror::Error;

use crate::config::ConfigError;

#[derive(Debug, Error)]
pub enum LrwpError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] lrwp_core::Error),
    #[error("numerical instability at t = {t}: norm drifted by {drift:e}")]
    Instability { t: f64, drift: f64 },
    #[error("aliasing at t = {t}: boundary amplitude {amplitude:e} exceeds {limit:e}")]
    Aliasing { t: f64, amplitude: f64, limit: f64 },
    #[error("box [{x_min}, {x_max}] does not contain x_c ± 8Δx = [{lo}, {hi}] at t = {t}")]
    Containment { t: f64, lo: f64, hi: f64, x_min: f64, x_max: f64 },
    #[error("acceptance violated: {0}")]
    Acceptance(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl LrwpError {
    /// 2 config error, 3 numeric failure, 4 acceptance violation (1 for I/O).
    pub fn exit_code(&self) -> i32 {
        match self {
            LrwpError::Config(_) | LrwpError::Containment { .. } => 2,
            LrwpError::Core(_) | LrwpError::Instability { .. } | LrwpError::Aliasing { .. } => 3,
            LrwpError::Acceptance(_) => 4,
            LrwpError::Io { .. } => 1,
        }
    }
}

pub type Result<T, E = LrwpError> = std::result::Result<T, E>;
