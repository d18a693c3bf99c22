//! Sweeps, reference-curve comparison and Monte Carlo cross-validation on
//! top of `hybridnet-core`.

pub mod golden;
pub mod sweep;
pub mod validate;

use thiserror::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] hybridnet_core::Error),

    #[error("invalid sweep: {0}")]
    Sweep(String),

    #[error("golden comparison: {0}")]
    Golden(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VALIDATION: i32 = 1;
    pub const NUMERICAL: i32 = 2;
    pub const GOLDEN: i32 = 3;
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_numerical() => exit::NUMERICAL,
            _ => exit::VALIDATION,
        }
    }
}
