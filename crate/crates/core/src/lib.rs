pub mod analytic;
pub mod channel;
pub mod config;
pub mod error;
pub mod estimate;
pub mod geometry;
pub mod montecarlo;
pub mod numerics;

pub use error::{Error, Result};
pub use estimate::Estimate;
