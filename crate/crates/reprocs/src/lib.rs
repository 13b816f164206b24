//! Online robust PCA: streaming separation of a sparse-outlier sequence and
//! a slowly changing low-dimensional sequence from their noisy sum.
//!
//! The core is a recursive projected compressive sensing tracker with
//! automatic change detection, projection-PCA for newly added directions,
//! and cluster PCA for deleting stale ones. Around it sit a synthetic-data
//! generator for the supported data models, a windowed batch-PCP baseline,
//! evaluation metrics, and a Monte Carlo experiment harness with a CLI.

pub mod error;
pub mod linalg;

pub use error::{Error, Result};

/// CLI entry point; returns the process exit code.
pub fn cli_main() -> i32 {
    0
}
