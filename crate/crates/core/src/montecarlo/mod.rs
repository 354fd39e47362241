//! Ensemble simulation: reproducible sampling of measurement realizations,
//! per-realization time averages, ensemble statistics, and the finite-sample
//! ergodicity verdict.
//!
//! Sampling is embarrassingly parallel across realizations. Each realization
//! index owns its own counter-selected random stream and results are reduced
//! in index order, so every statistic is bit-for-bit independent of the
//! worker count and of scheduling.

mod ensemble;
mod rng;
mod sample;
mod stuck;
mod trajectory;

pub use ensemble::run_ensemble;
pub use rng::RngSpec;
pub use sample::{sample_indexed, sample_realization, time_average, TimeAverageSample};
pub use stuck::{stuck_trajectory_test, StuckPeakReport, StuckReport};
pub use trajectory::decimation_trajectory;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonteCarloError {
    #[error("variance estimation needs at least 2 realizations, got {0}")]
    InsufficientSamples(usize),
    #[error(
        "probe resolution {sigma} is not below the regime gate {gate} \
         (half the smallest peak separation)"
    )]
    RegimeError { sigma: f64, gate: f64 },
}
