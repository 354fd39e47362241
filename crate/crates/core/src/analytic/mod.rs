//! Exact evaluation of every closed-form quantity of the model: joint and
//! marginal probe-position densities, their moments, the distribution of the
//! time average and its conditionals, the reduced density operator of the
//! system, and the posterior decimation / Born-weight recovery integrals.
//!
//! All products of Gaussian densities and all posterior weights are evaluated
//! in log space; a linear-space product of `N` probe densities underflows
//! around `N ~ 400`.

mod conditional;
mod decimation;
mod density;
pub(crate) mod math;
mod mixture;
mod moments;
pub mod quad;
mod reduced;

pub use conditional::{
    conditional_positions_given_first, qbar_density_given_first, Gaussian1D, RegimeWarning,
    StuckConditional,
};
pub use decimation::{decimation, decimation_from_qbar, recover_born_weights};
pub use density::{joint_density, joint_density_with_branch, log_joint_density};
pub use mixture::{GaussianMixture1D, MixtureComponent};
pub use moments::{probe_moments, qbar_density, qbar_statistics, ProbeMoments, QbarStatistics};
pub use reduced::{purity, reduced_density, reduced_density_for_probes};

use thiserror::Error;

/// Peak windows are `center ± PEAK_WINDOW_STDS * std`. Points outside every
/// window stay unassigned; a Gaussian leaves less than `6e-7` of its mass
/// beyond five standard deviations.
pub const PEAK_WINDOW_STDS: f64 = 5.0;

/// Half-width, in component standard deviations, of the integration windows
/// used when recovering Born weights; truncating there leaves well under
/// `1e-20` of each component outside.
pub const RECOVERY_WINDOW_STDS: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("expected {expected} probe positions, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("branch index {index} out of range for {levels} levels")]
    BadIndex { index: usize, levels: usize },
    #[error("spectrum carries no amplitudes, off-diagonal matrix elements are undefined")]
    MissingAmplitudes,
    #[error("posterior mass vanished; numeric underflow in log-space evaluation")]
    AllZeroPosterior,
    #[error("quadrature stalled at error {achieved:e}, requested {requested:e}")]
    QuadratureFailure { requested: f64, achieved: f64 },
    #[error("mixture must have at least one component")]
    EmptyMixture,
    #[error("mixture weights sum to {0}, expected 1")]
    MixtureNormalization(f64),
    #[error("mixture component {index} has non-positive std dev {std_dev}")]
    MixtureBadStdDev { index: usize, std_dev: f64 },
    #[error("mixture component {index} has negative weight {weight}")]
    MixtureNegativeWeight { index: usize, weight: f64 },
}
