//! Domain types shared by the analytic and Monte Carlo layers.
//!
//! Every type validates its invariants at construction and is immutable
//! afterwards, so values can be shared freely across worker threads.

mod density;
mod probe;
mod realization;
mod report;
mod spectrum;

pub use density::DensityMatrix;
pub use probe::ProbeConfig;
pub use realization::Realization;
pub use report::{EnsembleReport, ErgodicVerdict};
pub use spectrum::ObservableSpectrum;

use thiserror::Error;

/// Absolute tolerance for validation checks (weight normalization,
/// amplitude/weight consistency, Hermiticity, unit trace).
pub const VALIDATION_TOLERANCE: f64 = 1e-12;

/// A weight sum deviating from 1 by less than this is silently renormalized;
/// anything worse is rejected as a configuration error.
pub const RENORMALIZATION_THRESHOLD: f64 = 1e-9;

/// Eigenvalues of a density matrix may undershoot zero by round-off; this is
/// the accepted floor.
pub const POSITIVITY_FLOOR: f64 = -1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("spectrum must contain at least one level")]
    EmptySpectrum,
    #[error("eigenvalues ({eigenvalues}) and weights ({weights}) differ in length")]
    LengthMismatch { eigenvalues: usize, weights: usize },
    #[error("{amplitudes} amplitudes supplied for {levels} levels")]
    AmplitudeLengthMismatch { amplitudes: usize, levels: usize },
    #[error("eigenvalue at index {index} is not finite")]
    NonFiniteEigenvalue { index: usize },
    #[error("eigenvalues must be strictly increasing; violated at index {index}")]
    NonincreasingEigenvalues { index: usize },
    #[error("weight at index {index} is not finite")]
    NonFiniteWeight { index: usize },
    #[error("weight {weight} at index {index} is negative")]
    NegativeWeight { index: usize, weight: f64 },
    #[error("weights sum to {sum}, too far from 1 to renormalize")]
    NormalizationError { sum: f64 },
    #[error("|amplitude|^2 = {amplitude_sq} differs from weight {weight} at index {index}")]
    AmplitudeMismatch {
        index: usize,
        amplitude_sq: f64,
        weight: f64,
    },
    #[error("coupling strength must be positive and finite, got {0}")]
    InvalidCoupling(f64),
    #[error("probe resolution must be positive and finite, got {0}")]
    InvalidResolution(f64),
    #[error("probe count must be at least 1")]
    ZeroProbes,
    #[error("critical probe number (sigma/epsilon)^2 = {0} is not finite and positive")]
    InvalidCriticalNumber(f64),
    #[error("branch index {branch} out of range for {levels} levels")]
    BranchOutOfRange { branch: usize, levels: usize },
    #[error("realization has {positions} positions, probe configuration expects {expected}")]
    PositionCountMismatch { positions: usize, expected: usize },
    #[error("{0} entries do not form a square matrix")]
    NotSquare(usize),
    #[error("density matrix is not Hermitian: max asymmetry {0:e}")]
    NotHermitian(f64),
    #[error("density matrix trace is {0}, expected 1")]
    TraceNotOne(f64),
    #[error("density matrix has eigenvalue {0:e} below the positivity floor")]
    NotPositiveSemidefinite(f64),
    #[error("peak occupancy fraction {0} outside [0, 1]")]
    FractionOutOfRange(f64),
    #[error("peak occupancy fractions sum to {0} > 1")]
    OccupancyExceedsUnity(f64),
}
