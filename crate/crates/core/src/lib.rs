//! Sequential quantum non-demolition (QND) probe measurements on a single
//! system, and the question of whether time averages over one realization
//! reproduce quantum-ensemble averages.
//!
//! A system with a discrete observable spectrum is coupled impulsively to `N`
//! identical Gaussian probes; detecting the probe positions `Q_1 … Q_N` yields
//! a per-realization time average `Q̄_N`. Everything about the final state is
//! captured by closed-form Gaussian-mixture distributions, so the crate splits
//! into:
//!
//! - [`model`] — validated domain types (spectra, probe configurations,
//!   realizations, density matrices, ensemble reports);
//! - [`analytic`] — exact evaluation of the joint and marginal densities,
//!   moments, conditionals, the reduced density matrix, and the
//!   posterior-decimation / Born-weight recovery integrals;
//! - [`montecarlo`] — reproducible parallel sampling of realization ensembles
//!   and the finite-sample ergodicity verdict;
//! - [`stats`] — small estimator helpers (sample moments, standard errors,
//!   Kolmogorov–Smirnov tests) shared by the simulator and its tests.

pub mod analytic;
pub mod model;
pub mod montecarlo;
pub mod stats;

pub use model::{
    DensityMatrix, EnsembleReport, ErgodicVerdict, ModelError, ObservableSpectrum, ProbeConfig,
    Realization,
};
