use serde::{Deserialize, Serialize};

use super::ModelError;

/// Outcome of the finite-sample ergodicity decision: does the dispersion of
/// the time average stay at the eigenstate baseline `N_cr / N`, or does a
/// statistically significant excess remain?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErgodicVerdict {
    Ergodic,
    NonErgodic,
}

/// Monte Carlo ensemble summary. Field names are the wire format and must not
/// change.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub n_realizations: usize,
    pub qbar_mean: f64,
    pub qbar_mean_se: f64,
    /// Unbiased sample variance of the time average over the ensemble.
    pub qbar_var: f64,
    /// Standard error of `qbar_var`, from the fourth central moment.
    pub qbar_var_se: f64,
    pub n_critical: f64,
    /// Fraction of realizations whose time average falls in each peak window,
    /// one `(level, fraction)` entry per spectrum level.
    pub peak_occupancy: Vec<(usize, f64)>,
    /// Mass outside every peak window; never force-assigned.
    pub unassigned_fraction: f64,
    pub verdict: ErgodicVerdict,
    /// Decision statistic: sample variance of `qbar/epsilon` in excess of the
    /// eigenstate baseline `N_cr / N`.
    pub excess_variance: f64,
    /// Significance bar the excess is compared against (5 standard errors).
    pub excess_threshold: f64,
}

impl EnsembleReport {
    /// Occupancy fractions must each lie in `[0, 1]` and sum to at most 1
    /// (with the unassigned remainder).
    pub fn check_invariants(&self) -> Result<(), ModelError> {
        let mut total = 0.0;
        for &(_, fraction) in &self.peak_occupancy {
            if !(0.0..=1.0).contains(&fraction) {
                return Err(ModelError::FractionOutOfRange(fraction));
            }
            total += fraction;
        }
        if total > 1.0 + 1e-12 {
            return Err(ModelError::OccupancyExceedsUnity(total));
        }
        Ok(())
    }
}
