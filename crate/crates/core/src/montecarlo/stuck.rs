use rayon::prelude::*;

use crate::model::{ObservableSpectrum, ProbeConfig, Realization};
use crate::stats::{ks_critical, ks_statistic, normal_cdf, sample_moments};

use super::{MonteCarloError, RngSpec};

/// Empirical conditional variance of the time average given the first
/// detection, with its standard error and the closed-form expectation
/// `(N-1) sigma^2 / N^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalVariance {
    pub value: f64,
    pub se: f64,
    pub expected: f64,
}

/// Per-peak diagnostics of the stuck behavior.
#[derive(Debug, Clone, PartialEq)]
pub struct StuckPeakReport {
    pub peak: usize,
    pub count: usize,
    pub fraction: f64,
    pub expected_fraction: f64,
    /// `None` when fewer than two realizations landed on this peak.
    pub conditional_variance: Option<ConditionalVariance>,
    /// Number of tail coordinates tested against `N(eps a_n0, sigma^2)`.
    pub ks_coordinates: usize,
    /// Coordinates whose KS statistic exceeded the 1% critical value. At the
    /// 1% level roughly one false positive per hundred coordinates is
    /// expected even when the law holds exactly.
    pub ks_failures: usize,
    pub max_ks_statistic: f64,
    pub ks_critical_1pct: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StuckReport {
    pub n_realizations: usize,
    pub peaks: Vec<StuckPeakReport>,
}

/// Verifies the stuck behavior on sampled realizations: grouped by the peak
/// nearest to the first detection `Q_1`, the remaining coordinates must be
/// independent Gaussians centered at that peak, and the time average must
/// concentrate with the conditional variance `(N-1) sigma^2 / N^2`.
///
/// The conditional variance is measured on `qbar - Q_1/N`, i.e. the spread of
/// the time average about its value-conditional mean; conditioning only on
/// the peak label would leave the first probe's own noise `sigma^2/N^2` in
/// the estimate.
///
/// Gated to the narrow-probe regime `sigma < eps * min_gap / 2`, where a
/// first detection between two peak centers is suppressed at least as
/// strongly as `exp(-gap^2 eps^2 / (8 sigma^2))`.
pub fn stuck_trajectory_test(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    m: usize,
    rng_spec: &RngSpec,
) -> Result<StuckReport, MonteCarloError> {
    let gate = 0.5 * cfg.epsilon() * spec.min_gap();
    if !(cfg.sigma() < gate) {
        return Err(MonteCarloError::RegimeError {
            sigma: cfg.sigma(),
            gate,
        });
    }
    if m < 2 {
        return Err(MonteCarloError::InsufficientSamples(m));
    }

    let realizations: Vec<Realization> = (0..m as u64)
        .into_par_iter()
        .map(|index| super::sample_indexed(spec, cfg, rng_spec, index))
        .collect();

    let centers: Vec<f64> = spec
        .eigenvalues()
        .iter()
        .map(|&a| cfg.epsilon() * a)
        .collect();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); centers.len()];
    for (index, r) in realizations.iter().enumerate() {
        groups[nearest(&centers, r.positions()[0])].push(index);
    }

    let n = cfg.n_probes();
    let nf = n as f64;
    let expected_conditional = (nf - 1.0) / (nf * nf) * cfg.sigma() * cfg.sigma();

    let peaks = groups
        .iter()
        .enumerate()
        .map(|(peak, members)| {
            let count = members.len();
            let center = centers[peak];

            let conditional_variance = {
                let tail_means: Vec<f64> = members
                    .iter()
                    .map(|&i| {
                        let q = realizations[i].positions();
                        let qbar = q.iter().sum::<f64>() / nf;
                        qbar - q[0] / nf
                    })
                    .collect();
                sample_moments(&tail_means).map(|moments| ConditionalVariance {
                    value: moments.variance,
                    se: moments.variance_se,
                    expected: expected_conditional,
                })
            };

            let mut ks_failures = 0usize;
            let mut max_ks = 0.0f64;
            let crit = if count > 0 { ks_critical(count, 0.01) } else { 0.0 };
            let ks_coordinates = if count > 0 { n - 1 } else { 0 };
            let mut column = Vec::with_capacity(count);
            for coordinate in 1..n {
                column.clear();
                column.extend(
                    members
                        .iter()
                        .map(|&i| realizations[i].positions()[coordinate]),
                );
                if column.is_empty() {
                    continue;
                }
                let d = ks_statistic(&mut column, |x| normal_cdf(x, center, cfg.sigma()));
                max_ks = max_ks.max(d);
                if d > crit {
                    ks_failures += 1;
                }
            }

            StuckPeakReport {
                peak,
                count,
                fraction: count as f64 / m as f64,
                expected_fraction: spec.weights()[peak],
                conditional_variance,
                ks_coordinates,
                ks_failures,
                max_ks_statistic: max_ks,
                ks_critical_1pct: crit,
            }
        })
        .collect();

    Ok(StuckReport {
        n_realizations: m,
        peaks,
    })
}

fn nearest(centers: &[f64], x: f64) -> usize {
    let mut best = 0;
    let mut best_distance = f64::INFINITY;
    for (n, &c) in centers.iter().enumerate() {
        let d = (x - c).abs();
        if d < best_distance {
            best = n;
            best_distance = d;
        }
    }
    best
}
