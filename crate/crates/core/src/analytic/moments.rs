use serde::{Deserialize, Serialize};

use crate::model::{ObservableSpectrum, ProbeConfig};

use super::mixture::{GaussianMixture1D, MixtureComponent};

/// First and second moments of the detected probe positions in the final
/// state. By stationarity these do not depend on the probe index, and the
/// cross moment does not depend on which pair `(i, j)`, `i != j`, is taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeMoments {
    /// `<Q_i> = eps <A>_0`
    pub mean_q: f64,
    /// `<Q_i^2> = eps^2 <A^2>_0 + sigma^2`
    pub second_q: f64,
    /// `<Q_i Q_j> = eps^2 <A^2>_0` for `i != j`
    pub cross_qq: f64,
    /// `cov(Q_i, Q_j) = eps^2 var(A)_0` for `i != j`
    pub cov_qq: f64,
    /// `var(Q_i) = eps^2 var(A)_0 + sigma^2`
    pub var_q: f64,
}

pub fn probe_moments(spec: &ObservableSpectrum, cfg: &ProbeConfig) -> ProbeMoments {
    let eps = cfg.epsilon();
    let sigma2 = cfg.sigma() * cfg.sigma();
    let mean_a = spec.observable_mean();
    let second_a = spec.observable_second_moment();
    // Centered variance, so cov_qq and var_q carry no large-moment
    // cancellation even though cov_qq = cross_qq - mean_q^2 algebraically.
    let var_a = spec.observable_variance();
    ProbeMoments {
        mean_q: eps * mean_a,
        second_q: eps * eps * second_a + sigma2,
        cross_qq: eps * eps * second_a,
        cov_qq: eps * eps * var_a,
        var_q: eps * eps * var_a + sigma2,
    }
}

/// Ensemble mean and variance of the time average `Q̄_N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QbarStatistics {
    /// `eps <A>_0`
    pub mean: f64,
    /// `(N-1)/N cov(Q_1,Q_2) + 1/N var(Q_1)`
    pub variance: f64,
    /// `variance / eps^2 = var(A)_0 + N_cr / N`
    pub variance_over_eps2: f64,
    pub n_critical: f64,
}

pub fn qbar_statistics(spec: &ObservableSpectrum, cfg: &ProbeConfig) -> QbarStatistics {
    let moments = probe_moments(spec, cfg);
    let n = cfg.n_probes() as f64;
    let eps2 = cfg.epsilon() * cfg.epsilon();
    let variance = (n - 1.0) / n * moments.cov_qq + moments.var_q / n;
    let stats = QbarStatistics {
        mean: moments.mean_q,
        variance,
        variance_over_eps2: variance / eps2,
        n_critical: cfg.n_critical(),
    };
    debug_assert!(
        {
            let identity = spec.observable_variance() + stats.n_critical / n;
            (stats.variance_over_eps2 - identity).abs() <= 1e-12 * identity.max(1e-300)
        },
        "variance decomposition identity violated"
    );
    stats
}

/// Distribution of the time average over the ensemble: one Gaussian of width
/// `sigma / sqrt(N)` per spectrum level, centered at `eps a_n` and weighted
/// by `W_n`.
pub fn qbar_density(spec: &ObservableSpectrum, cfg: &ProbeConfig) -> GaussianMixture1D {
    let std_dev = cfg.qbar_std();
    let components = spec
        .eigenvalues()
        .iter()
        .zip(spec.weights())
        .map(|(&a, &w)| MixtureComponent {
            center: cfg.epsilon() * a,
            std_dev,
            weight: w,
        })
        .collect();
    GaussianMixture1D::new(components).expect("validated spectrum yields a valid mixture")
}
