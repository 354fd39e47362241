use crate::model::{ObservableSpectrum, ProbeConfig};

use super::math::ln_normal_pdf;
use super::mixture::{GaussianMixture1D, MixtureComponent};
use super::AnalyticError;

/// A single Gaussian, possibly degenerate (zero variance = point mass).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian1D {
    pub mean: f64,
    pub variance: f64,
}

impl Gaussian1D {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn is_degenerate(&self) -> bool {
        self.variance == 0.0
    }

    /// Density at `x`. The degenerate case is the limit: infinite at the
    /// point mass, zero elsewhere.
    pub fn pdf(&self, x: f64) -> f64 {
        if self.is_degenerate() {
            return if x == self.mean { f64::INFINITY } else { 0.0 };
        }
        ln_normal_pdf(x, self.mean, self.std_dev()).exp()
    }
}

/// Raised when the narrow-probe approximation is applied outside its regime
/// `sigma < gate = eps * (min eigenvalue gap) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeWarning {
    pub sigma: f64,
    pub gate: f64,
}

/// The approximate conditional law of the remaining positions `Q_2 … Q_N`
/// once the first detection landed on a branch center: every coordinate is an
/// independent Gaussian centered at the detected `Q_1 = eps a_n0` with the
/// probe width `sigma`.
#[derive(Debug, Clone, PartialEq)]
pub struct StuckConditional {
    center: f64,
    std_dev: f64,
    conditioned_coordinates: usize,
    warning: Option<RegimeWarning>,
}

impl StuckConditional {
    /// The common center `eps a_n0` of all conditioned coordinates.
    pub fn center(&self) -> f64 {
        self.center
    }

    /// The common width `sigma`.
    pub fn std_dev(&self) -> f64 {
        self.std_dev
    }

    /// Number of conditioned coordinates, `N - 1`.
    pub fn conditioned_coordinates(&self) -> usize {
        self.conditioned_coordinates
    }

    pub fn warning(&self) -> Option<RegimeWarning> {
        self.warning
    }

    /// Marginal of any single conditioned coordinate, as a one-component
    /// mixture.
    pub fn coordinate_marginal(&self) -> GaussianMixture1D {
        GaussianMixture1D::new(vec![MixtureComponent {
            center: self.center,
            std_dev: self.std_dev,
            weight: 1.0,
        }])
        .expect("single unit-weight component is always valid")
    }

    /// Log of the product density over the conditioned coordinates.
    pub fn log_density(&self, tail_positions: &[f64]) -> Result<f64, AnalyticError> {
        if tail_positions.len() != self.conditioned_coordinates {
            return Err(AnalyticError::LengthMismatch {
                expected: self.conditioned_coordinates,
                got: tail_positions.len(),
            });
        }
        Ok(tail_positions
            .iter()
            .map(|&q| ln_normal_pdf(q, self.center, self.std_dev))
            .sum())
    }

    pub fn density(&self, tail_positions: &[f64]) -> Result<f64, AnalyticError> {
        Ok(self.log_density(tail_positions)?.exp())
    }
}

/// Conditional law of `Q_2 … Q_N` given that the first probe detected the
/// center of `branch`. Exact for a single-level spectrum; otherwise accurate
/// up to terms suppressed by `exp(-(eps gap)^2 / (2 sigma^2))` per neighbor,
/// and flagged with a [`RegimeWarning`] when `sigma` is not small against the
/// peak separation.
pub fn conditional_positions_given_first(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    branch: usize,
) -> Result<StuckConditional, AnalyticError> {
    if branch >= spec.len() {
        return Err(AnalyticError::BadIndex {
            index: branch,
            levels: spec.len(),
        });
    }
    let gate = 0.5 * cfg.epsilon() * spec.min_gap();
    let warning = if cfg.sigma() >= gate {
        Some(RegimeWarning {
            sigma: cfg.sigma(),
            gate,
        })
    } else {
        None
    };
    Ok(StuckConditional {
        center: cfg.epsilon() * spec.eigenvalues()[branch],
        std_dev: cfg.sigma(),
        conditioned_coordinates: cfg.n_probes() - 1,
        warning,
    })
}

/// Distribution of the time average conditioned on the first detected value:
/// a single Gaussian centered at `q1` with variance `(N-1)/N^2 sigma^2`,
/// degenerate at `N = 1` where the time average is `Q_1` itself.
pub fn qbar_density_given_first(cfg: &ProbeConfig, q1: f64) -> Gaussian1D {
    let n = cfg.n_probes() as f64;
    Gaussian1D {
        mean: q1,
        variance: (n - 1.0) / (n * n) * cfg.sigma() * cfg.sigma(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{joint_density, log_joint_density};

    fn wide_qubit() -> ObservableSpectrum {
        // eps * gap = 10 sigma in the configs below
        ObservableSpectrum::new(vec![0.0, 1.0], vec![0.4, 0.6], None).unwrap()
    }

    #[test]
    fn single_probe_time_average_is_the_detection() {
        let cfg = ProbeConfig::new(1.0, 1.0, 1).unwrap();
        let g = qbar_density_given_first(&cfg, 0.3);
        assert!(g.is_degenerate());
        assert_eq!(g.mean, 0.3);
        assert_eq!(g.pdf(0.3), f64::INFINITY);
        assert_eq!(g.pdf(0.4), 0.0);
    }

    #[test]
    fn two_probe_conditional_variance() {
        let cfg = ProbeConfig::new(1.0, 1.0, 2).unwrap();
        let g = qbar_density_given_first(&cfg, 1.0);
        assert!((g.variance - 0.25).abs() < 1e-15);
    }

    #[test]
    fn conditional_variance_vanishes_for_many_probes() {
        let cfg = ProbeConfig::new(1.0, 1.0, 1_000_000).unwrap();
        let g = qbar_density_given_first(&cfg, 0.7);
        assert!(g.variance < 1.1e-6);
        assert_eq!(g.mean, 0.7);
    }

    #[test]
    fn stuck_coordinates_share_center_and_width() {
        let spec = wide_qubit();
        let cfg = ProbeConfig::new(1.0, 0.1, 8).unwrap();
        let stuck = conditional_positions_given_first(&spec, &cfg, 1).unwrap();
        assert_eq!(stuck.center(), 1.0);
        assert_eq!(stuck.std_dev(), 0.1);
        assert_eq!(stuck.conditioned_coordinates(), 7);
        assert!(stuck.warning().is_none());
        let marginal = stuck.coordinate_marginal();
        assert_eq!(marginal.components().len(), 1);
        assert_eq!(marginal.components()[0].center, 1.0);
    }

    #[test]
    fn wide_probe_raises_regime_warning() {
        let spec = wide_qubit();
        let cfg = ProbeConfig::new(1.0, 0.5, 4).unwrap();
        let stuck = conditional_positions_given_first(&spec, &cfg, 0).unwrap();
        let warning = stuck.warning().unwrap();
        assert_eq!(warning.gate, 0.5);
        assert_eq!(warning.sigma, 0.5);
    }

    #[test]
    fn single_level_conditional_is_exact() {
        let spec = ObservableSpectrum::new(vec![2.0], vec![1.0], None).unwrap();
        let cfg = ProbeConfig::new(1.0, 0.4, 3).unwrap();
        let stuck = conditional_positions_given_first(&spec, &cfg, 0).unwrap();
        assert!(stuck.warning().is_none()); // infinite gap: approximation exact
        let tail = [2.1, 1.8];
        // Exact Bayes conditional from the joint density.
        let full = [2.0, 2.1, 1.8];
        let joint = joint_density(&spec, &cfg, &full).unwrap();
        let first = joint_density(&spec, &ProbeConfig::new(1.0, 0.4, 1).unwrap(), &[2.0]).unwrap();
        let exact = joint / first;
        let approx = stuck.density(&tail).unwrap();
        assert!((approx - exact).abs() / exact < 1e-12);
    }

    #[test]
    fn approximation_error_is_bounded_by_neighbor_leakage() {
        let spec = wide_qubit();
        let cfg = ProbeConfig::new(1.0, 0.1, 6).unwrap();
        let branch = 0usize;
        let q1 = cfg.epsilon() * spec.eigenvalues()[branch];
        let stuck = conditional_positions_given_first(&spec, &cfg, branch).unwrap();

        // Neighbor-branch suppression factor at the detected center.
        let gap = spec.min_gap() * cfg.epsilon();
        let weight_ratio = spec.weights()[1] / spec.weights()[branch];
        let bound = weight_ratio * (-(gap * gap) / (2.0 * cfg.sigma() * cfg.sigma())).exp();

        // Tail positions near the stuck center (within one probe width).
        for tail in [
            vec![q1; 5],
            vec![q1 + 0.1, q1 - 0.1, q1, q1 + 0.05, q1 - 0.02],
        ] {
            let mut full = vec![q1];
            full.extend_from_slice(&tail);
            let exact = (log_joint_density(&spec, &cfg, &full).unwrap()
                - log_joint_density(&spec, &ProbeConfig::new(1.0, 0.1, 1).unwrap(), &[q1])
                    .unwrap())
            .exp();
            let approx = stuck.density(&tail).unwrap();
            let rel = (approx / exact - 1.0).abs();
            assert!(rel <= bound, "rel {rel:e} exceeds bound {bound:e}");
        }
    }

    #[test]
    fn bad_branch_index_rejected() {
        let spec = wide_qubit();
        let cfg = ProbeConfig::new(1.0, 0.1, 3).unwrap();
        assert!(matches!(
            conditional_positions_given_first(&spec, &cfg, 9),
            Err(AnalyticError::BadIndex { index: 9, levels: 2 })
        ));
    }
}
