//! Estimator helpers: sample moments with standard errors and one-sample
//! Kolmogorov–Smirnov tests.

use statrs::distribution::{ContinuousCDF, Normal};

/// Sample mean, unbiased variance, and their standard errors.
///
/// The standard error of the variance uses the plug-in fourth-central-moment
/// formula `Var(s^2) ~= (m4 - s^4 (n-3)/(n-1)) / n`; the Gaussian chi-squared
/// shortcut would be wrong for the multi-peaked distributions handled here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleMoments {
    pub n: usize,
    pub mean: f64,
    pub mean_se: f64,
    pub variance: f64,
    pub variance_se: f64,
    pub fourth_central: f64,
}

pub fn sample_moments(samples: &[f64]) -> Option<SampleMoments> {
    let n = samples.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mean = samples.iter().sum::<f64>() / nf;
    let mut m2 = 0.0;
    let mut m4 = 0.0;
    for &x in samples {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    let variance = m2 / (nf - 1.0);
    let fourth_central = m4 / nf;
    let var_of_var = (fourth_central - variance * variance * (nf - 3.0) / (nf - 1.0)) / nf;
    Some(SampleMoments {
        n,
        mean,
        mean_se: (variance / nf).sqrt(),
        variance,
        variance_se: var_of_var.max(0.0).sqrt(),
        fourth_central,
    })
}

/// CDF of a normal distribution with the given mean and standard deviation.
pub fn normal_cdf(x: f64, mean: f64, std_dev: f64) -> f64 {
    Normal::new(mean, std_dev)
        .expect("std_dev must be positive and finite")
        .cdf(x)
}

/// One-sample Kolmogorov–Smirnov statistic `sup |F_n - F|` against the given
/// CDF. The sample is sorted internally.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    assert!(!samples.is_empty(), "KS statistic needs samples");
    samples.sort_by(|a, b| a.partial_cmp(b).expect("samples must not contain NaN"));
    let n = samples.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / n - f);
        d = d.max(f - i as f64 / n);
    }
    d
}

/// Asymptotic critical value of the one-sample KS statistic at significance
/// `alpha`: `sqrt(-ln(alpha/2) / 2) / sqrt(n)`.
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    (-((alpha / 2.0).ln()) / 2.0).sqrt() / (n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_of_a_known_sample() {
        // n=4, mean 2.5, unbiased variance 5/3
        let m = sample_moments(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((m.mean - 2.5).abs() < 1e-15);
        assert!((m.variance - 5.0 / 3.0).abs() < 1e-15);
        assert!((m.mean_se - (m.variance / 4.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn too_few_samples() {
        assert!(sample_moments(&[1.0]).is_none());
    }

    #[test]
    fn variance_se_matches_gaussian_formula_on_gaussian_data() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, Normal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let normal = Normal::new(0.0, 2.0).unwrap();
        let xs: Vec<f64> = (0..200_000).map(|_| normal.sample(&mut rng)).collect();
        let m = sample_moments(&xs).unwrap();
        // For Gaussian data Var(s^2) = 2 sigma^4 / (n-1).
        let gaussian_se = (2.0 * m.variance * m.variance / (m.n as f64 - 1.0)).sqrt();
        assert!((m.variance_se - gaussian_se).abs() / gaussian_se < 0.05);
    }

    #[test]
    fn ks_detects_wrong_location() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, Normal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let mut xs: Vec<f64> = (0..20_000).map(|_| normal.sample(&mut rng)).collect();
        let crit = ks_critical(xs.len(), 0.01);
        let d_good = ks_statistic(&mut xs.clone(), |x| normal_cdf(x, 0.0, 1.0));
        let d_bad = ks_statistic(&mut xs, |x| normal_cdf(x, 0.1, 1.0));
        assert!(d_good < crit, "d_good={d_good} crit={crit}");
        assert!(d_bad > crit, "d_bad={d_bad} crit={crit}");
    }

    #[test]
    fn ks_critical_value_magnitude() {
        // sqrt(-ln(0.005)/2) = 1.6276...
        let c = ks_critical(1, 0.01);
        assert!((c - 1.6276236307187347).abs() < 1e-12);
    }
}
