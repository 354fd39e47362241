use rayon::prelude::*;

use crate::analytic::{qbar_density, PEAK_WINDOW_STDS};
use crate::model::{EnsembleReport, ErgodicVerdict, ObservableSpectrum, ProbeConfig};
use crate::stats::sample_moments;

use super::{MonteCarloError, RngSpec};

/// Significance bar, in standard errors of the variance estimate, for
/// declaring a dispersion excess over the eigenstate baseline.
pub const VERDICT_SIGNIFICANCE_SES: f64 = 5.0;

/// Samples `m` realizations, forms their time averages, and summarizes the
/// ensemble: mean and variance of `Q̄` with standard errors, per-peak
/// occupancy, and the ergodicity verdict.
///
/// The verdict compares the sample variance of `Q̄/eps` against the
/// eigenstate baseline `N_cr / N`: an excess beyond
/// [`VERDICT_SIGNIFICANCE_SES`] standard errors means the dispersion does not
/// vanish with growing `N`, i.e. the time average of one realization cannot
/// stand in for the ensemble average.
pub fn run_ensemble(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    m: usize,
    rng_spec: &RngSpec,
) -> Result<EnsembleReport, MonteCarloError> {
    if m < 2 {
        return Err(MonteCarloError::InsufficientSamples(m));
    }

    let mixture = qbar_density(spec, cfg);
    // (qbar, assigned peak) per realization, in index order regardless of
    // which worker produced which entry.
    let samples: Vec<(f64, Option<usize>)> = (0..m as u64)
        .into_par_iter()
        .map(|index| {
            let realization = super::sample_indexed(spec, cfg, rng_spec, index);
            let qbar = realization.positions().iter().sum::<f64>()
                / realization.positions().len() as f64;
            (qbar, mixture.assign_peak(qbar, PEAK_WINDOW_STDS))
        })
        .collect();

    let qbars: Vec<f64> = samples.iter().map(|(qbar, _)| *qbar).collect();
    let moments = sample_moments(&qbars).expect("m >= 2 guarantees moments");

    let mut counts = vec![0usize; spec.len()];
    let mut unassigned = 0usize;
    for (_, peak) in &samples {
        match peak {
            Some(n) => counts[*n] += 1,
            None => unassigned += 1,
        }
    }
    let peak_occupancy: Vec<(usize, f64)> = counts
        .iter()
        .enumerate()
        .map(|(n, &c)| (n, c as f64 / m as f64))
        .collect();

    let eps2 = cfg.epsilon() * cfg.epsilon();
    let n_critical = cfg.n_critical();
    let baseline = n_critical / cfg.n_probes() as f64;
    let excess_variance = moments.variance / eps2 - baseline;
    let excess_threshold = VERDICT_SIGNIFICANCE_SES * moments.variance_se / eps2;
    let verdict = if excess_variance > excess_threshold {
        ErgodicVerdict::NonErgodic
    } else {
        ErgodicVerdict::Ergodic
    };

    let report = EnsembleReport {
        n_realizations: m,
        qbar_mean: moments.mean,
        qbar_mean_se: moments.mean_se,
        qbar_var: moments.variance,
        qbar_var_se: moments.variance_se,
        n_critical,
        peak_occupancy,
        unassigned_fraction: unassigned as f64 / m as f64,
        verdict,
        excess_variance,
        excess_threshold,
    };
    debug_assert!(report.check_invariants().is_ok());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn too_few_samples_rejected() {
        let spec = ObservableSpectrum::new(vec![0.0], vec![1.0], None).unwrap();
        let cfg = ProbeConfig::new(1.0, 1.0, 1).unwrap();
        assert!(matches!(
            run_ensemble(&spec, &cfg, 1, &RngSpec::default()),
            Err(MonteCarloError::InsufficientSamples(1))
        ));
    }

    #[test]
    fn eigenstate_ensemble_is_ergodic() {
        let spec = ObservableSpectrum::new(vec![1.5], vec![1.0], None).unwrap();
        let cfg = ProbeConfig::new(1.0, 1.0, 100).unwrap(); // N = 100 N_cr
        let report = run_ensemble(&spec, &cfg, 50_000, &RngSpec::new(3, 0)).unwrap();
        assert_eq!(report.verdict, ErgodicVerdict::Ergodic);
        let baseline = report.n_critical / 100.0;
        assert!(
            (report.qbar_var - baseline).abs() < 3.0 * report.qbar_var_se,
            "variance {} vs baseline {baseline}",
            report.qbar_var
        );
        assert!((report.qbar_mean - 1.5).abs() < 3.0 * report.qbar_mean_se);
    }

    #[test]
    fn balanced_qubit_keeps_finite_dispersion() {
        // var(A)_0 = 1/4, N_cr/N = 0.01: variance/eps^2 near 0.26
        let spec = ObservableSpectrum::new(vec![0.0, 1.0], vec![0.5, 0.5], None).unwrap();
        let cfg = ProbeConfig::new(1.0, 1.0, 100).unwrap();
        let report = run_ensemble(&spec, &cfg, 100_000, &RngSpec::new(4, 0)).unwrap();
        assert_eq!(report.verdict, ErgodicVerdict::NonErgodic);
        assert!(
            (report.qbar_var - 0.26).abs() < 3.0 * report.qbar_var_se,
            "variance {} se {}",
            report.qbar_var,
            report.qbar_var_se
        );
    }

    #[test]
    fn occupancy_tracks_weights_in_the_non_overlap_regime() {
        let spec = ObservableSpectrum::new(vec![0.0, 1.0], vec![0.3, 0.7], None).unwrap();
        let cfg = ProbeConfig::new(1.0, 1.0, 400).unwrap(); // peak std 0.05
        let m = 100_000;
        let report = run_ensemble(&spec, &cfg, m, &RngSpec::new(5, 0)).unwrap();
        for (n, fraction) in &report.peak_occupancy {
            let w = spec.weights()[*n];
            let se = (w * (1.0 - w) / m as f64).sqrt();
            assert!(
                (fraction - w).abs() < 3.0 * se,
                "peak {n}: {fraction} vs {w}"
            );
        }
        assert!(report.unassigned_fraction < 1e-3);
        report.check_invariants().unwrap();
    }

    #[test]
    fn report_is_reproducible_bit_for_bit() {
        let spec = ObservableSpectrum::new(vec![0.0, 1.0], vec![0.5, 0.5], None).unwrap();
        let cfg = ProbeConfig::new(1.0, 1.0, 16).unwrap();
        let rng_spec = RngSpec::new(77, 3);
        let a = run_ensemble(&spec, &cfg, 5_000, &rng_spec).unwrap();
        let b = run_ensemble(&spec, &cfg, 5_000, &rng_spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn report_is_independent_of_worker_count() {
        let spec = ObservableSpectrum::new(vec![0.0, 2.0], vec![0.25, 0.75], None).unwrap();
        let cfg = ProbeConfig::new(1.0, 1.0, 8).unwrap();
        let rng_spec = RngSpec::new(11, 0);
        let run_with = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_ensemble(&spec, &cfg, 4_000, &rng_spec).unwrap())
        };
        let one = run_with(1);
        let four = run_with(4);
        assert_eq!(one, four);
    }
}
