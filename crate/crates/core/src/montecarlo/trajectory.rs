use crate::analytic::decimation;
use crate::model::{ObservableSpectrum, ProbeConfig, Realization};

/// Posterior over the spectrum levels after each prefix of the detected
/// positions: entry `k` conditions on `Q_1 … Q_k`, entry 0 is the prior
/// (the Born weights). Plotting the rows shows the progressive collapse of
/// the level distribution as detections accumulate.
pub fn decimation_trajectory(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    realization: &Realization,
) -> Vec<Vec<f64>> {
    let mut posteriors = Vec::with_capacity(cfg.n_probes() + 1);
    posteriors.push(spec.weights().to_vec());
    for k in 1..=cfg.n_probes() {
        let prefix_cfg = cfg
            .with_probes(k)
            .expect("prefix of a valid configuration is valid");
        let posterior = decimation(spec, &prefix_cfg, &realization.positions()[..k])
            .expect("posterior over a validated spectrum cannot vanish");
        posteriors.push(posterior);
    }
    posteriors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::{sample_indexed, RngSpec};

    fn three_level() -> ObservableSpectrum {
        ObservableSpectrum::new(vec![0.0, 1.0, 2.0], vec![0.25, 0.4, 0.35], None).unwrap()
    }

    #[test]
    fn zeroth_entry_is_the_prior() {
        let spec = three_level();
        let cfg = ProbeConfig::new(1.0, 1.0, 6).unwrap();
        let r = sample_indexed(&spec, &cfg, &RngSpec::new(1, 0), 0);
        let trajectory = decimation_trajectory(&spec, &cfg, &r);
        assert_eq!(trajectory.len(), 7);
        assert_eq!(trajectory[0], spec.weights());
    }

    #[test]
    fn every_row_is_normalized() {
        let spec = three_level();
        let cfg = ProbeConfig::new(1.0, 1.0, 32).unwrap();
        let r = sample_indexed(&spec, &cfg, &RngSpec::new(9, 0), 4);
        for row in decimation_trajectory(&spec, &cfg, &r) {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn posterior_concentrates_on_the_true_branch_deep_into_the_train() {
        let spec = three_level();
        let cfg = ProbeConfig::new(1.0, 1.0, 400).unwrap(); // N = 400 N_cr
        let rng_spec = RngSpec::new(21, 0);
        let mut hits = 0;
        let trials = 200;
        for index in 0..trials {
            let r = sample_indexed(&spec, &cfg, &rng_spec, index);
            let last = decimation_trajectory(&spec, &cfg, &r)
                .pop()
                .unwrap();
            let map_branch = last
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap()
                .0;
            if map_branch == r.branch() {
                hits += 1;
            }
        }
        // At N/N_cr = 400 the posterior is essentially collapsed.
        assert!(hits >= trials - 2, "only {hits}/{trials} identified");
    }

    #[test]
    fn true_branch_mass_grows_on_average() {
        let spec = three_level();
        let cfg = ProbeConfig::new(1.0, 1.0, 24).unwrap();
        let rng_spec = RngSpec::new(33, 0);
        let m = 10_000usize;
        let mut mean_mass = vec![0.0f64; cfg.n_probes() + 1];
        for index in 0..m {
            let r = sample_indexed(&spec, &cfg, &rng_spec, index as u64);
            for (k, row) in decimation_trajectory(&spec, &cfg, &r).iter().enumerate() {
                mean_mass[k] += row[r.branch()];
            }
        }
        for mass in &mut mean_mass {
            *mass /= m as f64;
        }
        // The posterior mass on the true branch is a submartingale: its
        // ensemble mean must not decrease, here with a 3-standard-error
        // allowance per step (a mass bounded by 1 has SE below 0.5/sqrt(m)).
        let slack = 3.0 * 0.5 / (m as f64).sqrt();
        for k in 1..mean_mass.len() {
            assert!(
                mean_mass[k] >= mean_mass[k - 1] - slack,
                "mean true-branch mass fell at step {k}: {} -> {}",
                mean_mass[k - 1],
                mean_mass[k]
            );
        }
        // And it starts at the prior weight of the drawn branch on average.
        assert!(mean_mass[0] > 0.2 && mean_mass[0] < 0.45);
    }

    #[test]
    fn ensemble_average_of_final_posteriors_recovers_the_weights() {
        let spec = three_level();
        let cfg = ProbeConfig::new(1.0, 1.0, 16).unwrap();
        let rng_spec = RngSpec::new(55, 0);
        let m = 10_000usize;
        let mut mean_posterior = vec![0.0f64; spec.len()];
        let mut sq = vec![0.0f64; spec.len()];
        for index in 0..m {
            let r = sample_indexed(&spec, &cfg, &rng_spec, index as u64);
            let last = decimation_trajectory(&spec, &cfg, &r).pop().unwrap();
            for (acc, (s, p)) in mean_posterior
                .iter_mut()
                .zip(sq.iter_mut().zip(&last))
            {
                *acc += p;
                *s += p * p;
            }
        }
        for n in 0..spec.len() {
            let mean = mean_posterior[n] / m as f64;
            let var = (sq[n] / m as f64 - mean * mean).max(0.0);
            let se = (var / m as f64).sqrt();
            assert!(
                (mean - spec.weights()[n]).abs() < 3.0 * se,
                "level {n}: {mean} vs {}",
                spec.weights()[n]
            );
        }
    }
}
