use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::analytic::{qbar_density, PEAK_WINDOW_STDS};
use crate::model::{ObservableSpectrum, ProbeConfig, Realization};

use super::RngSpec;

/// A realization reduced to its time average, with the peak (if any) the
/// average falls into.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeAverageSample {
    pub realization: Realization,
    pub qbar: f64,
    pub assigned_peak: Option<usize>,
}

/// Draws one realization: a branch with probability `W_n`, then the `N`
/// positions independently from `N(eps a_n, sigma^2)`.
///
/// The branch is drawn once per realization, never per probe — the positions
/// are conditionally independent given the branch, which is exactly the
/// mixture structure of the joint density. Re-drawing the branch per probe
/// would instead make the positions marginally independent and destroy the
/// non-decaying inter-probe correlation.
pub fn sample_realization(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    rng: &mut impl Rng,
) -> Realization {
    let branch = sample_branch(spec.weights(), rng);
    let center = cfg.epsilon() * spec.eigenvalues()[branch];
    let normal = Normal::new(center, cfg.sigma()).expect("probe resolution is positive");
    let positions: Vec<f64> = (0..cfg.n_probes()).map(|_| normal.sample(rng)).collect();
    Realization::new(branch, positions, spec, cfg)
        .expect("sampler respects the realization invariants")
}

/// Draws the realization with the given index from its own substream.
pub fn sample_indexed(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    rng_spec: &RngSpec,
    index: u64,
) -> Realization {
    sample_realization(spec, cfg, &mut rng_spec.realization_rng(index))
}

/// Arithmetic mean of the detected positions, assigned to the nearest peak
/// center when it lies within `PEAK_WINDOW_STDS` peak widths of one.
pub fn time_average(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    realization: Realization,
) -> TimeAverageSample {
    let qbar =
        realization.positions().iter().sum::<f64>() / realization.positions().len() as f64;
    let assigned_peak = qbar_density(spec, cfg).assign_peak(qbar, PEAK_WINDOW_STDS);
    TimeAverageSample {
        realization,
        qbar,
        assigned_peak,
    }
}

fn sample_branch(weights: &[f64], rng: &mut impl Rng) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut fallback = 0;
    for (n, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            fallback = n;
            acc += w;
            if u < acc {
                return n;
            }
        }
    }
    // u landed in the round-off sliver above the accumulated sum; the last
    // positive-weight branch owns it.
    fallback
}
