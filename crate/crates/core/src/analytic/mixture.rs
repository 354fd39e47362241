use super::math::normal_pdf;
use super::AnalyticError;
use crate::stats::normal_cdf;

/// One Gaussian component of a one-dimensional mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureComponent {
    pub center: f64,
    pub std_dev: f64,
    pub weight: f64,
}

/// A finite Gaussian mixture on the line. Weights are non-negative and sum to
/// 1 within `1e-12`; every component has a strictly positive width.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixture1D {
    components: Vec<MixtureComponent>,
}

impl GaussianMixture1D {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self, AnalyticError> {
        if components.is_empty() {
            return Err(AnalyticError::EmptyMixture);
        }
        let mut sum = 0.0;
        for (index, c) in components.iter().enumerate() {
            if !(c.std_dev.is_finite() && c.std_dev > 0.0) {
                return Err(AnalyticError::MixtureBadStdDev {
                    index,
                    std_dev: c.std_dev,
                });
            }
            if !c.weight.is_finite() || c.weight < 0.0 {
                return Err(AnalyticError::MixtureNegativeWeight {
                    index,
                    weight: c.weight,
                });
            }
            sum += c.weight;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(AnalyticError::MixtureNormalization(sum));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight * normal_pdf(x, c.center, c.std_dev))
            .sum()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight * normal_cdf(x, c.center, c.std_dev))
            .sum()
    }

    pub fn mean(&self) -> f64 {
        self.components.iter().map(|c| c.weight * c.center).sum()
    }

    /// Variance about the mixture mean, accumulated from centered terms.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.components
            .iter()
            .map(|c| {
                let d = c.center - mean;
                c.weight * (c.std_dev * c.std_dev + d * d)
            })
            .sum()
    }

    /// Union of per-component intervals `center ± n_stds * std_dev`, merged
    /// where they overlap and sorted left to right.
    pub fn support(&self, n_stds: f64) -> Vec<(f64, f64)> {
        let mut intervals: Vec<(f64, f64)> = self
            .components
            .iter()
            .map(|c| (c.center - n_stds * c.std_dev, c.center + n_stds * c.std_dev))
            .collect();
        intervals.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (lo, hi) in intervals {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        merged
    }

    /// Smallest interval containing `support(n_stds)`.
    pub fn bounding_interval(&self, n_stds: f64) -> (f64, f64) {
        let support = self.support(n_stds);
        (support[0].0, support[support.len() - 1].1)
    }

    /// Index of the component whose center is nearest to `x`, provided `x`
    /// lies within `window_stds` standard deviations of that center; `None`
    /// when `x` falls outside every window.
    pub fn assign_peak(&self, x: f64, window_stds: f64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (index, c) in self.components.iter().enumerate() {
            let distance = (x - c.center).abs();
            if distance <= window_stds * c.std_dev
                && best.map_or(true, |(_, d)| distance < d)
            {
                best = Some((index, distance));
            }
        }
        best.map(|(index, _)| index)
    }
}
