use num_complex::Complex64;

use super::{ModelError, RENORMALIZATION_THRESHOLD, VALIDATION_TOLERANCE};

/// A discrete observable spectrum: strictly increasing eigenvalues `a_n` with
/// their Born weights `W_n`, and optionally the complex amplitudes `c_n` of
/// the initial pure state (needed only for off-diagonal density-matrix
/// elements).
///
/// Degenerate eigenvalues are collapsed into a single entry carrying the total
/// weight of the subspace; none of the final-state distributions depend on
/// anything finer.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSpectrum {
    eigenvalues: Vec<f64>,
    weights: Vec<f64>,
    amplitudes: Option<Vec<Complex64>>,
}

impl ObservableSpectrum {
    /// Validates raw eigenvalue/weight/amplitude lists.
    ///
    /// Weights must be non-negative and sum to 1 within
    /// [`RENORMALIZATION_THRESHOLD`]; a sum inside the threshold is
    /// renormalized exactly (amplitudes are rescaled consistently), a sum
    /// outside it is rejected. Amplitudes, when present, must satisfy
    /// `|c_n|^2 = W_n` within [`VALIDATION_TOLERANCE`].
    pub fn new(
        eigenvalues: Vec<f64>,
        weights: Vec<f64>,
        amplitudes: Option<Vec<Complex64>>,
    ) -> Result<Self, ModelError> {
        if eigenvalues.is_empty() {
            return Err(ModelError::EmptySpectrum);
        }
        if eigenvalues.len() != weights.len() {
            return Err(ModelError::LengthMismatch {
                eigenvalues: eigenvalues.len(),
                weights: weights.len(),
            });
        }
        if let Some(c) = &amplitudes {
            if c.len() != eigenvalues.len() {
                return Err(ModelError::AmplitudeLengthMismatch {
                    amplitudes: c.len(),
                    levels: eigenvalues.len(),
                });
            }
        }
        for (index, a) in eigenvalues.iter().enumerate() {
            if !a.is_finite() {
                return Err(ModelError::NonFiniteEigenvalue { index });
            }
        }
        for (index, pair) in eigenvalues.windows(2).enumerate() {
            if pair[1] <= pair[0] {
                return Err(ModelError::NonincreasingEigenvalues { index: index + 1 });
            }
        }
        for (index, &weight) in weights.iter().enumerate() {
            if !weight.is_finite() {
                return Err(ModelError::NonFiniteWeight { index });
            }
            if weight < 0.0 {
                return Err(ModelError::NegativeWeight { index, weight });
            }
        }
        let sum: f64 = weights.iter().sum();
        if !((sum - 1.0).abs() < RENORMALIZATION_THRESHOLD) {
            return Err(ModelError::NormalizationError { sum });
        }

        let mut weights = weights;
        let mut amplitudes = amplitudes;
        if sum != 1.0 {
            for w in &mut weights {
                *w /= sum;
            }
            if let Some(c) = &mut amplitudes {
                let scale = 1.0 / sum.sqrt();
                for z in c.iter_mut() {
                    *z *= scale;
                }
            }
        }
        if let Some(c) = &amplitudes {
            for (index, (z, &weight)) in c.iter().zip(&weights).enumerate() {
                let amplitude_sq = z.norm_sqr();
                if (amplitude_sq - weight).abs() > VALIDATION_TOLERANCE {
                    return Err(ModelError::AmplitudeMismatch {
                        index,
                        amplitude_sq,
                        weight,
                    });
                }
            }
        }

        Ok(Self {
            eigenvalues,
            weights,
            amplitudes,
        })
    }

    /// Convenience constructor choosing the real positive amplitudes
    /// `c_n = sqrt(W_n)`.
    pub fn with_real_amplitudes(
        eigenvalues: Vec<f64>,
        weights: Vec<f64>,
    ) -> Result<Self, ModelError> {
        let amplitudes = weights
            .iter()
            .map(|w| Complex64::new(w.max(0.0).sqrt(), 0.0))
            .collect();
        Self::new(eigenvalues, weights, Some(amplitudes))
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a validated spectrum always has at least one level
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn amplitudes(&self) -> Option<&[Complex64]> {
        self.amplitudes.as_deref()
    }

    /// Weighted mean of the observable in the initial state.
    pub fn observable_mean(&self) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.weights)
            .map(|(a, w)| w * a)
            .sum()
    }

    /// Weighted second moment of the observable in the initial state.
    pub fn observable_second_moment(&self) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.weights)
            .map(|(a, w)| w * a * a)
            .sum()
    }

    /// Weighted variance of the observable, computed from centered terms so
    /// no large-moment cancellation occurs.
    pub fn observable_variance(&self) -> f64 {
        let mean = self.observable_mean();
        self.eigenvalues
            .iter()
            .zip(&self.weights)
            .map(|(a, w)| w * (a - mean) * (a - mean))
            .sum()
    }

    /// Smallest gap between adjacent eigenvalues; infinite for a single
    /// level, where any separation-based approximation is exact.
    pub fn min_gap(&self) -> f64 {
        self.eigenvalues
            .windows(2)
            .map(|pair| pair[1] - pair[0])
            .fold(f64::INFINITY, f64::min)
    }
}
