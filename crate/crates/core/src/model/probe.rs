use super::ModelError;

/// Probe-train configuration: coupling strength `epsilon` (probe position per
/// observable unit), resolution `sigma` (position spread of each probe), and
/// the number of probes `n_probes`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    epsilon: f64,
    sigma: f64,
    n_probes: usize,
}

impl ProbeConfig {
    pub fn new(epsilon: f64, sigma: f64, n_probes: usize) -> Result<Self, ModelError> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(ModelError::InvalidCoupling(epsilon));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(ModelError::InvalidResolution(sigma));
        }
        if n_probes == 0 {
            return Err(ModelError::ZeroProbes);
        }
        let n_critical = (sigma / epsilon).powi(2);
        if !(n_critical.is_finite() && n_critical > 0.0) {
            return Err(ModelError::InvalidCriticalNumber(n_critical));
        }
        Ok(Self {
            epsilon,
            sigma,
            n_probes,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn n_probes(&self) -> usize {
        self.n_probes
    }

    /// Critical probe number `(sigma/epsilon)^2`: the crossover scale between
    /// negligible disturbance (`N <<`) and projective-measurement-like mixing
    /// (`N >>`).
    pub fn n_critical(&self) -> f64 {
        (self.sigma / self.epsilon).powi(2)
    }

    /// Same coupling and resolution with a different probe count. Useful for
    /// prefix evaluations of a recorded realization.
    pub fn with_probes(&self, n_probes: usize) -> Result<Self, ModelError> {
        Self::new(self.epsilon, self.sigma, n_probes)
    }

    /// Standard deviation `sigma / sqrt(N)` of the time average around a
    /// branch center.
    pub fn qbar_std(&self) -> f64 {
        self.sigma / (self.n_probes as f64).sqrt()
    }
}
