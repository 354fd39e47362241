use super::{ModelError, ObservableSpectrum, ProbeConfig};

/// One sampled preparation of the extended system: the latent branch index
/// (the eigenvalue drawn for this realization) and the `N` detected probe
/// positions.
///
/// The branch is a simulator-internal latent variable — a physical detector
/// only sees the positions — but it is kept visible so tests can compare
/// position-based inferences against the truth.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    branch: usize,
    positions: Vec<f64>,
}

impl Realization {
    pub fn new(
        branch: usize,
        positions: Vec<f64>,
        spec: &ObservableSpectrum,
        cfg: &ProbeConfig,
    ) -> Result<Self, ModelError> {
        if branch >= spec.len() {
            return Err(ModelError::BranchOutOfRange {
                branch,
                levels: spec.len(),
            });
        }
        if positions.len() != cfg.n_probes() {
            return Err(ModelError::PositionCountMismatch {
                positions: positions.len(),
                expected: cfg.n_probes(),
            });
        }
        Ok(Self { branch, positions })
    }

    pub fn branch(&self) -> usize {
        self.branch
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }
}
