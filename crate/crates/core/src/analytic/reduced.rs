use num_complex::Complex64;

use crate::model::{DensityMatrix, ObservableSpectrum, ProbeConfig};

use super::AnalyticError;

/// Reduced density operator of the system after tracing out all probes.
///
/// In the observable eigenbasis the diagonal stays exactly at the Born
/// weights (the non-demolition property) while each off-diagonal element is
/// damped by `exp(-N (a_n - a_n')^2 / (8 N_cr))`. Requires the initial-state
/// amplitudes.
pub fn reduced_density(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
) -> Result<DensityMatrix, AnalyticError> {
    reduced_density_for_probes(spec, cfg, cfg.n_probes())
}

/// Same as [`reduced_density`] with an explicit probe count, which may be 0:
/// no probes means no damping and the untouched pure state.
pub fn reduced_density_for_probes(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    n_probes: usize,
) -> Result<DensityMatrix, AnalyticError> {
    let amplitudes = spec.amplitudes().ok_or(AnalyticError::MissingAmplitudes)?;
    let dim = spec.len();
    let decay_rate = n_probes as f64 / (8.0 * cfg.n_critical());
    let mut entries = Vec::with_capacity(dim * dim);
    for (i, (&a_i, &c_i)) in spec.eigenvalues().iter().zip(amplitudes).enumerate() {
        for (j, (&a_j, &c_j)) in spec.eigenvalues().iter().zip(amplitudes).enumerate() {
            let entry = if i == j {
                // Diagonal pinned to the weights themselves, not |c|^2, so
                // the non-demolition identity holds exactly.
                Complex64::new(spec.weights()[i], 0.0)
            } else {
                let gap = a_i - a_j;
                c_i * c_j.conj() * (-decay_rate * gap * gap).exp()
            };
            entries.push(entry);
        }
    }
    Ok(DensityMatrix::new(dim, entries)
        .expect("damped pure-state matrix satisfies the density-matrix invariants"))
}

/// `Tr(rho^2)`, equal to 1 exactly for a pure state and to the sum of squared
/// weights for the fully decohered mixture.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.entries().iter().map(|z| z.norm_sqr()).sum()
}
