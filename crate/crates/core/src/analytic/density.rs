use crate::model::{ObservableSpectrum, ProbeConfig};

use super::math::{ln_normal_pdf, log_sum_exp};
use super::AnalyticError;

/// Log of the joint density of the detected probe positions: the mixture over
/// branches `n` of `W_n * prod_i N(Q_i; eps a_n, sigma^2)`, evaluated with
/// max-subtracted log sums so deep products do not underflow.
pub fn log_joint_density(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    positions: &[f64],
) -> Result<f64, AnalyticError> {
    check_positions(cfg, positions)?;
    let terms: Vec<f64> = (0..spec.len())
        .map(|n| log_branch_term(spec, cfg, n, positions))
        .collect();
    Ok(log_sum_exp(&terms))
}

/// Joint density of the detected probe positions.
pub fn joint_density(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    positions: &[f64],
) -> Result<f64, AnalyticError> {
    Ok(log_joint_density(spec, cfg, positions)?.exp())
}

/// Joint density of one branch together with the probe positions:
/// `W_n * prod_i N(Q_i; eps a_n, sigma^2)`. Summing over branches recovers
/// [`joint_density`].
pub fn joint_density_with_branch(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    branch: usize,
    positions: &[f64],
) -> Result<f64, AnalyticError> {
    check_positions(cfg, positions)?;
    if branch >= spec.len() {
        return Err(AnalyticError::BadIndex {
            index: branch,
            levels: spec.len(),
        });
    }
    Ok(log_branch_term(spec, cfg, branch, positions).exp())
}

fn check_positions(cfg: &ProbeConfig, positions: &[f64]) -> Result<(), AnalyticError> {
    if positions.len() != cfg.n_probes() {
        return Err(AnalyticError::LengthMismatch {
            expected: cfg.n_probes(),
            got: positions.len(),
        });
    }
    Ok(())
}

fn log_branch_term(
    spec: &ObservableSpectrum,
    cfg: &ProbeConfig,
    branch: usize,
    positions: &[f64],
) -> f64 {
    let weight = spec.weights()[branch];
    if weight == 0.0 {
        return f64::NEG_INFINITY;
    }
    let center = cfg.epsilon() * spec.eigenvalues()[branch];
    let sigma = cfg.sigma();
    weight.ln()
        + positions
            .iter()
            .map(|&q| ln_normal_pdf(q, center, sigma))
            .sum::<f64>()
}
