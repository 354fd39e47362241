//! Log-space primitives shared by the density evaluations.

pub(crate) const LN_TWO_PI: f64 = 1.837_877_066_409_345_3;

/// Log density of a normal distribution.
pub(crate) fn ln_normal_pdf(x: f64, mean: f64, std_dev: f64) -> f64 {
    let z = (x - mean) / std_dev;
    -0.5 * z * z - std_dev.ln() - 0.5 * LN_TWO_PI
}

/// Density of a normal distribution.
pub(crate) fn normal_pdf(x: f64, mean: f64, std_dev: f64) -> f64 {
    ln_normal_pdf(x, mean, std_dev).exp()
}

/// `ln(sum(exp(terms)))` with max subtraction. `-inf` terms (vanished
/// weights) drop out; an all-`-inf` input yields `-inf`.
pub(crate) fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY || max.is_nan() {
        return max;
    }
    let sum: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    max + sum.ln()
}
