//! Globally adaptive Gauss–Kronrod quadrature (7/15-point pair).
//!
//! The worst segment (largest error estimate) is bisected until the summed
//! error estimate meets the tolerance or the segment budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::AnalyticError;

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub abs_error: f64,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One 15-point Kronrod panel over `[a, b]`.
pub fn gk15_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> QuadratureEstimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    let mut res_abs = WGK[7] * f_center.abs();
    let mut values = [0.0f64; 15];
    values[7] = f_center;

    for j in 0..7 {
        let dx = half * XGK[j];
        let f_lo = f(center - dx);
        let f_hi = f(center + dx);
        values[j] = f_lo;
        values[14 - j] = f_hi;
        kronrod += WGK[j] * (f_lo + f_hi);
        res_abs += WGK[j] * (f_lo.abs() + f_hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f_lo + f_hi);
        }
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((values[j] - mean).abs() + (values[14 - j] - mean).abs());
    }

    let raw_err = ((kronrod - gauss) * half).abs();
    res_abs *= half.abs();
    res_asc *= half.abs();

    // QUADPACK error rescaling.
    let mut err = raw_err;
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    QuadratureEstimate {
        value: kronrod * half,
        abs_error: err,
    }
}

struct Segment {
    a: f64,
    b: f64,
    estimate: QuadratureEstimate,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.estimate.abs_error == other.estimate.abs_error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.estimate
            .abs_error
            .partial_cmp(&other.estimate.abs_error)
            .unwrap_or(Ordering::Equal)
    }
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_segments: usize,
) -> Result<QuadratureEstimate, AnalyticError> {
    integrate_union(f, &[(a, b)], tol, max_segments)
}

/// Integrate `f` over a union of disjoint intervals to a shared absolute
/// tolerance.
pub fn integrate_union<F: Fn(f64) -> f64>(
    f: &F,
    intervals: &[(f64, f64)],
    tol: f64,
    max_segments: usize,
) -> Result<QuadratureEstimate, AnalyticError> {
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    for &(a, b) in intervals {
        let est = gk15_panel(f, a, b);
        value += est.value;
        error += est.abs_error;
        heap.push(Segment { a, b, estimate: est });
    }

    while error > tol {
        if heap.len() >= max_segments {
            return Err(AnalyticError::QuadratureFailure {
                requested: tol,
                achieved: error,
            });
        }
        let worst = heap.pop().expect("heap cannot be empty while error > 0");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval no longer bisectable in f64; accept what we have.
            return Err(AnalyticError::QuadratureFailure {
                requested: tol,
                achieved: error,
            });
        }
        let left = gk15_panel(f, worst.a, mid);
        let right = gk15_panel(f, mid, worst.b);
        value += left.value + right.value - worst.estimate.value;
        error += left.abs_error + right.abs_error - worst.estimate.abs_error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            estimate: left,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            estimate: right,
        });
    }

    Ok(QuadratureEstimate {
        value,
        abs_error: error,
    })
}
