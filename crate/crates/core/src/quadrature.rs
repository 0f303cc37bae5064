//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Used as the independent numerical route for the partial-CSI GNC secrecy
//! outage and for the integral identity behind its closed form.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
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
// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Accuracy targets and subdivision budget.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 0.0, rel: 1e-11, max_intervals: 4000 }
    }
}

impl Tolerance {
    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub estimated_error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
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
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment { a, b, value: kron * half, error: ((kron - gauss) * half).abs() }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::domain(format!("integration bounds [{a}, {b}] are invalid")));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, estimated_error: 0.0, intervals: 0 });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(&f, a, b);
    let mut value = first.value;
    let mut error = first.error;
    heap.push(first);
    while error > tol.target(value) {
        if heap.len() >= tol.max_intervals {
            return Err(Error::Quadrature {
                value,
                estimated_error: error,
                tolerance: tol.target(value),
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval exhausted at machine resolution; accept what we have.
            heap.push(Segment { error: 0.0, ..worst });
            error -= worst.error;
            continue;
        }
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum from the segments to shed the drift of the running totals.
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let estimated_error: f64 = heap.iter().map(|s| s.error).sum();
    Ok(Quadrature { value, estimated_error, intervals: heap.len() })
}

/// Integrates `f` over `[a, ∞)` for integrands decaying at least
/// exponentially beyond a few multiples of `scale`.
///
/// The range is covered by `[a, a + start]` followed by panels of doubling
/// width; integration stops once a panel contributes less than
/// `tol.rel * 1e-3` of the running total (or nothing at all) and the panel
/// start lies beyond `a + start`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, start: f64, tol: Tolerance) -> Result<Quadrature> {
    if !(start > 0.0 && start.is_finite()) {
        return Err(Error::domain(format!("tail start {start} must be positive")));
    }
    let mut lo = a;
    let mut width = start;
    let mut total = Quadrature { value: 0.0, estimated_error: 0.0, intervals: 0 };
    for _ in 0..64 {
        let hi = lo + width;
        let panel = integrate(&f, lo, hi, tol)?;
        total.value += panel.value;
        total.estimated_error += panel.estimated_error;
        total.intervals += panel.intervals;
        let negligible = panel.value.abs() <= tol.rel * 1e-3 * total.value.abs() || panel.value == 0.0;
        if negligible && lo > a {
            return Ok(total);
        }
        lo = hi;
        width *= 2.0;
    }
    Err(Error::Quadrature {
        value: total.value,
        estimated_error: total.estimated_error,
        tolerance: tol.target(total.value),
        intervals: total.intervals,
    })
}
