//! Small numeric helpers shared by the analytic modules: exact binomial
//! coefficients, a field abstraction so the combinatorial outage formulas can
//! be evaluated in `f64` or in exact rationals, and compensated summation.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive, Zero};

/// Binomial coefficient C(n, k) as an arbitrary-precision integer.
///
/// The multiplicative recurrence runs in `u128` and is promoted to `BigUint`
/// only when an intermediate product would overflow.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        match acc.checked_mul(u128::from(n - i)) {
            Some(v) => acc = v / u128::from(i + 1),
            None => return binomial_big(n, k, i, acc),
        }
    }
    BigUint::from(acc)
}

fn binomial_big(n: u64, k: u64, start: u64, partial: u128) -> BigUint {
    let mut acc = BigUint::from(partial);
    for i in start..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient as the nearest `f64`.
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}

/// Number types the binomial outage sums can be evaluated in.
pub trait Field: Clone + Num {
    fn from_count(c: &BigUint) -> Self;
}

impl Field for f64 {
    fn from_count(c: &BigUint) -> Self {
        c.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Field for BigRational {
    fn from_count(c: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(c.clone()))
    }
}

/// `base^exp` for any [`Field`].
pub fn powi<T: Field>(base: &T, exp: u64) -> T {
    let mut result = T::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b.clone();
        }
        b = b.clone() * b;
        e >>= 1;
    }
    result
}

/// Neumaier-compensated sum that also tracks the sum of absolute values, so
/// callers can judge how much cancellation occurred.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
    abs_sum: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += x.abs();
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    /// Sum of absolute terms over the absolute result; infinite when the
    /// result cancels to zero.
    pub fn condition(&self) -> f64 {
        let v = self.value().abs();
        if v == 0.0 {
            if self.abs_sum == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            self.abs_sum / v
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// `2^rate - 1`, accurate for small rates.
pub(crate) fn snr_threshold(rate: f64) -> f64 {
    (rate * std::f64::consts::LN_2).exp_m1()
}
