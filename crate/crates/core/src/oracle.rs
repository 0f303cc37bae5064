//! Exhaustive enumeration of frame-erasure patterns in exact arithmetic.
//!
//! Every pattern of lost/received frames toward one receiver is visited and
//! classified with the threshold-counting recoverability rule. Patterns are
//! grouped by their number of lost frames, so the outage probability is an
//! integer polynomial in the per-frame outage `p`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::math::{binomial, powi};
use crate::reliability::GncParams;

/// Largest pattern space visited, in bits.
pub const MAX_PATTERN_BITS: u32 = 26;

/// One joint outcome of a round toward a single receiver. Bit `i` of
/// `frame_lost` is frame `i`; source 1 owns frames `0..k1+k2` and frame 0
/// is the tagged information frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErasurePattern {
    pub intersource_ok: bool,
    pub frame_lost: u64,
    pub n_frames: u32,
}

impl ErasurePattern {
    pub fn lost_count(&self) -> u32 {
        self.frame_lost.count_ones()
    }

    /// Whether the tagged frame can be rebuilt: directly, or from enough
    /// parity (intersource up) or own retransmissions (intersource down).
    pub fn tagged_recoverable(&self, params: GncParams) -> bool {
        if self.frame_lost & 1 == 0 {
            return true;
        }
        let k2 = params.parity_frames();
        if self.intersource_ok {
            self.lost_count() - 1 < params.sources() * k2
        } else {
            let own = params.broadcast_frames() + k2;
            let own_mask = (1u64 << own) - 1;
            (self.frame_lost & own_mask).count_ones() - 1 < k2
        }
    }
}

/// Legitimate intersource link model. A faded link fails with the same
/// probability `p` as a frame, as one event shared by both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Intersource {
    Perfect,
    Faded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Intersource up.
    Free,
    /// Intersource down.
    Fallback,
    /// (1 − p)·Free + p·Fallback.
    Overall,
}

/// Unrecoverable-pattern counts indexed by number of lost frames.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutageCounts {
    pub n_frames: u32,
    pub free: Vec<BigUint>,
    pub fallback: Vec<BigUint>,
}

fn frame_count(params: GncParams) -> Result<u32> {
    let bits = params.sources() * (params.broadcast_frames() + params.parity_frames());
    if bits > MAX_PATTERN_BITS {
        return Err(Error::Capacity { bits, limit: MAX_PATTERN_BITS });
    }
    Ok(bits)
}

pub fn count_outage_patterns(params: GncParams) -> Result<OutageCounts> {
    let n = frame_count(params)?;
    let mut free = vec![BigUint::zero(); n as usize + 1];
    let mut fallback = free.clone();
    let mut free_raw = vec![0u64; n as usize + 1];
    let mut fallback_raw = free_raw.clone();
    for mask in 0..(1u64 << n) {
        let up = ErasurePattern { intersource_ok: true, frame_lost: mask, n_frames: n };
        let lost = up.lost_count() as usize;
        if !up.tagged_recoverable(params) {
            free_raw[lost] += 1;
        }
        let down = ErasurePattern { intersource_ok: false, ..up };
        if !down.tagged_recoverable(params) {
            fallback_raw[lost] += 1;
        }
    }
    for l in 0..=n as usize {
        free[l] = BigUint::from(free_raw[l]);
        fallback[l] = BigUint::from(fallback_raw[l]);
    }
    Ok(OutageCounts { n_frames: n, free, fallback })
}

fn branch_probability(counts: &[BigUint], n: u32, p: &BigRational) -> BigRational {
    let q = BigRational::one() - p;
    counts
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| {
            let l = l as u64;
            BigRational::from_integer(BigInt::from(c.clone())) * powi(p, l) * powi(&q, u64::from(n) - l)
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Exact outage probability of the tagged frame at one receiver.
pub fn enumerate_gnc_outage(params: GncParams, p: &BigRational, intersource: Intersource) -> Result<BigRational> {
    if p < &BigRational::zero() || p > &BigRational::one() {
        return Err(Error::domain(format!("probability {p} outside [0, 1]")));
    }
    if intersource == Intersource::Faded && params.sources() != 2 {
        return Err(Error::domain(format!(
            "faded intersource enumeration is defined for two sources, got M = {}",
            params.sources()
        )));
    }
    let counts = count_outage_patterns(params)?;
    let free = branch_probability(&counts.free, counts.n_frames, p);
    Ok(match intersource {
        Intersource::Perfect => free,
        Intersource::Faded => {
            let fallback = branch_probability(&counts.fallback, counts.n_frames, p);
            (BigRational::one() - p) * free + p * fallback
        }
    })
}

/// Total probability mass of all patterns (both intersource outcomes when faded).
pub fn total_weight(params: GncParams, p: &BigRational, intersource: Intersource) -> Result<BigRational> {
    let n = frame_count(params)?;
    let all: Vec<BigUint> = (0..=u64::from(n)).map(|l| binomial(u64::from(n), l)).collect();
    let w = branch_probability(&all, n, p);
    Ok(match intersource {
        Intersource::Perfect => w,
        Intersource::Faded => (BigRational::one() - p) * w.clone() + p * w,
    })
}

fn poly_from_counts(counts: &[BigUint], n: u32) -> Vec<BigInt> {
    // Σ_L c_L p^L (1 − p)^(n−L), expanded in powers of p
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    for (l, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let rest = u64::from(n) - l as u64;
        for j in 0..=rest {
            let term = BigInt::from(c * binomial(rest, j));
            if j % 2 == 0 {
                poly[l + j as usize] += term;
            } else {
                poly[l + j as usize] -= term;
            }
        }
    }
    poly
}

/// Nonzero coefficients `(exponent, coefficient)` of the enumerated outage
/// as a polynomial in `p`, lowest exponent first.
pub fn multiplicity_coefficients(params: GncParams, branch: Branch) -> Result<Vec<(u32, BigInt)>> {
    let counts = count_outage_patterns(params)?;
    let n = counts.n_frames;
    let poly = match branch {
        Branch::Free => poly_from_counts(&counts.free, n),
        Branch::Fallback => poly_from_counts(&counts.fallback, n),
        Branch::Overall => {
            if params.sources() != 2 {
                return Err(Error::domain("the faded-intersource expansion is defined for two sources"));
            }
            let free = poly_from_counts(&counts.free, n);
            let fb = poly_from_counts(&counts.fallback, n);
            let mut out = vec![BigInt::zero(); n as usize + 2];
            for (i, c) in free.iter().enumerate() {
                out[i] += c;
                out[i + 1] -= c;
            }
            for (i, c) in fb.iter().enumerate() {
                out[i + 1] += c;
            }
            out
        }
    };
    Ok(poly
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e as u32, c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reliability::{gnc_outage_exact_2src_in, gnc_outage_free_intersource_in};
    use num_traits::ToPrimitive;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn grid() -> Vec<GncParams> {
        let mut v = Vec::new();
        for k1 in 1..=3 {
            for k2 in 1..=3 {
                v.push(GncParams::new(2, k1, k2).unwrap());
            }
        }
        v
    }

    #[test]
    fn reference_value() {
        let p = GncParams::new(2, 1, 1).unwrap();
        let v = enumerate_gnc_outage(p, &ratio(1, 10), Intersource::Faded).unwrap();
        assert_eq!(v, ratio(22, 6250));
        assert_eq!(v.to_f64().unwrap(), 0.00352);
    }

    #[test]
    fn extremes() {
        for params in grid() {
            for mode in [Intersource::Perfect, Intersource::Faded] {
                assert!(enumerate_gnc_outage(params, &BigRational::zero(), mode).unwrap().is_zero());
                assert!(enumerate_gnc_outage(params, &BigRational::one(), mode).unwrap().is_one());
            }
        }
    }

    #[test]
    fn weights_sum_to_one() {
        for params in grid() {
            for p in [ratio(1, 10), ratio(1, 4), ratio(1, 2)] {
                assert!(total_weight(params, &p, Intersource::Faded).unwrap().is_one());
                assert!(total_weight(params, &p, Intersource::Perfect).unwrap().is_one());
            }
        }
    }

    #[test]
    fn matches_closed_forms_exactly() {
        for params in grid() {
            for p in [ratio(1, 10), ratio(1, 4), ratio(1, 2)] {
                let faded = enumerate_gnc_outage(params, &p, Intersource::Faded).unwrap();
                assert_eq!(faded, gnc_outage_exact_2src_in(&p, params), "{params:?} p={p}");
                let perfect = enumerate_gnc_outage(params, &p, Intersource::Perfect).unwrap();
                assert_eq!(perfect, gnc_outage_free_intersource_in(&p, params));
                let pf = p.to_f64().unwrap();
                let closed = crate::reliability::gnc_outage_exact_2src(pf, params).unwrap();
                let rel = (faded.to_f64().unwrap() - closed).abs() / closed;
                assert!(rel <= 1e-12, "{params:?} p={p}: {rel}");
            }
        }
    }

    #[test]
    fn perfect_intersource_for_more_sources() {
        let params = GncParams::new(3, 2, 2).unwrap();
        let p = ratio(1, 4);
        let v = enumerate_gnc_outage(params, &p, Intersource::Perfect).unwrap();
        assert_eq!(v, gnc_outage_free_intersource_in(&p, params));
        assert!(enumerate_gnc_outage(params, &p, Intersource::Faded).is_err());
    }

    #[test]
    fn leading_coefficients() {
        let p22 = GncParams::new(2, 2, 2).unwrap();
        let free = multiplicity_coefficients(p22, Branch::Free).unwrap();
        assert_eq!(free[0], (5, BigInt::from(35)));
        let fb = multiplicity_coefficients(p22, Branch::Fallback).unwrap();
        assert_eq!(fb[0], (3, BigInt::from(3)));
        let overall = multiplicity_coefficients(GncParams::nc(), Branch::Overall).unwrap();
        assert_eq!(overall[0], (3, BigInt::from(4)));
    }

    #[test]
    fn polynomial_reproduces_enumeration() {
        let params = GncParams::new(2, 2, 3).unwrap();
        let p = ratio(1, 4);
        let poly = multiplicity_coefficients(params, Branch::Overall).unwrap();
        let value = poly
            .iter()
            .map(|(e, c)| BigRational::from_integer(c.clone()) * powi(&p, u64::from(*e)))
            .fold(BigRational::zero(), |a, b| a + b);
        assert_eq!(value, enumerate_gnc_outage(params, &p, Intersource::Faded).unwrap());
    }

    #[test]
    fn capacity_and_domain_errors() {
        let big = GncParams::new(2, 7, 7).unwrap();
        assert!(matches!(count_outage_patterns(big), Err(Error::Capacity { bits: 28, limit: 26 })));
        let p = GncParams::nc();
        assert!(enumerate_gnc_outage(p, &ratio(3, 2), Intersource::Faded).is_err());
    }
}
