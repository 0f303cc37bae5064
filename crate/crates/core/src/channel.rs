//! Rayleigh block-fading link primitives.
//!
//! All SNRs are linear; dB only appears through [`db_to_linear`],
//! [`linear_to_db`] and [`LinkBudget::from_db`]. The squared fading magnitude
//! |h|² is a unit-mean exponential, so the average SNR carries the whole link
//! budget.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{check_rate, Error, Result};
use crate::math::snr_threshold;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Physical parameters an average SNR can be derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLoss {
    pub power: f64,
    pub distance: f64,
    pub path_loss_exp: f64,
    pub noise_var: f64,
}

/// Average SNR of one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    avg_snr: f64,
    derived_from: Option<PathLoss>,
}

impl LinkBudget {
    pub fn new(avg_snr: f64) -> Result<Self> {
        if avg_snr > 0.0 && avg_snr.is_finite() {
            Ok(Self { avg_snr, derived_from: None })
        } else {
            Err(Error::domain(format!("average SNR {avg_snr} must be positive and finite")))
        }
    }

    pub fn from_db(db: f64) -> Result<Self> {
        Self::new(db_to_linear(db))
    }

    /// γ̄ = P / (d^α σ²).
    pub fn from_path_loss(pl: PathLoss) -> Result<Self> {
        let PathLoss { power, distance, path_loss_exp, noise_var } = pl;
        if !(power > 0.0 && path_loss_exp > 0.0 && noise_var > 0.0) {
            return Err(Error::domain("power, path-loss exponent and noise variance must be positive"));
        }
        if !(distance > 1.0) {
            return Err(Error::domain(format!("distance {distance} must exceed 1")));
        }
        let mut budget = Self::new(power / (distance.powf(path_loss_exp) * noise_var))?;
        budget.derived_from = Some(pl);
        Ok(budget)
    }

    pub fn avg_snr(&self) -> f64 {
        self.avg_snr
    }

    pub fn avg_snr_db(&self) -> f64 {
        linear_to_db(self.avg_snr)
    }

    pub fn derived_from(&self) -> Option<&PathLoss> {
        self.derived_from.as_ref()
    }
}

/// One fading realisation on a link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingDraw {
    /// |h|²
    pub gain: f64,
    /// γ̄·|h|²
    pub snr: f64,
}

/// `1 - exp(-x)`.
pub(crate) fn exp_cdf(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// `1 - exp(-x)(1 + x)`, the regularised lower incomplete gamma P(2, x).
pub(crate) fn erlang2_cdf(x: f64) -> f64 {
    if x < 1.0 {
        // e^{-x} Σ_{k≥2} x^k/k!, no cancellation.
        let mut term = x * x / 2.0;
        let mut sum = 0.0;
        let mut k = 2.0;
        while term > sum * 1e-17 {
            sum += term;
            k += 1.0;
            term *= x / k;
        }
        sum * (-x).exp()
    } else {
        1.0 - (-x).exp() * (1.0 + x)
    }
}

/// Rayleigh outage probability Pr{log2(1 + γ) < rate} = 1 − exp(−(2^rate − 1)/γ̄).
pub fn link_outage(rate: f64, budget: LinkBudget) -> Result<f64> {
    check_rate("rate", rate)?;
    Ok(exp_cdf(snr_threshold(rate) / budget.avg_snr))
}

/// Two-branch MRC outage 1 − exp(−x)(1 + x) with x = (2^rate − 1)/γ̄.
pub fn mrc2_outage(rate: f64, budget: LinkBudget) -> Result<f64> {
    check_rate("rate", rate)?;
    Ok(erlang2_cdf(snr_threshold(rate) / budget.avg_snr))
}

/// Draws a unit-mean exponential |h|² and the resulting SNR.
pub fn sample_fading<R: Rng + ?Sized>(rng: &mut R, budget: LinkBudget) -> FadingDraw {
    let gain: f64 = Exp1.sample(rng);
    FadingDraw { gain, snr: budget.avg_snr * gain }
}

/// Uniform draw on the open interval (0, 1); endpoint draws are redrawn.
pub fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// The approximated effective-SNR law F(γ) = [1 − exp(−γ/γ̄)]^order, the
/// distribution of the largest of `order` i.i.d. exponentials of mean γ̄.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveSnr {
    pub avg_snr: f64,
    pub order: u32,
}

impl EffectiveSnr {
    pub fn new(budget: LinkBudget, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("effective-SNR order must be at least 1"));
        }
        Ok(Self { avg_snr: budget.avg_snr(), order })
    }

    pub fn cdf(&self, snr: f64) -> f64 {
        if snr <= 0.0 {
            return 0.0;
        }
        exp_cdf(snr / self.avg_snr).powi(self.order as i32)
    }

    pub fn pdf(&self, snr: f64) -> f64 {
        if snr < 0.0 {
            return 0.0;
        }
        let t = snr / self.avg_snr;
        let n = f64::from(self.order);
        n / self.avg_snr * (-t).exp() * exp_cdf(t).powi(self.order as i32 - 1)
    }

    /// Inverse CDF: −γ̄ ln(1 − u^(1/order)).
    pub fn quantile(&self, u: f64) -> f64 {
        let log_root = u.ln() / f64::from(self.order);
        // ln(1 − u^(1/n)): expm1 keeps precision for u near 1, ln_1p for tiny roots.
        let ln_tail = if log_root > -std::f64::consts::LN_2 {
            (-log_root.exp_m1()).ln()
        } else {
            (-log_root.exp()).ln_1p()
        };
        -self.avg_snr * ln_tail
    }
}

/// Inverse-transform sample of the order-`order` effective SNR at uniform `u`.
pub fn sample_effective_snr(u: f64, budget: LinkBudget, order: u32) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::domain(format!("uniform variate {u} must lie in (0, 1)")));
    }
    Ok(EffectiveSnr::new(budget, order)?.quantile(u))
}

/// Generator for substream `stream` of `seed`.
///
/// ChaCha exposes 2^64 independent streams per key, so chunk `c` of a Monte
/// Carlo run always sees the same numbers whatever thread runs it.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
