//! Seeded Monte Carlo estimation of outage and secrecy-outage probabilities.

mod engine;
mod estimate;

pub use estimate::{Estimate, MIN_EVENTS};

use crate::channel::{open_unit, EffectiveSnr, LinkBudget};
use crate::error::{check_rate, Error, Result};
use crate::math::snr_threshold;
use crate::reliability::{gnc_rate, GncParams};
use crate::secrecy::SecrecyRates;
use engine::{run, CodedTrial, Fading, FrameRound};

/// Smallest sample count accepted for a reported estimate.
pub const MIN_SAMPLES: u64 = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SamplingMode {
    /// Every link of every slot draws its own exponential gain.
    #[default]
    EventLevel,
    /// Gains drawn by inverting a CDF at a uniform variate. For GNC with CSI
    /// this samples the effective-SNR laws directly.
    InverseTransform,
}

/// Whether the eavesdropper sees the same intersource outcome as the
/// legitimate destination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Coupling {
    SharedIntersource,
    /// Eve always gets network-coded parity frames.
    #[default]
    EvePerfectIntersource,
}

/// Intersource link model on the legitimate side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LegitIntersource {
    #[default]
    Faded,
    Perfect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Dt,
    Df,
    Nc,
    Gnc(GncParams),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimConfig {
    pub samples: u64,
    pub seed: u64,
    pub mode: SamplingMode,
    pub coupling: Coupling,
    pub intersource: LegitIntersource,
    pub workers: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            seed: 0,
            mode: SamplingMode::default(),
            coupling: Coupling::default(),
            intersource: LegitIntersource::default(),
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < MIN_SAMPLES {
            return Err(Error::usage(format!("samples must be at least {MIN_SAMPLES}, got {}", self.samples)));
        }
        if self.workers == 0 {
            return Err(Error::usage("workers must be positive"));
        }
        Ok(())
    }
}

/// No-CSI estimate split into its two events and their union.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoCsiEstimate {
    pub total: Estimate,
    pub reliability: Estimate,
    pub secrecy: Estimate,
}

fn coded_round(scheme: Scheme, cfg: &SimConfig) -> Result<(FrameRound, f64)> {
    let (round, code_rate) = match scheme {
        Scheme::Nc => (FrameRound::nc(), 0.5),
        Scheme::Gnc(p) => (FrameRound::gnc(p), gnc_rate(p)),
        Scheme::Dt | Scheme::Df => unreachable!("direct schemes have no frame round"),
    };
    if cfg.mode != SamplingMode::EventLevel {
        return Err(Error::usage("network-coded frame events require event_level sampling"));
    }
    if cfg.intersource == LegitIntersource::Faded && round.sources != 2 {
        return Err(Error::usage(format!(
            "faded intersource decoding is defined for two sources, got M = {}; use perfect intersource",
            round.sources
        )));
    }
    Ok((round, code_rate))
}

/// Pr{C_s < Rs} with full CSI at the sources.
pub fn simulate_sop_csi(
    scheme: Scheme,
    rates: SecrecyRates,
    g_d: LinkBudget,
    g_e: LinkBudget,
    cfg: &SimConfig,
) -> Result<Estimate> {
    cfg.validate()?;
    let (gd, ge) = (g_d.avg_snr(), g_e.avg_snr());
    let rs = rates.secrecy_rate();
    let fading = Fading::from_mode(cfg.mode);
    // C_s < Rs  ⇔  γD < ξ(1 + γE) − 1 with ξ = 2^(Rs/prefactor)
    let tally = match scheme {
        Scheme::Dt => {
            let xm1 = snr_threshold(rs);
            let xi = 1.0 + xm1;
            run(cfg, |rng| (gd * fading.gain(rng) < xm1 + xi * ge * fading.gain(rng), false))?
        }
        Scheme::Df => {
            let xm1 = snr_threshold(2.0 * rs);
            let xi = 1.0 + xm1;
            run(cfg, |rng| {
                let d = gd * (fading.gain(rng) + fading.gain(rng));
                let e = ge * (fading.gain(rng) + fading.gain(rng));
                (d < xm1 + xi * e, false)
            })?
        }
        Scheme::Gnc(p) => {
            if cfg.mode != SamplingMode::InverseTransform {
                return Err(Error::usage("GNC with CSI is simulated by inverse_transform sampling"));
            }
            let d = EffectiveSnr::new(g_d, p.diversity())?;
            let e = EffectiveSnr::new(g_e, p.eve_order())?;
            let xm1 = snr_threshold(rs / gnc_rate(p));
            let xi = 1.0 + xm1;
            run(cfg, |rng| {
                let sd = d.quantile(open_unit(rng));
                let se = e.quantile(open_unit(rng));
                (sd < xm1 + xi * se, false)
            })?
        }
        Scheme::Nc => return Err(Error::usage("NC is only defined without CSI")),
    };
    Ok(Estimate::from_counts(tally.first, cfg.samples, cfg.seed))
}

/// Reliability event at D, secrecy event at E and their union.
pub fn simulate_sop_nocsi(
    scheme: Scheme,
    rates: SecrecyRates,
    g_d: LinkBudget,
    g_e: LinkBudget,
    cfg: &SimConfig,
) -> Result<NoCsiEstimate> {
    cfg.validate()?;
    let (gd, ge) = (g_d.avg_snr(), g_e.avg_snr());
    let (r, re) = (rates.total_rate(), rates.equivocation_rate());
    let fading = Fading::from_mode(cfg.mode);
    let tally = match scheme {
        Scheme::Dt => {
            let (td, te) = (snr_threshold(r), snr_threshold(re));
            run(cfg, |rng| (gd * fading.gain(rng) < td, ge * fading.gain(rng) >= te))?
        }
        Scheme::Df => {
            // E combines both copies by MRC, like D.
            let (td, te) = (snr_threshold(2.0 * r), snr_threshold(2.0 * re));
            run(cfg, |rng| {
                let d = gd * (fading.gain(rng) + fading.gain(rng));
                let e = ge * (fading.gain(rng) + fading.gain(rng));
                (d < td, e >= te)
            })?
        }
        Scheme::Nc | Scheme::Gnc(_) => {
            let (round, code_rate) = coded_round(scheme, cfg)?;
            let trial = CodedTrial {
                round,
                fading,
                gd,
                thr_d: snr_threshold(r / code_rate),
                ge,
                thr_e: snr_threshold(re / code_rate),
                intersource: cfg.intersource,
                coupling: cfg.coupling,
            };
            run(cfg, |rng| trial.run(rng))?
        }
    };
    Ok(NoCsiEstimate {
        total: Estimate::from_counts(tally.either, cfg.samples, cfg.seed),
        reliability: Estimate::from_counts(tally.first, cfg.samples, cfg.seed),
        secrecy: Estimate::from_counts(tally.second, cfg.samples, cfg.seed),
    })
}

/// Outage probability at D with no eavesdropper.
pub fn simulate_reliability_outage(scheme: Scheme, rate: f64, g_d: LinkBudget, cfg: &SimConfig) -> Result<Estimate> {
    cfg.validate()?;
    check_rate("rate", rate)?;
    let gd = g_d.avg_snr();
    let fading = Fading::from_mode(cfg.mode);
    let tally = match scheme {
        Scheme::Dt => {
            let td = snr_threshold(rate);
            run(cfg, |rng| (gd * fading.gain(rng) < td, false))?
        }
        Scheme::Df => {
            let td = snr_threshold(2.0 * rate);
            run(cfg, |rng| (gd * (fading.gain(rng) + fading.gain(rng)) < td, false))?
        }
        Scheme::Nc | Scheme::Gnc(_) => {
            let (round, code_rate) = coded_round(scheme, cfg)?;
            let trial = CodedTrial {
                round,
                fading,
                gd,
                thr_d: snr_threshold(rate / code_rate),
                ge: 0.0,
                thr_e: 0.0,
                intersource: cfg.intersource,
                coupling: cfg.coupling,
            };
            run(cfg, |rng| (trial.legit(rng).0, false))?
        }
    };
    Ok(Estimate::from_counts(tally.first, cfg.samples, cfg.seed))
}
