//! Chunked, seed-deterministic trial runner and the per-scheme trials.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use super::{Coupling, LegitIntersource, SamplingMode, SimConfig};
use crate::channel::{open_unit, substream};
use crate::error::{Error, Result};
use crate::reliability::GncParams;

/// Trials per substream. Chunk `c` always draws from ChaCha stream `c`, so
/// results do not depend on how chunks are spread over workers.
pub(crate) const CHUNK: u64 = 1 << 16;

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Tally {
    pub first: u64,
    pub second: u64,
    pub either: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally { first: self.first + o.first, second: self.second + o.second, either: self.either + o.either }
    }
}

/// Runs `cfg.samples` trials; each trial reports two events.
pub(crate) fn run<F>(cfg: &SimConfig, trial: F) -> Result<Tally>
where
    F: Fn(&mut ChaCha8Rng) -> (bool, bool) + Sync,
{
    let chunks = cfg.samples.div_ceil(CHUNK);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::usage(format!("cannot start {} workers: {e}", cfg.workers)))?;
    let tally = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = substream(cfg.seed, c);
                let n = CHUNK.min(cfg.samples - c * CHUNK);
                let mut t = Tally::default();
                for _ in 0..n {
                    let (a, b) = trial(&mut rng);
                    t.first += u64::from(a);
                    t.second += u64::from(b);
                    t.either += u64::from(a || b);
                }
                t
            })
            .reduce(Tally::default, Tally::merge)
    });
    Ok(tally)
}

/// How unit-mean exponential gains are produced.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Fading {
    Ziggurat,
    InverseTransform,
}

impl Fading {
    pub fn from_mode(mode: SamplingMode) -> Self {
        match mode {
            SamplingMode::EventLevel => Fading::Ziggurat,
            SamplingMode::InverseTransform => Fading::InverseTransform,
        }
    }

    #[inline]
    pub fn gain<R: Rng>(self, rng: &mut R) -> f64 {
        match self {
            Fading::Ziggurat => Exp1.sample(rng),
            Fading::InverseTransform => -open_unit(rng).ln(),
        }
    }
}

/// What happens to the tagged frame when the intersource link is down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Fallback {
    /// Own-frame retransmissions decoded independently; threshold counting.
    Counting,
    /// Repetition of the tagged frame, combined by MRC (two-source NC).
    Mrc,
}

/// Frame-erasure model of one cooperative round as seen by one receiver.
///
/// Frames are laid out source by source; source 1 owns indices
/// `0..k1+k2` and its first broadcast frame (index 0) is the tagged one.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FrameRound {
    pub sources: u32,
    pub broadcast: u32,
    pub parity: u32,
    pub fallback: Fallback,
}

impl FrameRound {
    pub fn gnc(p: GncParams) -> Self {
        Self { sources: p.sources(), broadcast: p.broadcast_frames(), parity: p.parity_frames(), fallback: Fallback::Counting }
    }

    pub fn nc() -> Self {
        Self { sources: 2, broadcast: 1, parity: 1, fallback: Fallback::Mrc }
    }

    /// Draws every frame of the round and reports whether the tagged
    /// information frame is unrecoverable.
    #[inline]
    pub fn tagged_lost<R: Rng>(&self, rng: &mut R, fading: Fading, avg: f64, thr: f64, intersource_ok: bool) -> bool {
        let own = self.broadcast + self.parity;
        let total = self.sources * own;
        let mut direct_gain = 0.0;
        let mut repeat_gain = 0.0;
        let mut direct_lost = false;
        let mut own_lost = 0;
        let mut all_lost = 0;
        for f in 0..total {
            let g = fading.gain(rng);
            let lost = avg * g < thr;
            if f == 0 {
                direct_gain = g;
                direct_lost = lost;
            } else {
                if f == 1 {
                    repeat_gain = g;
                }
                if lost {
                    all_lost += 1;
                    if f < own {
                        own_lost += 1;
                    }
                }
            }
        }
        if intersource_ok {
            direct_lost && all_lost >= self.sources * self.parity
        } else {
            match self.fallback {
                Fallback::Counting => direct_lost && own_lost >= self.parity,
                Fallback::Mrc => avg * (direct_gain + repeat_gain) < thr,
            }
        }
    }
}

/// Legitimate-side and eavesdropper-side state of a network-coded trial.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CodedTrial {
    pub round: FrameRound,
    pub fading: Fading,
    pub gd: f64,
    pub thr_d: f64,
    pub ge: f64,
    pub thr_e: f64,
    pub intersource: LegitIntersource,
    pub coupling: Coupling,
}

impl CodedTrial {
    #[inline]
    pub fn legit<R: Rng>(&self, rng: &mut R) -> (bool, bool) {
        let intersource_ok = match self.intersource {
            LegitIntersource::Perfect => true,
            LegitIntersource::Faded => self.gd * self.fading.gain(rng) >= self.thr_d,
        };
        (self.round.tagged_lost(rng, self.fading, self.gd, self.thr_d, intersource_ok), intersource_ok)
    }

    /// (reliability outage at D, tagged frame recovered at E)
    #[inline]
    pub fn run<R: Rng>(&self, rng: &mut R) -> (bool, bool) {
        let (lost_d, intersource_ok) = self.legit(rng);
        let eve_view = match self.coupling {
            Coupling::EvePerfectIntersource => true,
            Coupling::SharedIntersource => intersource_ok,
        };
        let lost_e = self.round.tagged_lost(rng, self.fading, self.ge, self.thr_e, eve_view);
        (lost_d, !lost_e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::substream;

    #[test]
    fn tally_is_worker_independent() {
        let mk = |workers| SimConfig { samples: 300_000, seed: 9, workers, ..SimConfig::default() };
        let trial = |rng: &mut ChaCha8Rng| {
            let u: f64 = rng.random();
            (u < 0.3, u > 0.9)
        };
        let one = run(&mk(1), trial).unwrap();
        for w in [2, 8] {
            assert_eq!(run(&mk(w), trial).unwrap(), one);
        }
        assert_eq!(one.either, one.first + one.second);
    }

    #[test]
    fn certain_loss_and_certain_success() {
        let round = FrameRound { sources: 2, broadcast: 2, parity: 2, fallback: Fallback::Counting };
        let mut rng = substream(1, 0);
        for ok in [true, false] {
            assert!(round.tagged_lost(&mut rng, Fading::Ziggurat, 1e-300, 1.0, ok));
            assert!(!round.tagged_lost(&mut rng, Fading::Ziggurat, 1e300, 1.0, ok));
        }
        let nc = FrameRound::nc();
        assert!(nc.tagged_lost(&mut rng, Fading::Ziggurat, 1e-300, 1.0, false));
        assert!(!nc.tagged_lost(&mut rng, Fading::InverseTransform, 1e300, 1.0, false));
    }
}
