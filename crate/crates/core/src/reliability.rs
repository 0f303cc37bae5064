//! Reliability (no-eavesdropper) outage of network-coded cooperation.
//!
//! The combinatorial formulas take the per-frame outage probability `p` as
//! their primitive argument; the `(rate, budget)` wrappers derive
//! `p = link_outage(rate / R_GNC, budget)`. The generic `*_in` variants run
//! the same sums in any [`Field`], which lets the enumeration oracle compare
//! against them in exact rational arithmetic.

use crate::channel::{erlang2_cdf, exp_cdf, LinkBudget};
use crate::error::{check_probability, check_rate, Error, Result};
use crate::math::{binomial, binomial_f64, powi, snr_threshold, Field};

/// Geometry of a generalized network-coded cooperation round: `sources`
/// nodes each broadcast `broadcast_frames` information frames and then send
/// `parity_frames` network-coded parity frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GncParams {
    sources: u32,
    broadcast_frames: u32,
    parity_frames: u32,
}

impl GncParams {
    pub fn new(sources: u32, broadcast_frames: u32, parity_frames: u32) -> Result<Self> {
        if sources < 2 {
            return Err(Error::domain(format!("GNC needs at least two sources, got {sources}")));
        }
        if broadcast_frames < 1 {
            return Err(Error::domain("GNC needs at least one broadcast frame per source"));
        }
        Ok(Self { sources, broadcast_frames, parity_frames })
    }

    /// The two-source, single-frame code (plain network coding).
    pub fn nc() -> Self {
        Self { sources: 2, broadcast_frames: 1, parity_frames: 1 }
    }

    pub fn sources(&self) -> u32 {
        self.sources
    }
    pub fn broadcast_frames(&self) -> u32 {
        self.broadcast_frames
    }
    pub fn parity_frames(&self) -> u32 {
        self.parity_frames
    }

    /// k1 / (k1 + k2).
    pub fn code_rate(&self) -> f64 {
        f64::from(self.broadcast_frames) / f64::from(self.broadcast_frames + self.parity_frames)
    }

    /// Diversity order with faded intersource links, M + k2.
    pub fn diversity(&self) -> u32 {
        self.sources + self.parity_frames
    }

    /// Order of the eavesdropper's favoured effective SNR, M·k2 + 1.
    pub fn eve_order(&self) -> u32 {
        self.sources * self.parity_frames + 1
    }

    pub(crate) fn require_two_sources(&self) -> Result<()> {
        if self.sources == 2 {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "the exact faded-intersource formula is defined for two sources, got M = {}",
                self.sources
            )))
        }
    }
}

pub fn gnc_rate(params: GncParams) -> f64 {
    params.code_rate()
}

/// High-SNR outage template μ·[O]^D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighSnrForm {
    pub coding_gain: f64,
    pub diversity_order: f64,
}

impl HighSnrForm {
    pub fn evaluate(&self, per_frame_outage: f64) -> f64 {
        self.coding_gain * per_frame_outage.powf(self.diversity_order)
    }
}

/// Intersource assumption for the high-SNR GNC outage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntersourceMode {
    /// Outage-free intersource links: μ = C(Mk2+Mk1−1, Mk2), D = Mk2+1.
    Free,
    /// Faded intersource links: μ = C(k1+k2−1, k2), D = M+k2.
    Faded,
}

impl IntersourceMode {
    pub fn form(self, params: GncParams) -> HighSnrForm {
        let (m, k1, k2) = (
            u64::from(params.sources),
            u64::from(params.broadcast_frames),
            u64::from(params.parity_frames),
        );
        match self {
            IntersourceMode::Free => HighSnrForm {
                coding_gain: binomial_f64(m * k2 + m * k1 - 1, m * k2),
                diversity_order: (m * k2 + 1) as f64,
            },
            IntersourceMode::Faded => HighSnrForm {
                coding_gain: binomial_f64(k1 + k2 - 1, k2),
                diversity_order: (m + k2) as f64,
            },
        }
    }
}

/// Probability that the tagged frame and at least `need` of the `others`
/// remaining frames are lost: p·Σ_{i=0}^{others−need} C(others, need+i)·p^(need+i)·(1−p)^(others−need−i).
fn tail_in<T: Field>(p: &T, others: u64, need: u64) -> T {
    let q = T::one() - p.clone();
    let mut acc = T::zero();
    for j in need..=others {
        acc = acc + T::from_count(&binomial(others, j)) * powi(p, j) * powi(&q, others - j);
    }
    p.clone() * acc
}

/// Free-intersource (outage-free links) GNC outage for any M, exact in `T`.
pub fn gnc_outage_free_intersource_in<T: Field>(p: &T, params: GncParams) -> T {
    let (m, k1, k2) = (
        u64::from(params.sources),
        u64::from(params.broadcast_frames),
        u64::from(params.parity_frames),
    );
    tail_in(p, m * (k1 + k2) - 1, m * k2)
}

/// Fallback branch when the intersource link is down: the tagged frame and
/// at least k2 of the source's own k1+k2−1 other frames are lost.
pub fn gnc_fallback_branch_in<T: Field>(p: &T, params: GncParams) -> T {
    let (k1, k2) = (u64::from(params.broadcast_frames), u64::from(params.parity_frames));
    tail_in(p, k1 + k2 - 1, k2)
}

/// Two-source GNC outage (1 − p)·O1 + p·O2, with the intersource outage
/// probability equal to the per-frame outage `p`. Exact in `T`.
pub fn gnc_outage_exact_2src_in<T: Field>(p: &T, params: GncParams) -> T {
    let two = GncParams { sources: 2, ..params };
    let o1 = gnc_outage_free_intersource_in(p, two);
    let o2 = gnc_fallback_branch_in(p, two);
    (T::one() - p.clone()) * o1 + p.clone() * o2
}

pub fn gnc_outage_exact_2src(p: f64, params: GncParams) -> Result<f64> {
    check_probability("p", p)?;
    params.require_two_sources()?;
    Ok(gnc_outage_exact_2src_in(&p, params).clamp(0.0, 1.0))
}

pub fn gnc_outage_free_intersource(p: f64, params: GncParams) -> Result<f64> {
    check_probability("p", p)?;
    Ok(gnc_outage_free_intersource_in(&p, params).clamp(0.0, 1.0))
}

/// Per-frame outage of a GNC frame sent at the scaled rate `rate / R_GNC`.
pub fn gnc_frame_outage(rate: f64, budget: LinkBudget, params: GncParams) -> Result<f64> {
    check_rate("rate", rate)?;
    Ok(exp_cdf(snr_threshold(rate / params.code_rate()) / budget.avg_snr()))
}

/// μ·[1 − exp(−(2^(rate/R_GNC) − 1)/γ̄)]^D, clamped to 1, together with the
/// (μ, D) pair used.
pub fn gnc_outage_highsnr(
    rate: f64,
    budget: LinkBudget,
    params: GncParams,
    mode: IntersourceMode,
) -> Result<(f64, HighSnrForm)> {
    let p = gnc_frame_outage(rate, budget, params)?;
    let form = mode.form(params);
    Ok((form.evaluate(p).min(1.0), form))
}

/// Exact two-source GNC outage at `(rate, budget)`.
pub fn gnc_outage(rate: f64, budget: LinkBudget, params: GncParams) -> Result<f64> {
    gnc_outage_exact_2src(gnc_frame_outage(rate, budget, params)?, params)
}

/// Two-source NC outage (1 − O)·3O³ + O·O_MRC with O and O_MRC at rate 2R.
pub fn nc_outage(rate: f64, budget: LinkBudget) -> Result<f64> {
    check_rate("rate", rate)?;
    let x = snr_threshold(2.0 * rate) / budget.avg_snr();
    let o = exp_cdf(x);
    let mrc = erlang2_cdf(x);
    Ok(((1.0 - o) * 3.0 * o.powi(3) + o * mrc).clamp(0.0, 1.0))
}

/// High-SNR NC outage 3.5·O(2R)³.
pub fn nc_outage_highsnr(rate: f64, budget: LinkBudget) -> Result<f64> {
    check_rate("rate", rate)?;
    let o = exp_cdf(snr_threshold(2.0 * rate) / budget.avg_snr());
    Ok((3.5 * o.powi(3)).min(1.0))
}

/// Least-squares slope of −ln(probability) against ln(avg SNR).
pub fn diversity_estimate(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::domain("diversity estimate needs at least two points"));
    }
    for w in points.windows(2) {
        if !(w[1].0 > w[0].0) {
            return Err(Error::domain("SNR grid must be strictly increasing"));
        }
    }
    if let Some(&(snr, prob)) = points.iter().find(|(s, p)| !(*s > 0.0 && *p > 0.0 && *p < 1.0)) {
        return Err(Error::domain(format!(
            "point ({snr}, {prob}) needs positive SNR and probability strictly inside (0, 1)"
        )));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|(s, _)| s.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, p)| -p.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("degenerate SNR grid"));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{link_outage, mrc2_outage};
    use proptest::prelude::*;

    fn params(m: u32, k1: u32, k2: u32) -> GncParams {
        GncParams::new(m, k1, k2).unwrap()
    }

    #[test]
    fn code_rates() {
        assert_eq!(gnc_rate(params(2, 2, 2)), 0.5);
        assert_eq!(gnc_rate(params(2, 1, 0)), 1.0);
        assert_eq!(gnc_rate(GncParams::nc()), 0.5);
        assert_eq!(gnc_rate(params(3, 3, 1)), 0.75);
    }

    #[test]
    fn params_validation() {
        assert!(GncParams::new(1, 1, 1).is_err());
        assert!(GncParams::new(2, 0, 1).is_err());
        assert!(GncParams::new(2, 1, 0).is_ok());
    }

    #[test]
    fn exact_two_source_reference() {
        let p = params(2, 1, 1);
        assert_eq!(gnc_outage_exact_2src(0.0, p).unwrap(), 0.0);
        assert!((gnc_outage_exact_2src(1.0, p).unwrap() - 1.0).abs() < 1e-15);
        assert!((gnc_outage_exact_2src(0.1, p).unwrap() - 0.003_52).abs() < 1e-15);
        assert!((gnc_outage_free_intersource(0.1, p).unwrap() - 0.002_8).abs() < 1e-15);
        assert!(gnc_outage_exact_2src(0.1, params(3, 1, 1)).is_err());
        assert!(gnc_outage_exact_2src(1.1, p).is_err());
        assert!(gnc_outage_free_intersource(-0.1, p).is_err());
    }

    #[test]
    fn all_fail_for_every_geometry() {
        for k1 in 1..4 {
            for k2 in 0..4 {
                let g = params(2, k1, k2);
                assert!((gnc_outage_exact_2src(1.0, g).unwrap() - 1.0).abs() < 1e-13);
                assert_eq!(gnc_outage_exact_2src(0.0, g).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn high_snr_forms() {
        let f = IntersourceMode::Faded.form(params(2, 2, 2));
        assert_eq!((f.coding_gain, f.diversity_order), (3.0, 4.0));
        let f = IntersourceMode::Free.form(params(2, 1, 1));
        assert_eq!((f.coding_gain, f.diversity_order), (3.0, 3.0));
        let f = IntersourceMode::Free.form(params(2, 2, 2));
        assert_eq!(f.coding_gain, 35.0);
        let (v, _) = gnc_outage_highsnr(1.0, LinkBudget::new(1e300).unwrap(), params(2, 2, 2), IntersourceMode::Faded).unwrap();
        assert!(v < 1e-290);
    }

    #[test]
    fn free_leading_coefficient() {
        let g = params(2, 2, 2);
        let p = 1e-5;
        let lead = gnc_outage_free_intersource(p, g).unwrap() / p.powi(5);
        assert!((lead - 35.0).abs() / 35.0 < 1e-3);
    }

    #[test]
    fn nc_formula() {
        let b = LinkBudget::new(100.0).unwrap();
        assert_eq!(nc_outage(0.0, b).unwrap(), 0.0);
        let o = link_outage(2.0, b).unwrap();
        let expected = (1.0 - o) * 3.0 * o.powi(3) + o * mrc2_outage(2.0, b).unwrap();
        assert!((nc_outage(1.0, b).unwrap() - expected).abs() < 1e-18);
        for db in [50.0, 60.0, 80.0] {
            let b = LinkBudget::from_db(db).unwrap();
            let ratio = nc_outage(1.0, b).unwrap() / link_outage(2.0, b).unwrap().powi(3);
            assert!((ratio - 3.5).abs() / 3.5 < 1e-3, "{db} dB: {ratio}");
        }
    }

    #[test]
    fn nc_and_gnc11_share_diversity_but_not_coefficient() {
        // NC keeps its MRC fallback (coefficient 3.5); the GNC(1,1) fallback
        // decodes the retransmission on its own (coefficient 4).
        let b = LinkBudget::from_db(70.0).unwrap();
        let o = link_outage(2.0, b).unwrap();
        let nc = nc_outage(1.0, b).unwrap() / o.powi(3);
        let gnc = gnc_outage(1.0, b, GncParams::nc()).unwrap() / o.powi(3);
        assert!((nc - 3.5).abs() < 1e-3);
        assert!((gnc - 4.0).abs() < 1e-3);
    }

    #[test]
    fn diversity_of_synthetic_curves() {
        for d in [1.0, 2.0, 4.0, 7.5] {
            let pts: Vec<_> = (0..=10)
                .map(|i| {
                    let g = 1e5 * 10f64.powf(i as f64 / 10.0);
                    (g, 2.0 * exp_cdf(3.0 / g).powf(d))
                })
                .collect();
            assert!((diversity_estimate(&pts).unwrap() - d).abs() < 0.05);
        }
        let dt: Vec<_> = (0..=10)
            .map(|i| {
                let g = db_grid(50.0, i);
                (g, link_outage(1.0, LinkBudget::new(g).unwrap()).unwrap())
            })
            .collect();
        assert!((diversity_estimate(&dt).unwrap() - 1.0).abs() < 0.05);
        let gnc: Vec<_> = (0..=10)
            .map(|i| {
                let g = db_grid(50.0, i);
                let b = LinkBudget::new(g).unwrap();
                (g, gnc_outage_highsnr(1.0, b, params(2, 2, 2), IntersourceMode::Faded).unwrap().0)
            })
            .collect();
        assert!((diversity_estimate(&gnc).unwrap() - 4.0).abs() < 0.1);
    }

    fn db_grid(start: f64, i: usize) -> f64 {
        crate::channel::db_to_linear(start + i as f64)
    }

    #[test]
    fn diversity_errors() {
        assert!(diversity_estimate(&[(1.0, 0.5)]).is_err());
        assert!(diversity_estimate(&[(2.0, 0.5), (1.0, 0.4)]).is_err());
        assert!(diversity_estimate(&[(1.0, 0.5), (2.0, 0.0)]).is_err());
        assert!(diversity_estimate(&[(1.0, 1.0), (2.0, 0.1)]).is_err());
    }

    proptest! {
        #[test]
        fn exact_monotone_in_p_and_parity(p in 0.0f64..0.5, dp in 0.0f64..0.5, k1 in 1u32..4, k2 in 0u32..4) {
            let g = params(2, k1, k2);
            let more = params(2, k1, k2 + 1);
            let a = gnc_outage_exact_2src(p, g).unwrap();
            prop_assert!(gnc_outage_exact_2src((p + dp).min(1.0), g).unwrap() >= a - 1e-15);
            prop_assert!(gnc_outage_exact_2src(p, more).unwrap() <= a + 1e-15);
        }

        #[test]
        fn perfect_intersource_helps_at_moderate_p(p in 0.0f64..0.15, k1 in 1u32..6, k2 in 0u32..5) {
            let g = params(2, k1, k2);
            prop_assert!(gnc_outage_free_intersource(p, g).unwrap() <= gnc_outage_exact_2src(p, g).unwrap() * (1.0 + 1e-14));
        }
    }

    #[test]
    fn perfect_intersource_can_hurt_for_large_k1() {
        // 2 of 7 other frames lost is likelier than 1 of 3 once p ≳ 0.28
        let g = params(2, 3, 1);
        assert!(gnc_outage_free_intersource(0.35, g).unwrap() > gnc_outage_exact_2src(0.35, g).unwrap());
    }
}
