//! Secrecy outage probability (SOP) closed forms.
//!
//! Two transmitter-knowledge regimes are covered:
//!
//! * **partial CSI**: the sources know the legitimate channels and adapt the
//!   total rate, so an outage is `C_s < Rs`, evaluated as
//!   `γ_D < ξ(1 + γ_E) − 1` with `ξ = 2^(Rs/R_X)`;
//! * **no CSI**: fixed total rate `R` and equivocation rate `RE`; the SOP is
//!   the union of the independent reliability and secrecy outage events.
//!
//! All rates passed in are pre-cooperation rates. Each operation divides by
//! its scheme's code rate (DF: 1/2, GNC: k1/(k1+k2)).

use crate::channel::{erlang2_cdf, exp_cdf, EffectiveSnr, LinkBudget};
use crate::error::{check_probability, check_rate, Error, Result};
use crate::math::{binomial, binomial_f64, snr_threshold, CompensatedSum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use crate::quadrature::{integrate_to_infinity, Tolerance};
use crate::reliability::{
    gnc_frame_outage, gnc_outage_exact_2src, gnc_outage_free_intersource_in, GncParams, IntersourceMode,
};
use crate::special::beta_fn;

/// Target rates in bits per channel use, with `Rs = R − RE`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyRates {
    secrecy_rate: f64,
    total_rate: f64,
    equivocation_rate: f64,
}

impl SecrecyRates {
    /// Partial-CSI rates: only `Rs` matters, the total rate tracks the
    /// legitimate capacity. Stored with `R = Rs`, `RE = 0`.
    pub fn partial_csi(secrecy_rate: f64) -> Result<Self> {
        check_rate("Rs", secrecy_rate)?;
        Ok(Self { secrecy_rate, total_rate: secrecy_rate, equivocation_rate: 0.0 })
    }

    /// No-CSI rates from the wiretap code's total and equivocation rates.
    pub fn no_csi(total_rate: f64, equivocation_rate: f64) -> Result<Self> {
        check_rate("R", total_rate)?;
        check_rate("RE", equivocation_rate)?;
        if equivocation_rate > total_rate {
            return Err(Error::domain(format!(
                "equivocation rate {equivocation_rate} exceeds total rate {total_rate}"
            )));
        }
        Ok(Self { secrecy_rate: total_rate - equivocation_rate, total_rate, equivocation_rate })
    }

    pub fn secrecy_rate(&self) -> f64 {
        self.secrecy_rate
    }
    pub fn total_rate(&self) -> f64 {
        self.total_rate
    }
    pub fn equivocation_rate(&self) -> f64 {
        self.equivocation_rate
    }
}

/// No-CSI SOP split into its two independent events.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SopBreakdown {
    pub total: f64,
    pub reliability: f64,
    pub secrecy: f64,
}

impl SopBreakdown {
    fn compose_unchecked(reliability: f64, secrecy: f64) -> Self {
        Self { total: reliability + secrecy - reliability * secrecy, reliability, secrecy }
    }
}

/// Union of a reliability outage and a secrecy outage: r + s − r·s.
pub fn sop_nocsi_compose(reliability: f64, secrecy: f64) -> Result<SopBreakdown> {
    check_probability("reliability", reliability)?;
    check_probability("secrecy", secrecy)?;
    Ok(SopBreakdown::compose_unchecked(reliability, secrecy))
}

/// Pr{C_s > 0} for direct transmission: γ̄D / (γ̄D + γ̄E).
pub fn prob_positive_secrecy_dt(g_d: LinkBudget, g_e: LinkBudget) -> f64 {
    g_d.avg_snr() / (g_d.avg_snr() + g_e.avg_snr())
}

/// DT partial-CSI SOP 1 − γ̄D/(γ̄D + ξγ̄E)·exp(−(ξ−1)/γ̄D), ξ = 2^Rs.
pub fn sop_dt_csi(rates: SecrecyRates, g_d: LinkBudget, g_e: LinkBudget) -> f64 {
    let (gd, ge) = (g_d.avg_snr(), g_e.avg_snr());
    let xi_m1 = snr_threshold(rates.secrecy_rate);
    let xi = 1.0 + xi_m1;
    let c = xi_m1 / gd;
    // 1 − a·e^{−c} = (1 − e^{−c}) + e^{−c}(1 − a): a sum of nonnegative terms.
    (exp_cdf(c) + (-c).exp() * xi * ge / (gd + xi * ge)).clamp(0.0, 1.0)
}

/// DT no-CSI SOP: reliability O(R, γ̄D), secrecy exp(−(2^RE − 1)/γ̄E).
pub fn sop_dt_nocsi(rates: SecrecyRates, g_d: LinkBudget, g_e: LinkBudget) -> SopBreakdown {
    let reliability = exp_cdf(snr_threshold(rates.total_rate) / g_d.avg_snr());
    let secrecy = (-snr_threshold(rates.equivocation_rate) / g_e.avg_snr()).exp();
    SopBreakdown::compose_unchecked(reliability, secrecy)
}

/// Two-source DF partial-CSI SOP with MRC at both receivers, ξ = 2^(2Rs).
pub fn sop_df_csi(rates: SecrecyRates, g_d: LinkBudget, g_e: LinkBudget) -> f64 {
    let (gd, ge) = (g_d.avg_snr(), g_e.avg_snr());
    let xi_m1 = snr_threshold(2.0 * rates.secrecy_rate);
    let xi = 1.0 + xi_m1;
    let s = xi * ge;
    let bracket = gd * (xi_m1 + gd) + s * (xi_m1 + 3.0 * gd);
    (1.0 - gd / (gd + s).powi(3) * (-xi_m1 / gd).exp() * bracket).clamp(0.0, 1.0)
}

/// DF no-CSI SOP: reliability O_MRC(2R, γ̄D), secrecy 1 − O_MRC(2RE, γ̄E).
pub fn sop_df_nocsi(rates: SecrecyRates, g_d: LinkBudget, g_e: LinkBudget) -> SopBreakdown {
    let reliability = erlang2_cdf(snr_threshold(2.0 * rates.total_rate) / g_d.avg_snr());
    let x = snr_threshold(2.0 * rates.equivocation_rate) / g_e.avg_snr();
    let secrecy = (-x).exp() * (1.0 + x);
    SopBreakdown::compose_unchecked(reliability, secrecy.min(1.0))
}

/// Evaluation route for the partial-CSI GNC SOP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GncCsiMethod {
    /// Alternating binomial sum of Beta functions (the closed form).
    Theorem1,
    /// Direct numerical integration of F_D(ξ(1+γE) − 1)·p_E(γE).
    Quadrature,
    /// High-SNR collapse [1 − exp(−(ξ−1)/γ̄D)]^(M+k2).
    Asymptotic,
}

/// Sums whose absolute terms exceed the result by more than this factor are
/// handed to quadrature.
pub const THEOREM1_MAX_CONDITION: f64 = 1e8;

/// Outcome of the closed-form partial-CSI GNC evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem1Evaluation {
    pub value: f64,
    /// Sum of absolute terms over |result|.
    pub condition: f64,
    /// The sum was ill-conditioned and the value comes from quadrature.
    pub used_quadrature: bool,
}

struct GncCsiSetup {
    xi_minus_one: f64,
    d: EffectiveSnr,
    e: EffectiveSnr,
}

impl GncCsiSetup {
    fn new(rates: SecrecyRates, g_d: LinkBudget, g_e: LinkBudget, params: GncParams) -> Result<Self> {
        Ok(Self {
            xi_minus_one: snr_threshold(rates.secrecy_rate / params.code_rate()),
            d: EffectiveSnr::new(g_d, params.diversity())?,
            e: EffectiveSnr::new(g_e, params.eve_order())?,
        })
    }

    fn theorem1_sum(&self) -> Result<CompensatedSum> {
        let (gd, ge) = (self.d.avg_snr, self.e.avg_snr);
        let n = u64::from(self.d.order);
        let nu = f64::from(self.e.order);
        let xi = 1.0 + self.xi_minus_one;
        let mut sum = CompensatedSum::new();
        for i in 0..=n {
            let fi = i as f64;
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let beta = beta_fn(1.0 + xi * ge * fi / gd, nu)?;
            sum.add(sign * nu * binomial_f64(n, i) * (-self.xi_minus_one * fi / gd).exp() * beta);
        }
        Ok(sum)
    }

    fn quadrature(&self) -> Result<f64> {
        let xi = 1.0 + self.xi_minus_one;
        let integrand = |ge: f64| self.d.cdf(self.xi_minus_one + xi * ge) * self.e.pdf(ge);
        // Past this point Eve's effective-SNR tail mass is below 1e-12; the
        // doubling panels beyond it certify the remainder relative to the total.
        let start = self.e.avg_snr * (1e12f64.ln() + f64::from(self.e.order).ln());
        let q = integrate_to_infinity(integrand, 0.0, start, Tolerance::default())?;
        Ok(q.value)
    }

    /// The closed-form sum in exact rational arithmetic, from the f64
    /// values of 1 − e^(−(ξ−1)/γ̄D) and ξγ̄E/γ̄D. With an integer second
    /// argument, ν·B(x, ν) = ν!/(x(x+1)…(x+ν−1)).
    fn theorem1_rational(&self) -> Result<f64> {
        let n = u64::from(self.d.order);
        let nu = u64::from(self.e.order);
        let exact = |x: f64| {
            BigRational::from_float(x).ok_or_else(|| Error::domain(format!("non-finite intermediate {x}")))
        };
        let c = exact(-(-self.xi_minus_one / self.d.avg_snr).exp_m1())?;
        let a = exact((1.0 + self.xi_minus_one) * self.e.avg_snr / self.d.avg_snr)?;
        let one = BigRational::one();
        let q = &one - &c;
        let nu_factorial = BigRational::from_integer((1..=nu).product::<BigInt>());
        let mut total = BigRational::zero();
        let mut q_pow = one.clone();
        for i in 0..=n {
            let x = &one + &a * BigRational::from_integer(BigInt::from(i));
            let mut denom = one.clone();
            for k in 0..nu {
                denom *= &x + BigRational::from_integer(BigInt::from(k));
            }
            let term = BigRational::from_integer(BigInt::from(binomial(n, i))) * &q_pow * &nu_factorial / denom;
            if i % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
            q_pow *= &q;
        }
        total.to_f64().ok_or_else(|| Error::domain("rational sum out of range"))
    }

    fn asymptotic(&self) -> f64 {
        exp_cdf(self.xi_minus_one / self.d.avg_snr).powi(self.d.order as i32)
    }
}

/// Closed-form partial-CSI GNC SOP with its conditioning diagnostics.
pub fn sop_gnc_csi_theorem1(
    rates: SecrecyRates,
    g_d: LinkBudget,
    g_e: LinkBudget,
    params: GncParams,
) -> Result<Theorem1Evaluation> {
    let setup = GncCsiSetup::new(rates, g_d, g_e, params)?;
    let sum = setup.theorem1_sum()?;
    let condition = sum.condition();
    let value = sum.value();
    if condition > THEOREM1_MAX_CONDITION || !(value > 0.0) || !value.is_finite() {
        let value = setup.quadrature()?;
        return Ok(Theorem1Evaluation { value: value.clamp(0.0, 1.0), condition, used_quadrature: true });
    }
    Ok(Theorem1Evaluation { value: value.clamp(0.0, 1.0), condition, used_quadrature: false })
}

/// The closed-form partial-CSI GNC sum evaluated in exact rational
/// arithmetic. Slow; a reference for the floating-point paths.
pub fn sop_gnc_csi_theorem1_rational(
    rates: SecrecyRates,
    g_d: LinkBudget,
    g_e: LinkBudget,
    params: GncParams,
) -> Result<f64> {
    Ok(GncCsiSetup::new(rates, g_d, g_e, params)?.theorem1_rational()?.clamp(0.0, 1.0))
}

/// Partial-CSI GNC SOP with the effective-SNR laws of order M+k2 at D and
/// Mk2+1 at E, ξ = 2^(Rs/R_GNC).
pub fn sop_gnc_csi(
    rates: SecrecyRates,
    g_d: LinkBudget,
    g_e: LinkBudget,
    params: GncParams,
    method: GncCsiMethod,
) -> Result<f64> {
    match method {
        GncCsiMethod::Theorem1 => Ok(sop_gnc_csi_theorem1(rates, g_d, g_e, params)?.value),
        GncCsiMethod::Quadrature => {
            Ok(GncCsiSetup::new(rates, g_d, g_e, params)?.quadrature()?.clamp(0.0, 1.0))
        }
        GncCsiMethod::Asymptotic => Ok(GncCsiSetup::new(rates, g_d, g_e, params)?.asymptotic()),
    }
}

/// Evaluation route for the no-CSI GNC SOP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GncNoCsiMethod {
    /// Exact two-source legitimate outage composed with Eve's
    /// free-intersource outage.
    ExactTwoSource,
    /// Both sides replaced by their high-SNR forms.
    Approx,
    /// The γ̄D → ∞ limit, 1 − O1(RE, γ̄E).
    Floor,
    /// max(floor, approx).
    MaxApprox,
}

/// 1 − O1 evaluated as a sum of nonnegative terms.
fn eve_recovery(p_e: f64, params: GncParams) -> f64 {
    let (m, k1, k2) = (
        u64::from(params.sources()),
        u64::from(params.broadcast_frames()),
        u64::from(params.parity_frames()),
    );
    let others = m * (k1 + k2) - 1;
    let q = 1.0 - p_e;
    let mut acc = CompensatedSum::new();
    acc.add(q);
    for j in 0..m * k2 {
        acc.add(p_e * binomial_f64(others, j) * p_e.powi(j as i32) * q.powi((others - j) as i32));
    }
    debug_assert!({
        let direct = 1.0 - gnc_outage_free_intersource_in(&p_e, params);
        (acc.value() - direct).abs() < 1e-12
    });
    acc.value().clamp(0.0, 1.0)
}

pub fn sop_gnc_nocsi(
    rates: SecrecyRates,
    g_d: LinkBudget,
    g_e: LinkBudget,
    params: GncParams,
    method: GncNoCsiMethod,
) -> Result<SopBreakdown> {
    let p_d = gnc_frame_outage(rates.total_rate, g_d, params)?;
    let p_e = gnc_frame_outage(rates.equivocation_rate, g_e, params)?;
    let floor = || SopBreakdown::compose_unchecked(0.0, eve_recovery(p_e, params));
    let approx = || {
        let reliability = IntersourceMode::Faded.form(params).evaluate(p_d).min(1.0);
        let secrecy = (1.0 - IntersourceMode::Free.form(params).evaluate(p_e)).clamp(0.0, 1.0);
        SopBreakdown::compose_unchecked(reliability, secrecy)
    };
    Ok(match method {
        GncNoCsiMethod::ExactTwoSource => {
            let reliability = gnc_outage_exact_2src(p_d, params)?;
            SopBreakdown::compose_unchecked(reliability, eve_recovery(p_e, params))
        }
        GncNoCsiMethod::Approx => approx(),
        GncNoCsiMethod::Floor => floor(),
        GncNoCsiMethod::MaxApprox => {
            let (f, a) = (floor(), approx());
            if f.total >= a.total {
                f
            } else {
                a
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{db_to_linear, link_outage, mrc2_outage};
    use crate::quadrature::integrate_to_infinity;
    use proptest::prelude::*;

    fn b(g: f64) -> LinkBudget {
        LinkBudget::new(g).unwrap()
    }
    fn gnc(m: u32, k1: u32, k2: u32) -> GncParams {
        GncParams::new(m, k1, k2).unwrap()
    }
    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn rates_contract() {
        let r = SecrecyRates::no_csi(3.0, 2.0).unwrap();
        assert_eq!(r.secrecy_rate(), 1.0);
        assert!(SecrecyRates::no_csi(2.0, 3.0).is_err());
        assert!(SecrecyRates::partial_csi(-1.0).is_err());
        assert_eq!(SecrecyRates::partial_csi(0.5).unwrap().secrecy_rate(), 0.5);
    }

    #[test]
    fn compose_examples() {
        assert_eq!(sop_nocsi_compose(0.0, 0.3).unwrap().total, 0.3);
        assert_eq!(sop_nocsi_compose(0.3, 0.0).unwrap().total, 0.3);
        assert!((sop_nocsi_compose(0.3, 0.2).unwrap().total - 0.44).abs() < 1e-15);
        assert!(sop_nocsi_compose(1.2, 0.2).is_err());
    }

    #[test]
    fn positive_secrecy_probability() {
        assert_eq!(prob_positive_secrecy_dt(b(7.0), b(7.0)), 0.5);
        assert_eq!(prob_positive_secrecy_dt(b(30.0), b(10.0)), 0.75);
        assert!((prob_positive_secrecy_dt(b(1.0), b(1e-12)) - (1.0 - 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn dt_csi_examples() {
        let r = SecrecyRates::partial_csi(0.5).unwrap();
        assert!((sop_dt_csi(r, b(100.0), b(10.0)) - 0.127_521).abs() < 1e-6);
        let zero = SecrecyRates::partial_csi(0.0).unwrap();
        let s = sop_dt_csi(zero, b(30.0), b(10.0));
        assert!((s - (1.0 - prob_positive_secrecy_dt(b(30.0), b(10.0)))).abs() < 1e-15);
        let lim = sop_dt_csi(r, b(5.0), b(1e-12));
        assert!((lim - link_outage(0.5, b(5.0)).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn dt_nocsi_examples() {
        let r = SecrecyRates::no_csi(3.0, 2.0).unwrap();
        let s = sop_dt_nocsi(r, b(20.0), b(1e-9));
        assert!((s.total - link_outage(3.0, b(20.0)).unwrap()).abs() < 1e-12);
        let floor = sop_dt_nocsi(r, b(1e15), b(db_to_linear(2.0)));
        assert!((floor.total - (-3.0 / db_to_linear(2.0)).exp()).abs() < 1e-12);
        assert!((floor.total - 0.1506).abs() < 1e-4);
        let eq = SecrecyRates::no_csi(2.0, 2.0).unwrap();
        assert!((sop_dt_nocsi(eq, b(10.0), b(1e15)).total - 1.0).abs() < 1e-12);
        // printed closed form
        let (gd, ge) = (b(50.0), b(3.0));
        let printed = 1.0 - (-7.0 / 50.0f64).exp() * (1.0 - (-3.0 / 3.0f64).exp());
        assert!((sop_dt_nocsi(r, gd, ge).total - printed).abs() < 1e-15);
    }

    #[test]
    fn df_csi_examples() {
        let zero = SecrecyRates::partial_csi(0.0).unwrap();
        for g in [0.1, 1.0, 10.0, 1e4] {
            assert!((sop_df_csi(zero, b(g), b(g)) - 0.5).abs() < 1e-12);
        }
        let r = SecrecyRates::partial_csi(0.5).unwrap();
        let lim = sop_df_csi(r, b(20.0), b(1e-12));
        assert!((lim - mrc2_outage(1.0, b(20.0)).unwrap()).abs() < 1e-10);
        // Independent numerical integration over Eve's Erlang-2 SNR.
        let (gd, ge) = (100.0, 10.0);
        let xi = 2f64.powf(1.0);
        let q = integrate_to_infinity(
            |y| {
                let x = (xi * (1.0 + y) - 1.0) / gd;
                (1.0 - (-x).exp() * (1.0 + x)) * y / (ge * ge) * (-y / ge).exp()
            },
            0.0,
            400.0,
            Tolerance::default(),
        )
        .unwrap();
        assert!(rel(sop_df_csi(r, b(gd), b(ge)), q.value) < 1e-10);
    }

    #[test]
    fn df_nocsi_examples() {
        let r = SecrecyRates::no_csi(3.0, 2.0).unwrap();
        let s = sop_df_nocsi(r, b(40.0), b(1e-9));
        assert!((s.total - mrc2_outage(6.0, b(40.0)).unwrap()).abs() < 1e-12);
        let ge = b(db_to_linear(2.0));
        let floor = sop_df_nocsi(r, b(1e15), ge);
        assert!((floor.total - (1.0 - mrc2_outage(4.0, ge).unwrap())).abs() < 1e-12);
    }

    #[test]
    fn gnc_csi_zero_rate_no_eve() {
        let r = SecrecyRates::partial_csi(0.0).unwrap();
        for m in [GncCsiMethod::Theorem1, GncCsiMethod::Quadrature, GncCsiMethod::Asymptotic] {
            let v = sop_gnc_csi(r, b(10.0), b(1e-9), gnc(2, 2, 2), m).unwrap();
            assert!(v.abs() < 1e-12, "{m:?}: {v}");
        }
    }

    #[test]
    fn theorem1_matches_quadrature() {
        let r = SecrecyRates::partial_csi(0.5).unwrap();
        let t = sop_gnc_csi(r, b(1e3), b(10.0), gnc(2, 2, 2), GncCsiMethod::Theorem1).unwrap();
        let q = sop_gnc_csi(r, b(1e3), b(10.0), gnc(2, 2, 2), GncCsiMethod::Quadrature).unwrap();
        assert!(rel(t, q) < 1e-6, "{t} vs {q}");
        // well-conditioned point: the closed form itself is used
        let e = sop_gnc_csi_theorem1(r, b(20.0), b(10.0), gnc(2, 2, 2)).unwrap();
        assert!(!e.used_quadrature);
        let q = sop_gnc_csi(r, b(20.0), b(10.0), gnc(2, 2, 2), GncCsiMethod::Quadrature).unwrap();
        assert!(rel(e.value, q) < 1e-9);
    }

    #[test]
    fn rational_sum_matches_quadrature_where_floats_cancel() {
        let r = SecrecyRates::partial_csi(0.5).unwrap();
        for (p, gd) in [(gnc(2, 2, 2), 1e4), (gnc(3, 2, 1), 1e4), (gnc(2, 1, 1), 30.0)] {
            let exact = sop_gnc_csi_theorem1_rational(r, b(gd), b(10.0), p).unwrap();
            let quad = sop_gnc_csi(r, b(gd), b(10.0), p, GncCsiMethod::Quadrature).unwrap();
            assert!(rel(exact, quad) < 1e-9, "{p:?} {gd}: {exact} vs {quad}");
        }
    }

    #[test]
    fn ill_conditioned_sum_falls_back() {
        let r = SecrecyRates::partial_csi(0.5).unwrap();
        let e = sop_gnc_csi_theorem1(r, b(1e6), b(10.0), gnc(2, 2, 2)).unwrap();
        assert!(e.used_quadrature);
        assert!(e.condition > THEOREM1_MAX_CONDITION);
        assert!(e.value > 0.0 && e.value < 1e-15);
    }

    #[test]
    fn theorem1_over_asymptote_settles() {
        // Same slope, constant ratio E[(ξ(1+γE) − 1)^n] / (ξ − 1)^n.
        let r = SecrecyRates::partial_csi(0.5).unwrap();
        let ratio = |gd: f64| {
            let p = gnc(2, 2, 2);
            sop_gnc_csi(r, b(gd), b(10.0), p, GncCsiMethod::Theorem1).unwrap()
                / sop_gnc_csi(r, b(gd), b(10.0), p, GncCsiMethod::Asymptotic).unwrap()
        };
        let (a, c) = (ratio(1e7), ratio(1e8));
        assert!(rel(a, c) < 1e-3, "{a} vs {c}");
    }

    #[test]
    fn nocsi_gnc_floor_limits() {
        let p = gnc(2, 2, 2);
        let r = SecrecyRates::no_csi(3.0, 2.0).unwrap();
        let f = sop_gnc_nocsi(r, b(10.0), b(1e-9), p, GncNoCsiMethod::Floor).unwrap();
        assert!(f.total < 1e-12);
        let r0 = SecrecyRates::no_csi(3.0, 0.0).unwrap();
        let f = sop_gnc_nocsi(r0, b(10.0), b(5.0), p, GncNoCsiMethod::Floor).unwrap();
        assert!((f.total - 1.0).abs() < 1e-15);
        let ge = b(db_to_linear(2.0));
        let f = sop_gnc_nocsi(r, b(10.0), ge, p, GncNoCsiMethod::Floor).unwrap();
        let p_e = link_outage(4.0, ge).unwrap();
        let direct = 1.0 - crate::reliability::gnc_outage_free_intersource(p_e, p).unwrap();
        assert!(rel(f.total, direct) < 1e-9);
        // The exact two-source SOP approaches the floor from above.
        let e = sop_gnc_nocsi(r, b(1e8), ge, p, GncNoCsiMethod::ExactTwoSource).unwrap();
        assert!(e.total >= f.total && rel(e.total, f.total) < 1e-6);
    }

    #[test]
    fn nocsi_gnc_methods() {
        let p = gnc(2, 2, 2);
        let r = SecrecyRates::no_csi(3.0, 2.0).unwrap();
        let ge = b(db_to_linear(2.0));
        for db in [10.0, 20.0, 30.0, 40.0, 60.0] {
            let gd = b(db_to_linear(db));
            let approx = sop_gnc_nocsi(r, gd, ge, p, GncNoCsiMethod::Approx).unwrap();
            let floor = sop_gnc_nocsi(r, gd, ge, p, GncNoCsiMethod::Floor).unwrap();
            let max = sop_gnc_nocsi(r, gd, ge, p, GncNoCsiMethod::MaxApprox).unwrap();
            assert_eq!(max.total, approx.total.max(floor.total));
            for s in [approx, floor, max] {
                let recomposed = s.reliability + s.secrecy - s.reliability * s.secrecy;
                assert!((s.total - recomposed).abs() <= 1e-15);
            }
        }
        assert!(sop_gnc_nocsi(r, b(10.0), ge, gnc(3, 2, 2), GncNoCsiMethod::ExactTwoSource).is_err());
        assert!(sop_gnc_nocsi(r, b(10.0), ge, gnc(3, 2, 2), GncNoCsiMethod::MaxApprox).is_ok());
    }

    #[test]
    fn approx_tracks_exact_in_reliability_dominated_regime() {
        // Eve is far below her equivocation threshold, so the secrecy event is
        // negligible and both routes reduce to the legitimate outage.
        let ge = b(db_to_linear(-30.0));
        for (m, k1, k2) in [(2, 1, 2), (2, 2, 2), (2, 2, 3), (2, 3, 2)] {
            let p = gnc(m, k1, k2);
            for rate in [0.5, 1.0] {
                let r = SecrecyRates::no_csi(rate, rate).unwrap();
                for db in [40.0, 45.0, 50.0, 60.0] {
                    let gd = b(db_to_linear(db));
                    let e = sop_gnc_nocsi(r, gd, ge, p, GncNoCsiMethod::ExactTwoSource).unwrap();
                    let a = sop_gnc_nocsi(r, gd, ge, p, GncNoCsiMethod::Approx).unwrap();
                    if e.total <= 1e-2 {
                        assert!(rel(a.total, e.total) < 0.05, "{p:?} R={rate} {db} dB: {} vs {}", a.total, e.total);
                    }
                }
            }
        }
    }

    #[test]
    fn approx_misses_floor() {
        // Where the secrecy floor dominates, only max(floor, approx) follows
        // the exact curve.
        let p = gnc(2, 2, 2);
        let r = SecrecyRates::no_csi(3.0, 2.0).unwrap();
        let (gd, ge) = (b(1e6), b(db_to_linear(2.0)));
        let e = sop_gnc_nocsi(r, gd, ge, p, GncNoCsiMethod::ExactTwoSource).unwrap();
        let a = sop_gnc_nocsi(r, gd, ge, p, GncNoCsiMethod::Approx).unwrap();
        let m = sop_gnc_nocsi(r, gd, ge, p, GncNoCsiMethod::MaxApprox).unwrap();
        assert!(a.total < 0.1 * e.total);
        assert!(rel(m.total, e.total) < 1e-3);
    }

    proptest! {
        #[test]
        fn sops_are_monotone_probabilities(
            rs in 0.0f64..3.0, re in 0.0f64..3.0,
            gd_db in -10.0f64..50.0, ge_db in -10.0f64..30.0, step in 0.5f64..10.0,
            k1 in 1u32..3, k2 in 1u32..3,
        ) {
            let csi = SecrecyRates::partial_csi(rs).unwrap();
            let nocsi = SecrecyRates::no_csi(rs + re, re).unwrap();
            let p = gnc(2, k1, k2);
            let gd = b(db_to_linear(gd_db));
            let gd2 = b(db_to_linear(gd_db + step));
            let ge = b(db_to_linear(ge_db));
            let ge2 = b(db_to_linear(ge_db + step));
            let tol = 1e-9;
            let check = |f: &dyn Fn(LinkBudget, LinkBudget) -> f64| -> Result<(), TestCaseError> {
                let base = f(gd, ge);
                prop_assert!((0.0..=1.0).contains(&base));
                prop_assert!(f(gd2, ge) <= base * (1.0 + tol) + 1e-300);
                prop_assert!(f(gd, ge2) >= base * (1.0 - tol));
                Ok(())
            };
            check(&|d, e| sop_dt_csi(csi, d, e))?;
            check(&|d, e| sop_df_csi(csi, d, e))?;
            check(&|d, e| sop_dt_nocsi(nocsi, d, e).total)?;
            check(&|d, e| sop_df_nocsi(nocsi, d, e).total)?;
            for m in [GncCsiMethod::Theorem1, GncCsiMethod::Asymptotic] {
                check(&|d, e| sop_gnc_csi(csi, d, e, p, m).unwrap())?;
            }
            for m in [GncNoCsiMethod::ExactTwoSource, GncNoCsiMethod::Approx, GncNoCsiMethod::Floor, GncNoCsiMethod::MaxApprox] {
                check(&|d, e| sop_gnc_nocsi(nocsi, d, e, p, m).unwrap().total)?;
            }
        }
    }
}
