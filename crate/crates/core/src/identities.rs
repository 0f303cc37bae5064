//! Numerical cross-checks of the integral and Beta-function steps behind the
//! partial-CSI GNC closed form.

use crate::channel::LinkBudget;
use crate::error::{Error, Result};
use crate::math::{binomial_f64, snr_threshold, CompensatedSum};
use crate::quadrature::{integrate_to_infinity, Tolerance};
use crate::reliability::{gnc_rate, GncParams};
use crate::secrecy::SecrecyRates;
use crate::special::beta_fn;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub numeric: f64,
    pub closed_form: f64,
}

impl IdentityCheck {
    pub fn relative_error(&self) -> f64 {
        ((self.numeric - self.closed_form) / self.closed_form).abs()
    }
}

/// ∫₀^∞ [1 − e^(−x/β)]^(ν−1) e^(−αx) dx by quadrature against β·B(βα, ν).
pub fn exp_power_integral(alpha: f64, beta: f64, nu: f64) -> Result<IdentityCheck> {
    if !(alpha > 0.0 && beta > 0.0 && nu > 0.0) || !(alpha * beta * nu).is_finite() {
        return Err(Error::domain(format!("need α, β, ν > 0, got ({alpha}, {beta}, {nu})")));
    }
    let f = |x: f64| (-(-x / beta).exp_m1()).powf(nu - 1.0) * (-alpha * x).exp();
    // an algebraic singularity at 0 when ν < 1 is integrable; start the
    // doubling panels at a few decay lengths
    let start = 4.0 / alpha;
    let q = integrate_to_infinity(f, 0.0, start, Tolerance { rel: 1e-12, ..Tolerance::default() })?;
    Ok(IdentityCheck { numeric: q.value, closed_form: beta * beta_fn(beta * alpha, nu)? })
}

struct Terms {
    n: u64,
    nu: f64,
    xm1: f64,
    gd: f64,
    ge: f64,
}

impl Terms {
    fn new(rates: SecrecyRates, g_d: LinkBudget, g_e: LinkBudget, params: GncParams) -> Self {
        Self {
            n: u64::from(params.diversity()),
            nu: f64::from(params.eve_order()),
            xm1: snr_threshold(rates.secrecy_rate() / gnc_rate(params)),
            gd: g_d.avg_snr(),
            ge: g_e.avg_snr(),
        }
    }

    fn beta_argument(&self, i: u64) -> f64 {
        ((1.0 + self.xm1) * self.ge * i as f64 + self.gd) / self.gd
    }
}

/// Largest relative deviation of the Beta factors B(1 + ξγ̄E·i/γ̄D, Mk2+1),
/// i = 0..=M+k2, from their large-γ̄D limit 1/(Mk2+1).
pub fn beta_limit_error(rates: SecrecyRates, g_d: LinkBudget, g_e: LinkBudget, params: GncParams) -> Result<f64> {
    let t = Terms::new(rates, g_d, g_e, params);
    let limit = 1.0 / t.nu;
    let mut worst: f64 = 0.0;
    for i in 0..=t.n {
        let b = beta_fn(t.beta_argument(i), t.nu)?;
        worst = worst.max((b / limit - 1.0).abs());
    }
    Ok(worst)
}

/// The closed-form sum with every Beta factor replaced by 1/(Mk2+1), against
/// [1 − e^(−(ξ−1)/γ̄D)]^(M+k2).
pub fn beta_limit_collapse(
    rates: SecrecyRates,
    g_d: LinkBudget,
    g_e: LinkBudget,
    params: GncParams,
) -> IdentityCheck {
    let t = Terms::new(rates, g_d, g_e, params);
    let mut sum = CompensatedSum::new();
    for i in 0..=t.n {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        sum.add(sign * binomial_f64(t.n, i) * (-t.xm1 * i as f64 / t.gd).exp());
    }
    let closed_form = (-(-t.xm1 / t.gd).exp_m1()).powi(t.n as i32);
    IdentityCheck { numeric: sum.value(), closed_form }
}
