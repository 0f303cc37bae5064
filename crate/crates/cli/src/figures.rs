//! Sweep presets for the published figure layouts.

use crate::spec::{
    Grid, Method, ParamsSpec, RatesSpec, Regime, SchemeName, SimSpec, SnrSpec, SpecError, SweepSpec,
};

pub const FIGURES: [&str; 8] = ["fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"];

/// Default Monte Carlo budget per grid point.
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

const GNC_222: ParamsSpec = ParamsSpec { sources: 2, broadcast_frames: 2, parity_frames: 2 };

fn db(x: f64) -> SnrSpec {
    SnrSpec { db: Some(x), sweep: None }
}

fn sweep(start: f64, stop: f64, step: f64) -> SnrSpec {
    SnrSpec { db: None, sweep: Some(Grid { start, stop, step }) }
}

fn csi_rate(rs: f64) -> RatesSpec {
    RatesSpec { secrecy_rate: Some(rs), ..RatesSpec::default() }
}

fn nocsi_rates(r: f64, re: f64) -> RatesSpec {
    RatesSpec { total_rate: Some(r), equivocation_rate: Some(re), ..RatesSpec::default() }
}

struct Layout {
    regime: Regime,
    rates: RatesSpec,
    g_d: SnrSpec,
    g_e: SnrSpec,
    sim: SimSpec,
}

impl Layout {
    fn spec(&self, scheme: SchemeName, params: Option<ParamsSpec>, methods: &[Method], variant: &str) -> SweepSpec {
        SweepSpec {
            scheme,
            regime: self.regime,
            variant: variant.to_string(),
            methods: methods.to_vec(),
            output: None,
            params,
            rates: self.rates,
            g_d: self.g_d,
            g_e: self.g_e,
            sim: Some(self.sim),
        }
    }

    fn three_schemes(&self, gnc_methods: &[Method]) -> Vec<SweepSpec> {
        let direct = [Method::ClosedForm, Method::Simulated];
        vec![
            self.spec(SchemeName::Dt, None, &direct, ""),
            self.spec(SchemeName::Df, None, &direct, ""),
            self.spec(SchemeName::Gnc, Some(GNC_222), gnc_methods, ""),
        ]
    }
}

/// The sweeps that make up figure `id`, all sharing one axis.
pub fn figure_specs(id: &str, samples: u64, seed: u64) -> Result<Vec<SweepSpec>, SpecError> {
    use Method::*;
    let sim = SimSpec { samples, seed, ..SimSpec::default() };
    let csi = |g_d, g_e, rates| Layout { regime: Regime::Csi, rates, g_d, g_e, sim };
    let nocsi = |g_d, g_e, rates| Layout { regime: Regime::Nocsi, rates, g_d, g_e, sim };
    let specs = match id {
        "fig3" => csi(sweep(0.0, 60.0, 2.0), db(10.0), csi_rate(0.5)).three_schemes(&[Theorem1, Asymptotic, Simulated]),
        "fig4" => [5.0, 10.0, 15.0]
            .iter()
            .map(|&ge| {
                csi(sweep(0.0, 60.0, 2.0), db(ge), csi_rate(0.5)).spec(
                    SchemeName::Gnc,
                    Some(GNC_222),
                    &[Theorem1, Asymptotic, Simulated],
                    &format!("gE={ge}dB"),
                )
            })
            .collect(),
        "fig5" => {
            let rates = RatesSpec { sweep: Some(Grid { start: 0.0, stop: 5.0, step: 0.25 }), ..RatesSpec::default() };
            csi(db(40.0), db(10.0), rates).three_schemes(&[Theorem1, Simulated])
        }
        "fig6" => [2, 4, 8, 16]
            .iter()
            .map(|&m| {
                let p = ParamsSpec { sources: m, ..GNC_222 };
                csi(sweep(0.0, 40.0, 2.0), db(10.0), csi_rate(0.5)).spec(
                    SchemeName::Gnc,
                    Some(p),
                    &[Theorem1, Simulated],
                    &format!("M={m}"),
                )
            })
            .collect(),
        "fig7" => nocsi(sweep(0.0, 60.0, 2.0), db(2.0), nocsi_rates(3.0, 2.0))
            .three_schemes(&[Exact2Src, Approx, Floor, MaxApprox, Simulated]),
        "fig8" => nocsi(db(30.0), sweep(-10.0, 20.0, 1.0), nocsi_rates(3.0, 2.0))
            .three_schemes(&[Exact2Src, MaxApprox, Simulated]),
        "fig9" => {
            let rates = RatesSpec {
                equivocation_rate: Some(2.0),
                sweep: Some(Grid { start: 0.0, stop: 4.0, step: 0.25 }),
                ..RatesSpec::default()
            };
            nocsi(db(40.0), db(2.0), rates).three_schemes(&[Exact2Src, MaxApprox, Simulated])
        }
        "fig10" => [2, 4, 8, 16]
            .iter()
            .map(|&m| {
                let p = ParamsSpec { sources: m, ..GNC_222 };
                let layout = nocsi(sweep(0.0, 60.0, 2.0), db(2.0), nocsi_rates(3.0, 2.0));
                // the event model of a faded intersource mesh is defined for
                // two sources only
                let methods: &[Method] =
                    if m == 2 { &[Exact2Src, Approx, Floor, MaxApprox, Simulated] } else { &[Approx, Floor, MaxApprox] };
                layout.spec(SchemeName::Gnc, Some(p), methods, &format!("M={m}"))
            })
            .collect(),
        other => {
            return Err(SpecError::new(
                "figure",
                format!("unknown figure {other:?}; expected one of {}", FIGURES.join(", ")),
            ))
        }
    };
    Ok(specs)
}
