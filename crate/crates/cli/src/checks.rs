//! Verification suites: closed-form identities, the enumeration oracle, and
//! Monte Carlo agreement.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use ncsec_core::channel::link_outage;
use ncsec_core::identities::{beta_limit_collapse, beta_limit_error, exp_power_integral};
use ncsec_core::montecarlo::{simulate_sop_csi, simulate_sop_nocsi};
use ncsec_core::oracle::{enumerate_gnc_outage, Intersource};
use ncsec_core::reliability::{
    diversity_estimate, gnc_frame_outage, gnc_outage_exact_2src, gnc_outage_exact_2src_in,
    gnc_outage_free_intersource, gnc_outage_free_intersource_in, nc_outage,
};
use ncsec_core::secrecy::{
    prob_positive_secrecy_dt, sop_df_csi, sop_df_nocsi, sop_dt_csi, sop_dt_nocsi, sop_gnc_csi,
    sop_gnc_csi_theorem1, sop_gnc_csi_theorem1_rational, sop_gnc_nocsi,
};
use ncsec_core::{
    Coupling, Estimate, GncCsiMethod, GncNoCsiMethod, GncParams, LinkBudget, Result as CoreResult, SamplingMode,
    Scheme, SecrecyRates, SimConfig, SopBreakdown,
};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spec::{Method, Regime, SchemeName};
use crate::sweep::{write_rows, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ClosedForms,
    Oracle,
    Statistical,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "closed_forms" => Ok(Suite::ClosedForms),
            "oracle" => Ok(Suite::Oracle),
            "statistical" => Ok(Suite::Statistical),
            other => Err(format!("unknown suite {other:?}; expected closed_forms, oracle or statistical")),
        }
    }
}

/// Outcome of one criterion, with what was measured.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} [{:.2}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Times `f` and fails the check if it overruns `limit` or errors.
fn timed(name: &str, limit: Duration, f: impl FnOnce() -> CoreResult<(bool, String)>) -> CheckLine {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if elapsed > limit {
        passed = false;
        write!(detail, "; runtime over the {}s limit", limit.as_secs()).unwrap();
    }
    CheckLine { name: name.to_string(), passed, detail, elapsed }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn lin(x: f64) -> CoreResult<LinkBudget> {
    LinkBudget::new(x)
}

fn db(x: f64) -> CoreResult<LinkBudget> {
    LinkBudget::from_db(x)
}

fn gnc(m: u32, k1: u32, k2: u32) -> CoreResult<GncParams> {
    GncParams::new(m, k1, k2)
}

/// Enumeration equals the two-source closed forms, exactly and in floats.
pub fn oracle_equivalence() -> CheckLine {
    timed("oracle equivalence", Duration::from_secs(30), || {
        let mut worst: f64 = 0.0;
        let mut mismatches = 0;
        let mut cases = 0;
        for k1 in 1..=3 {
            for k2 in 1..=3 {
                let params = gnc(2, k1, k2)?;
                for (n, d) in [(1, 10), (1, 4), (1, 2)] {
                    let p = BigRational::new(n.into(), d.into());
                    let pf = f64::from(n) / f64::from(d);
                    for mode in [Intersource::Faded, Intersource::Perfect] {
                        let enumerated = enumerate_gnc_outage(params, &p, mode)?;
                        let (exact, float) = match mode {
                            Intersource::Faded => {
                                (gnc_outage_exact_2src_in(&p, params), gnc_outage_exact_2src(pf, params)?)
                            }
                            Intersource::Perfect => (
                                gnc_outage_free_intersource_in(&p, params),
                                gnc_outage_free_intersource(pf, params)?,
                            ),
                        };
                        cases += 1;
                        if enumerated != exact {
                            mismatches += 1;
                        }
                        worst = worst.max(rel(enumerated.to_f64().unwrap_or(f64::NAN), float));
                    }
                }
            }
        }
        Ok((
            mismatches == 0 && worst <= 1e-12,
            format!("{cases} cases, {mismatches} rational mismatches, worst float rel. err {worst:.2e}"),
        ))
    })
}

/// The 5×5 log grid over [10, 10⁴] used for the closed-form comparison.
pub fn theorem1_grid() -> [f64; 5] {
    [10.0, 10f64.powf(1.75), 10f64.powf(2.5), 10f64.powf(3.25), 1e4]
}

/// Closed-form partial-CSI GNC SOP against adaptive quadrature.
pub fn theorem1_vs_quadrature() -> CheckLine {
    timed("theorem1 vs quadrature", Duration::from_secs(10), || {
        let rates = SecrecyRates::partial_csi(0.5)?;
        let (mut worst_float, mut worst_exact) = (0.0f64, 0.0f64);
        let mut fallbacks = 0;
        for params in [gnc(2, 1, 1)?, gnc(2, 2, 2)?, gnc(3, 2, 1)?] {
            for gd in theorem1_grid() {
                for ge in theorem1_grid() {
                    let (gd, ge) = (lin(gd)?, lin(ge)?);
                    let quad = sop_gnc_csi(rates, gd, ge, params, GncCsiMethod::Quadrature)?;
                    let t1 = sop_gnc_csi_theorem1(rates, gd, ge, params)?;
                    fallbacks += usize::from(t1.used_quadrature);
                    worst_float = worst_float.max(rel(t1.value, quad));
                    let exact = sop_gnc_csi_theorem1_rational(rates, gd, ge, params)?;
                    worst_exact = worst_exact.max(rel(exact, quad));
                }
            }
        }
        Ok((
            worst_float < 1e-6 && worst_exact < 1e-6,
            format!(
                "75 points: worst rel. err {worst_exact:.2e} (exact-arithmetic sum), {worst_float:.2e} \
                 (floating sum; {fallbacks} ill-conditioned points routed to quadrature)"
            ),
        ))
    })
}

/// Slope of the partial-CSI GNC curve over γ̄D ∈ [50, 60] dB.
pub fn diversity_slope() -> CheckLine {
    timed("diversity slope", Duration::from_secs(5), || {
        let rates = SecrecyRates::partial_csi(0.5)?;
        let params = gnc(2, 2, 2)?;
        let ge = db(10.0)?;
        let pts = (50..=60)
            .map(|x| {
                let g = f64::from(x);
                Ok((10f64.powf(g / 10.0), sop_gnc_csi(rates, db(g)?, ge, params, GncCsiMethod::Theorem1)?))
            })
            .collect::<CoreResult<Vec<_>>>()?;
        let slope = diversity_estimate(&pts)?;
        Ok(((slope - 4.0).abs() <= 0.1, format!("slope {slope:.4} (expected 4.0 ± 0.1)")))
    })
}

/// nc_outage / link_outage(2R)³ near 3.5 at high SNR.
pub fn nc_coefficient() -> CheckLine {
    timed("NC coefficient", Duration::from_secs(1), || {
        let mut ratios = Vec::new();
        for rate in [0.5, 1.0, 2.0] {
            for x in [50.0, 55.0, 60.0] {
                let g = db(x)?;
                ratios.push(nc_outage(rate, g)? / link_outage(2.0 * rate, g)?.powi(3));
            }
        }
        let worst = ratios.iter().map(|r| rel(*r, 3.5)).fold(0.0, f64::max);
        Ok((worst <= 0.05, format!("9 points, worst deviation from 3.5: {:.3}%", 100.0 * worst)))
    })
}

/// Recomposition and symmetry identities of the direct closed forms.
pub fn closed_form_identities() -> CheckLine {
    timed("closed-form identities", Duration::from_secs(1), || {
        let mut worst_dt: f64 = 0.0;
        let mut worst_df: f64 = 0.0;
        let mut worst_union: f64 = 0.0;
        let zero = SecrecyRates::partial_csi(0.0)?;
        let check = |b: SopBreakdown| (b.total - (b.reliability + b.secrecy - b.reliability * b.secrecy)).abs();
        for gd in [0.5, 3.0, 10.0, 100.0, 1e4] {
            for ge in [0.1, 1.0, 10.0, 1e3] {
                let (bd, be) = (lin(gd)?, lin(ge)?);
                worst_dt = worst_dt.max((sop_dt_csi(zero, bd, be) - (1.0 - prob_positive_secrecy_dt(bd, be))).abs());
                for (r, re) in [(3.0, 2.0), (1.0, 0.5), (2.0, 0.0)] {
                    let rates = SecrecyRates::no_csi(r, re)?;
                    worst_union = worst_union.max(check(sop_dt_nocsi(rates, bd, be)));
                    worst_union = worst_union.max(check(sop_df_nocsi(rates, bd, be)));
                    for m in [GncNoCsiMethod::ExactTwoSource, GncNoCsiMethod::Approx, GncNoCsiMethod::Floor] {
                        worst_union = worst_union.max(check(sop_gnc_nocsi(rates, bd, be, gnc(2, 2, 2)?, m)?));
                    }
                }
            }
            worst_df = worst_df.max((sop_df_csi(zero, lin(gd)?, lin(gd)?) - 0.5).abs());
        }
        Ok((
            worst_dt <= 1e-15 && worst_df <= 1e-15 && worst_union <= 1e-15,
            format!(
                "DT Rs=0 vs 1 − P(C_s>0): {worst_dt:.1e}; DF symmetric Rs=0 vs 0.5: {worst_df:.1e}; \
                 union recomposition: {worst_union:.1e}"
            ),
        ))
    })
}

/// Integral identity behind the Beta form, and the Beta factors' large-γ̄D limit.
pub fn integral_identities() -> CheckLine {
    timed("integral and Beta-limit identities", Duration::from_secs(5), || {
        let mut rng = ChaCha8Rng::seed_from_u64(3312);
        let mut worst_integral: f64 = 0.0;
        for _ in 0..20 {
            let alpha = 10f64.powf(rng.random_range(-1.0..1.0));
            let beta = 10f64.powf(rng.random_range(-1.0..1.0));
            let nu = rng.random_range(1.0..34.0);
            worst_integral = worst_integral.max(exp_power_integral(alpha, beta, nu)?.relative_error());
        }
        let rates = SecrecyRates::partial_csi(0.5)?;
        let mut worst_limit: f64 = 0.0;
        let mut worst_collapse: f64 = 0.0;
        for params in [gnc(2, 1, 1)?, gnc(2, 2, 2)?, gnc(3, 2, 1)?] {
            worst_limit = worst_limit.max(beta_limit_error(rates, lin(1e8)?, db(10.0)?, params)?);
            worst_collapse = worst_collapse.max(beta_limit_collapse(rates, lin(10.0)?, db(10.0)?, params).relative_error());
        }
        Ok((
            worst_integral < 1e-8 && worst_limit < 1e-4 && worst_collapse < 1e-9,
            format!(
                "20 random triples: worst rel. err {worst_integral:.2e}; Beta factors at γ̄D=1e8 vs 1/ν: \
                 {worst_limit:.2e}; limiting sum vs closed power: {worst_collapse:.1e}"
            ),
        ))
    })
}

/// Event-level no-CSI GNC at γ̄D = 60 dB against the secrecy floor.
pub fn secrecy_floor(workers: usize) -> CheckLine {
    timed("secrecy floor by simulation", Duration::from_secs(120), || {
        let (e, floor) = floor_estimate(workers)?;
        let z = e.z_score(floor);
        Ok((
            z <= 3.0,
            format!(
                "p̂ = {:.6e} ± {:.2e} over {} trials vs floor {floor:.6e}; |z| = {z:.2}",
                e.p_hat, e.std_err, e.n
            ),
        ))
    })
}

fn floor_estimate(workers: usize) -> CoreResult<(Estimate, f64)> {
    let params = gnc(2, 2, 2)?;
    let rates = SecrecyRates::no_csi(3.0, 2.0)?;
    let (gd, ge) = (db(60.0)?, db(2.0)?);
    let cfg = SimConfig {
        samples: 10_000_000,
        seed: 2,
        mode: SamplingMode::EventLevel,
        coupling: Coupling::EvePerfectIntersource,
        workers,
        ..SimConfig::default()
    };
    let est = simulate_sop_nocsi(Scheme::Gnc(params), rates, gd, ge, &cfg)?;
    let p_e = gnc_frame_outage(rates.equivocation_rate(), ge, params)?;
    let floor = 1.0 - gnc_outage_free_intersource(p_e, params)?;
    Ok((est.total, floor))
}

/// CSV of the floor simulation, for reproducibility checks.
pub fn secrecy_floor_csv(workers: usize) -> CoreResult<String> {
    let (e, floor) = floor_estimate(workers)?;
    let mut s = String::new();
    let point = StatPoint { scheme: SchemeName::Gnc, regime: Regime::Nocsi, label: "floor".into() };
    write_rows(&mut s, &point.rows(0, floor, &e));
    Ok(s)
}

struct StatPoint {
    scheme: SchemeName,
    regime: Regime,
    label: String,
}

impl StatPoint {
    fn rows(&self, index: usize, analytic: f64, e: &Estimate) -> Vec<Row> {
        let base = Row {
            axis_value: index as f64,
            scheme: self.scheme,
            regime: self.regime,
            method: Method::ClosedForm,
            variant: self.label.clone(),
            value: Some(analytic),
            std_err: None,
            n: None,
            seed: None,
            status: "ok".into(),
        };
        let sim = Row {
            method: Method::Simulated,
            value: Some(e.p_hat),
            std_err: Some(e.std_err),
            n: Some(e.n),
            seed: Some(e.seed),
            status: if e.low_confidence() { "low_confidence".into() } else { "ok".into() },
            ..base.clone()
        };
        vec![base, sim]
    }
}

/// One point of the standing regression grid.
#[derive(Debug, Clone, Copy)]
pub struct RegressionPoint {
    pub scheme: SchemeName,
    pub regime: Regime,
    /// Rs with CSI; (R, RE) without.
    pub rates: (f64, f64),
    pub g_d: f64,
    pub g_e: f64,
}

/// The 12-point grid per (scheme, regime): 3 rate settings × 4 SNR pairs.
pub fn regression_grid() -> Vec<RegressionPoint> {
    let csi_rates = [(0.25, 0.0), (0.5, 0.0), (1.0, 0.0)];
    let nocsi_rates = [(3.0, 2.0), (2.0, 1.0), (1.0, 0.5)];
    let csi_snr = [(10.0, 1.0), (30.0, 3.0), (100.0, 10.0), (300.0, 30.0)];
    let nocsi_snr = [(1000.0, 1.5849), (100.0, 1.0), (30.0, 0.5), (300.0, 2.0)];
    let mut out = Vec::new();
    for scheme in [SchemeName::Dt, SchemeName::Df, SchemeName::Gnc] {
        for (regime, rates, snrs) in [(Regime::Csi, csi_rates, csi_snr), (Regime::Nocsi, nocsi_rates, nocsi_snr)] {
            for r in rates {
                for (g_d, g_e) in snrs {
                    out.push(RegressionPoint { scheme, regime, rates: r, g_d, g_e });
                }
            }
        }
    }
    out
}

impl RegressionPoint {
    fn label(&self) -> String {
        match self.regime {
            Regime::Csi => format!("Rs={};gD={};gE={}", self.rates.0, self.g_d, self.g_e),
            Regime::Nocsi => format!("R={};RE={};gD={};gE={}", self.rates.0, self.rates.1, self.g_d, self.g_e),
        }
    }

    fn evaluate(&self, samples: u64, seed: u64, workers: usize) -> CoreResult<(f64, Estimate)> {
        let (gd, ge) = (lin(self.g_d)?, lin(self.g_e)?);
        let params = gnc(2, 2, 2)?;
        let scheme = match self.scheme {
            SchemeName::Dt => Scheme::Dt,
            SchemeName::Df => Scheme::Df,
            SchemeName::Gnc => Scheme::Gnc(params),
            SchemeName::Nc => Scheme::Nc,
        };
        let mode = match (self.scheme, self.regime) {
            (SchemeName::Gnc, Regime::Csi) => SamplingMode::InverseTransform,
            _ => SamplingMode::EventLevel,
        };
        let cfg = SimConfig { samples, seed, mode, workers, ..SimConfig::default() };
        match self.regime {
            Regime::Csi => {
                let rates = SecrecyRates::partial_csi(self.rates.0)?;
                let analytic = match self.scheme {
                    SchemeName::Dt => sop_dt_csi(rates, gd, ge),
                    SchemeName::Df => sop_df_csi(rates, gd, ge),
                    _ => sop_gnc_csi(rates, gd, ge, params, GncCsiMethod::Theorem1)?,
                };
                Ok((analytic, simulate_sop_csi(scheme, rates, gd, ge, &cfg)?))
            }
            Regime::Nocsi => {
                let rates = SecrecyRates::no_csi(self.rates.0, self.rates.1)?;
                let analytic = match self.scheme {
                    SchemeName::Dt => sop_dt_nocsi(rates, gd, ge),
                    SchemeName::Df => sop_df_nocsi(rates, gd, ge),
                    _ => sop_gnc_nocsi(rates, gd, ge, params, GncNoCsiMethod::ExactTwoSource)?,
                };
                Ok((analytic.total, simulate_sop_nocsi(scheme, rates, gd, ge, &cfg)?.total))
            }
        }
    }
}

/// Seed of the regression suite, fixed before any run.
pub const REGRESSION_SEED: u64 = 20_240_601;

/// Monte Carlo against closed forms on the regression grid.
pub struct RegressionReport {
    pub within_3: usize,
    pub within_2: usize,
    pub points: usize,
    pub worst: (f64, String),
    pub csv: String,
}

pub fn run_regression(samples: u64, workers: usize) -> CoreResult<RegressionReport> {
    let grid = regression_grid();
    let mut rows = Vec::new();
    let (mut within_3, mut within_2) = (0, 0);
    let mut worst = (0.0, String::new());
    for (i, pt) in grid.iter().enumerate() {
        let seed = REGRESSION_SEED.wrapping_add(i as u64);
        let (analytic, est) = pt.evaluate(samples, seed, workers)?;
        let z = est.z_score(analytic);
        within_3 += usize::from(z <= 3.0);
        within_2 += usize::from(z <= 2.0);
        let sp = StatPoint { scheme: pt.scheme, regime: pt.regime, label: pt.label() };
        if z > worst.0 {
            worst = (z, format!("{} {} {}", pt.scheme, pt.regime, sp.label));
        }
        rows.extend(sp.rows(i, analytic, &est));
    }
    let mut csv = String::new();
    write_rows(&mut csv, &rows);
    Ok(RegressionReport { within_3, within_2, points: grid.len(), worst, csv })
}

pub fn statistical_regression(workers: usize) -> (CheckLine, Option<String>) {
    let mut csv = None;
    let line = timed("Monte Carlo regression", Duration::from_secs(15 * 60), || {
        let r = run_regression(10_000_000, workers)?;
        let frac2 = r.within_2 as f64 / r.points as f64;
        let detail = format!(
            "{}/{} points within 3σ, {}/{} ({:.1}%) within 2σ; largest |z| = {:.2} at {}",
            r.within_3,
            r.points,
            r.within_2,
            r.points,
            100.0 * frac2,
            r.worst.0,
            r.worst.1
        );
        csv = Some(r.csv);
        Ok((r.within_3 == r.points && frac2 >= 0.95, detail))
    });
    (line, csv)
}

fn curve<'a>(rows: &'a [Row], scheme: SchemeName, method: Method) -> impl Iterator<Item = (f64, f64)> + 'a {
    rows.iter()
        .filter(move |r| r.scheme == scheme && r.method == method && r.status == "ok")
        .filter_map(|r| r.value.map(|v| (r.axis_value, v)))
}

fn value_at(rows: &[Row], scheme: SchemeName, method: Method, x: f64) -> Option<f64> {
    curve(rows, scheme, method).find(|p| p.0 == x).map(|p| p.1)
}

/// Wherever the partial-CSI GNC curve is at or below 1e-2 it lies under DF and DT.
pub fn fig3_shape(rows: &[Row]) -> (bool, String) {
    let mut checked = 0;
    let mut violations = Vec::new();
    for (x, gnc) in curve(rows, SchemeName::Gnc, Method::Theorem1) {
        if gnc > 1e-2 {
            continue;
        }
        checked += 1;
        let dt = value_at(rows, SchemeName::Dt, Method::ClosedForm, x);
        let df = value_at(rows, SchemeName::Df, Method::ClosedForm, x);
        match (dt, df) {
            (Some(dt), Some(df)) if gnc < dt && gnc < df => {}
            _ => violations.push(x),
        }
    }
    let slope = crate::sweep::top_decade_slope(&curve(rows, SchemeName::Gnc, Method::Theorem1).collect::<Vec<_>>());
    let slope_ok = slope.is_some_and(|s| (s - 4.0).abs() <= 0.1);
    (
        checked > 0 && violations.is_empty() && slope_ok,
        format!(
            "GNC below DT and DF at {}/{checked} points with SOP ≤ 1e-2{}; top-decade slope {}",
            checked - violations.len(),
            if violations.is_empty() { String::new() } else { format!(" (violations at {violations:?} dB)") },
            slope.map_or("n/a".into(), |s| format!("{s:.3}"))
        ),
    )
}

/// Each no-CSI curve flattens to a positive floor; floors ordered GNC < DF < DT.
pub fn fig7_shape(rows: &[Row]) -> (bool, String) {
    let floor = |scheme, method| -> Option<(f64, f64)> {
        let pts: Vec<(f64, f64)> = curve(rows, scheme, method).collect();
        let &(top, last) = pts.last()?;
        let before = pts.iter().find(|p| p.0 == top - 10.0)?.1;
        Some((last, (before / last - 1.0).abs()))
    };
    let dt = floor(SchemeName::Dt, Method::ClosedForm);
    let df = floor(SchemeName::Df, Method::ClosedForm);
    let gnc = floor(SchemeName::Gnc, Method::Exact2Src);
    let sim = floor(SchemeName::Gnc, Method::Simulated);
    match (dt, df, gnc) {
        (Some(dt), Some(df), Some(gnc)) => {
            let flat = [dt, df, gnc].iter().all(|(v, change)| *v > 0.0 && *change < 0.01);
            let ordered = gnc.0 < df.0 && df.0 < dt.0;
            (
                flat && ordered,
                format!(
                    "floors GNC {:.3e} < DF {:.3e} < DT {:.3e}: {ordered}; last-decade change {:.1e}/{:.1e}/{:.1e}; \
                     simulated GNC floor {}",
                    gnc.0,
                    df.0,
                    dt.0,
                    gnc.1,
                    df.1,
                    dt.1,
                    sim.map_or("n/a".into(), |s| format!("{:.3e}", s.0))
                ),
            )
        }
        _ => (false, "missing curves".into()),
    }
}

/// Runs a figure preset and returns its CSV with the timing-checked shape verdict.
pub fn figure_reproduction(id: &str, samples: u64, seed: u64, workers: usize) -> (CheckLine, String) {
    let mut csv = String::new();
    let line = timed(&format!("{id} reproduction"), Duration::from_secs(600), || {
        let specs = crate::figures::figure_specs(id, samples, seed)
            .map_err(|e| ncsec_core::Error::Usage(e.to_string()))?;
        let mut resolved = Vec::new();
        for s in specs {
            let mut r = s.validate().map_err(|e| ncsec_core::Error::Usage(e.to_string()))?;
            r.sim.workers = workers;
            resolved.push(r);
        }
        let result = crate::sweep::run_sweeps(&resolved);
        csv = crate::sweep::to_csv(&result);
        Ok(match id {
            "fig3" => fig3_shape(&result.rows),
            "fig7" => fig7_shape(&result.rows),
            _ => (true, format!("{} rows", result.rows.len())),
        })
    });
    (line, csv)
}

pub fn run_suite(suite: Suite, workers: usize) -> Vec<CheckLine> {
    match suite {
        Suite::Oracle => vec![oracle_equivalence()],
        Suite::ClosedForms => vec![
            theorem1_vs_quadrature(),
            diversity_slope(),
            nc_coefficient(),
            closed_form_identities(),
            integral_identities(),
        ],
        Suite::Statistical => vec![secrecy_floor(workers), statistical_regression(workers).0],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("oracle".parse::<Suite>(), Ok(Suite::Oracle));
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn regression_grid_shape() {
        let g = regression_grid();
        assert_eq!(g.len(), 72);
        for scheme in [SchemeName::Dt, SchemeName::Df, SchemeName::Gnc] {
            for regime in [Regime::Csi, Regime::Nocsi] {
                assert_eq!(g.iter().filter(|p| p.scheme == scheme && p.regime == regime).count(), 12);
            }
        }
    }

    #[test]
    fn small_regression_runs() {
        let r = run_regression(2_000, 1).unwrap();
        assert_eq!(r.points, 72);
        assert_eq!(r.csv.lines().count(), 1 + 2 * 72);
    }

    #[test]
    fn check_line_format() {
        let l = CheckLine { name: "x".into(), passed: true, detail: "d".into(), elapsed: Duration::from_millis(1500) };
        assert_eq!(l.to_string(), "PASS x: d [1.50s]");
    }
}
