//! Declarative sweep files.

use std::fmt;
use std::path::PathBuf;

use ncsec_core::{Coupling, GncParams, LegitIntersource, SamplingMode, Scheme, SecrecyRates, SimConfig};
use serde::{Deserialize, Serialize};

/// Environment variable overriding the default Monte Carlo worker count.
pub const WORKERS_ENV: &str = "NCSEC_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeName {
    #[serde(rename = "DT")]
    Dt,
    #[serde(rename = "DF")]
    Df,
    #[serde(rename = "NC")]
    Nc,
    #[serde(rename = "GNC")]
    Gnc,
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeName::Dt => "DT",
            SchemeName::Df => "DF",
            SchemeName::Nc => "NC",
            SchemeName::Gnc => "GNC",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Csi,
    Nocsi,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Csi => "csi",
            Regime::Nocsi => "nocsi",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Theorem1,
    Quadrature,
    Asymptotic,
    #[serde(rename = "exact_2src")]
    Exact2Src,
    Approx,
    Floor,
    MaxApprox,
    Simulated,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Theorem1 => "theorem1",
            Method::Quadrature => "quadrature",
            Method::Asymptotic => "asymptotic",
            Method::Exact2Src => "exact_2src",
            Method::Approx => "approx",
            Method::Floor => "floor",
            Method::MaxApprox => "max_approx",
            Method::Simulated => "simulated",
        }
    }

    /// Methods a (scheme, regime) pair can be evaluated with.
    pub fn supported(scheme: SchemeName, regime: Regime) -> &'static [Method] {
        use Method::*;
        match (scheme, regime) {
            (SchemeName::Dt | SchemeName::Df, _) => &[ClosedForm, Simulated],
            (SchemeName::Nc, Regime::Csi) => &[],
            (SchemeName::Nc, Regime::Nocsi) => &[ClosedForm, Simulated],
            (SchemeName::Gnc, Regime::Csi) => &[Theorem1, Quadrature, Asymptotic, Simulated],
            (SchemeName::Gnc, Regime::Nocsi) => &[Exact2Src, Approx, Floor, MaxApprox, Simulated],
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    /// Points start, start+step, … up to stop (inclusive within rounding).
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }

    fn validate(&self, field: &str) -> Result<(), SpecError> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return Err(SpecError::new(field, "grid bounds must be finite"));
        }
        if self.step <= 0.0 || self.stop <= self.start {
            return Err(SpecError::new(field, "grid must be strictly increasing (stop > start, step > 0)"));
        }
        if self.points().len() > 100_000 {
            return Err(SpecError::new(field, "grid has more than 100000 points"));
        }
        Ok(())
    }
}

/// An average SNR, either fixed or swept, in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SnrSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Grid>,
}

/// Rates in bpcu. `csi` uses `secrecy_rate`; `nocsi` uses `total_rate` and
/// `equivocation_rate`. A `sweep` runs over the secrecy rate; without CSI
/// the equivocation rate stays fixed and the total rate follows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RatesSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secrecy_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivocation_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Grid>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub sources: u32,
    pub broadcast_frames: u32,
    pub parity_frames: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    /// inverse_transform for GNC with CSI, event_level otherwise
    #[default]
    Auto,
    EventLevel,
    InverseTransform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CouplingSpec {
    SharedIntersource,
    #[default]
    EvePerfectIntersource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum IntersourceSpec {
    #[default]
    Faded,
    Perfect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSpec {
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mode: ModeSpec,
    #[serde(default)]
    pub coupling: CouplingSpec,
    #[serde(default)]
    pub intersource: IntersourceSpec,
    /// Falls back to the environment override, then to the core count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

fn default_samples() -> u64 {
    1_000_000
}

impl Default for SimSpec {
    fn default() -> Self {
        Self {
            samples: default_samples(),
            seed: 0,
            mode: ModeSpec::Auto,
            coupling: CouplingSpec::default(),
            intersource: IntersourceSpec::default(),
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub scheme: SchemeName,
    pub regime: Regime,
    /// Free-form curve label, copied to the `variant` column.
    #[serde(default)]
    pub variant: String,
    pub methods: Vec<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsSpec>,
    pub rates: RatesSpec,
    pub g_d: SnrSpec,
    pub g_e: SnrSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sim: Option<SimSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub field: String,
    pub message: String,
}

impl SpecError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error kind=invalid_spec field={} message={:?}", self.field, self.message)
    }
}

impl std::error::Error for SpecError {}

/// Which quantity the sweep runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    DestinationSnr,
    EavesdropperSnr,
    SecrecyRate,
}

/// One evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub axis_value: f64,
    pub g_d_db: f64,
    pub g_e_db: f64,
    pub rates: SecrecyRates,
}

/// A validated spec with the core types resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedSpec {
    pub source: SweepSpec,
    pub scheme: Scheme,
    pub axis: AxisKind,
    pub cells: Vec<Cell>,
    pub sim: SimConfig,
}

pub fn parse(text: &str) -> Result<SweepSpec, SpecError> {
    toml::from_str(text).map_err(|e| SpecError::new("document", e.message().to_string()))
}

/// Worker count from the environment override, else the core count.
pub fn default_workers() -> Result<usize, SpecError> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(SpecError::new(WORKERS_ENV, format!("expected a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(SimConfig::default().workers),
    }
}

fn fixed_or_sweep(field: &str, s: &SnrSpec) -> Result<(), SpecError> {
    match (s.db, s.sweep) {
        (Some(_), Some(_)) => Err(SpecError::new(field, "give either db or sweep, not both")),
        (None, None) => Err(SpecError::new(field, "missing db or sweep")),
        (Some(db), None) if !db.is_finite() => Err(SpecError::new(field, "db must be finite")),
        (None, Some(g)) => g.validate(&format!("{field}.sweep")),
        _ => Ok(()),
    }
}

fn rate_value(field: &str, v: Option<f64>) -> Result<f64, SpecError> {
    match v {
        Some(r) if r.is_finite() && r >= 0.0 => Ok(r),
        Some(_) => Err(SpecError::new(field, "rates must be finite and nonnegative")),
        None => Err(SpecError::new(field, "missing")),
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<ResolvedSpec, SpecError> {
        if self.methods.is_empty() {
            return Err(SpecError::new("methods", "at least one method is required"));
        }
        let supported = Method::supported(self.scheme, self.regime);
        if supported.is_empty() {
            return Err(SpecError::new("regime", format!("{} has no {} evaluation", self.scheme, self.regime)));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if !supported.contains(m) {
                return Err(SpecError::new(
                    format!("methods[{i}]"),
                    format!("{m} is not available for {} {}", self.scheme, self.regime),
                ));
            }
            if self.methods[..i].contains(m) {
                return Err(SpecError::new(format!("methods[{i}]"), format!("{m} listed twice")));
            }
        }

        let scheme = match (self.scheme, self.params) {
            (SchemeName::Gnc, Some(p)) => Scheme::Gnc(
                GncParams::new(p.sources, p.broadcast_frames, p.parity_frames)
                    .map_err(|e| SpecError::new("params", e.to_string()))?,
            ),
            (SchemeName::Gnc, None) => return Err(SpecError::new("params", "GNC requires params")),
            (_, Some(_)) => return Err(SpecError::new("params", format!("{} takes no params", self.scheme))),
            (SchemeName::Dt, None) => Scheme::Dt,
            (SchemeName::Df, None) => Scheme::Df,
            (SchemeName::Nc, None) => Scheme::Nc,
        };
        if let Scheme::Gnc(p) = scheme {
            if p.sources() != 2 && self.methods.contains(&Method::Exact2Src) {
                return Err(SpecError::new("methods", "exact_2src requires two sources"));
            }
        }

        fixed_or_sweep("g_d", &self.g_d)?;
        fixed_or_sweep("g_e", &self.g_e)?;
        if let Some(g) = self.rates.sweep {
            g.validate("rates.sweep")?;
            if g.start < 0.0 {
                return Err(SpecError::new("rates.sweep", "secrecy rates must be nonnegative"));
            }
        }
        let sweeps = [self.g_d.sweep, self.g_e.sweep, self.rates.sweep];
        let axis = match sweeps.iter().filter(|s| s.is_some()).count() {
            1 if self.g_d.sweep.is_some() => AxisKind::DestinationSnr,
            1 if self.g_e.sweep.is_some() => AxisKind::EavesdropperSnr,
            1 => AxisKind::SecrecyRate,
            n => return Err(SpecError::new("axis", format!("exactly one sweep axis is required, found {n}"))),
        };

        let make_rates = |rs_override: Option<f64>| -> Result<SecrecyRates, SpecError> {
            let bad = |e: ncsec_core::Error| SpecError::new("rates", e.to_string());
            match self.regime {
                Regime::Csi => {
                    if self.rates.total_rate.is_some() || self.rates.equivocation_rate.is_some() {
                        return Err(SpecError::new("rates", "csi takes only secrecy_rate"));
                    }
                    let rs = match rs_override {
                        Some(rs) => rs,
                        None => rate_value("rates.secrecy_rate", self.rates.secrecy_rate)?,
                    };
                    SecrecyRates::partial_csi(rs).map_err(bad)
                }
                Regime::Nocsi => {
                    if self.rates.secrecy_rate.is_some() {
                        return Err(SpecError::new("rates", "nocsi takes total_rate and equivocation_rate"));
                    }
                    let re = rate_value("rates.equivocation_rate", self.rates.equivocation_rate)?;
                    let r = match rs_override {
                        Some(rs) => {
                            if self.rates.total_rate.is_some() {
                                return Err(SpecError::new("rates.total_rate", "follows the sweep; omit it"));
                            }
                            re + rs
                        }
                        None => rate_value("rates.total_rate", self.rates.total_rate)?,
                    };
                    SecrecyRates::no_csi(r, re).map_err(bad)
                }
            }
        };

        let cells = match axis {
            AxisKind::DestinationSnr => {
                let rates = make_rates(None)?;
                let ge = self.g_e.db.expect("validated");
                self.g_d.sweep.expect("validated").points().into_iter()
                    .map(|x| Cell { axis_value: x, g_d_db: x, g_e_db: ge, rates })
                    .collect()
            }
            AxisKind::EavesdropperSnr => {
                let rates = make_rates(None)?;
                let gd = self.g_d.db.expect("validated");
                self.g_e.sweep.expect("validated").points().into_iter()
                    .map(|x| Cell { axis_value: x, g_d_db: gd, g_e_db: x, rates })
                    .collect()
            }
            AxisKind::SecrecyRate => {
                if self.regime == Regime::Csi && self.rates.secrecy_rate.is_some() {
                    return Err(SpecError::new("rates.secrecy_rate", "follows the sweep; omit it"));
                }
                let (gd, ge) = (self.g_d.db.expect("validated"), self.g_e.db.expect("validated"));
                self.rates.sweep.expect("validated").points().into_iter()
                    .map(|x| Ok(Cell { axis_value: x, g_d_db: gd, g_e_db: ge, rates: make_rates(Some(x))? }))
                    .collect::<Result<_, SpecError>>()?
            }
        };

        let s = self.sim.unwrap_or_default();
        let workers = match s.workers {
            Some(0) => return Err(SpecError::new("sim.workers", "must be positive")),
            Some(n) => n,
            None => default_workers()?,
        };
        let mode = match s.mode {
            ModeSpec::EventLevel => SamplingMode::EventLevel,
            ModeSpec::InverseTransform => SamplingMode::InverseTransform,
            ModeSpec::Auto => match (self.scheme, self.regime) {
                (SchemeName::Gnc, Regime::Csi) => SamplingMode::InverseTransform,
                _ => SamplingMode::EventLevel,
            },
        };
        let sim = SimConfig {
            samples: s.samples,
            seed: s.seed,
            mode,
            coupling: match s.coupling {
                CouplingSpec::SharedIntersource => Coupling::SharedIntersource,
                CouplingSpec::EvePerfectIntersource => Coupling::EvePerfectIntersource,
            },
            intersource: match s.intersource {
                IntersourceSpec::Faded => LegitIntersource::Faded,
                IntersourceSpec::Perfect => LegitIntersource::Perfect,
            },
            workers,
        };
        if self.methods.contains(&Method::Simulated) {
            sim.validate().map_err(|e| SpecError::new("sim", e.to_string()))?;
            match (self.scheme, self.regime, mode) {
                (SchemeName::Gnc, Regime::Csi, SamplingMode::EventLevel) => {
                    return Err(SpecError::new("sim.mode", "GNC with CSI is simulated by inverse_transform"))
                }
                (SchemeName::Gnc | SchemeName::Nc, Regime::Nocsi, SamplingMode::InverseTransform) => {
                    return Err(SpecError::new("sim.mode", "network-coded frame events need event_level"))
                }
                _ => {}
            }
            if let Scheme::Gnc(p) = scheme {
                if self.regime == Regime::Nocsi && p.sources() != 2 && sim.intersource == LegitIntersource::Faded {
                    return Err(SpecError::new("sim.intersource", "faded intersource simulation needs two sources"));
                }
            }
        }
        Ok(ResolvedSpec { source: self.clone(), scheme, axis, cells, sim })
    }
}

/// A complete spec with every default written out.
pub fn example_spec() -> SweepSpec {
    SweepSpec {
        scheme: SchemeName::Gnc,
        regime: Regime::Csi,
        variant: String::new(),
        methods: vec![Method::Theorem1, Method::Asymptotic, Method::Simulated],
        output: Some(PathBuf::from("gnc_csi.csv")),
        params: Some(ParamsSpec { sources: 2, broadcast_frames: 2, parity_frames: 2 }),
        rates: RatesSpec { secrecy_rate: Some(0.5), ..RatesSpec::default() },
        g_d: SnrSpec { db: None, sweep: Some(Grid { start: 0.0, stop: 60.0, step: 2.0 }) },
        g_e: SnrSpec { db: Some(10.0), sweep: None },
        sim: Some(SimSpec::default()),
    }
}
