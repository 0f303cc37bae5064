//! Evaluates a sweep grid and renders it as CSV.

use std::fmt::Write as _;

use ncsec_core::montecarlo::{simulate_sop_csi, simulate_sop_nocsi};
use ncsec_core::reliability::{diversity_estimate, nc_outage};
use ncsec_core::secrecy::{
    sop_df_csi, sop_df_nocsi, sop_dt_csi, sop_dt_nocsi, sop_gnc_csi, sop_gnc_nocsi, sop_nocsi_compose,
};
use ncsec_core::{
    Estimate, GncCsiMethod, GncNoCsiMethod, GncParams, LinkBudget, Result as CoreResult, Scheme, SimConfig,
};
use serde::de::value::StrDeserializer;
use serde::de::DeserializeOwned;
use sha2::{Digest, Sha256};

use crate::spec::{AxisKind, Cell, Method, Regime, ResolvedSpec, SchemeName, SweepSpec};

pub const CSV_HEADER: &str = "axis_value_dB,scheme,regime,method,variant,value,std_err,n,seed,status";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub axis_value: f64,
    pub scheme: SchemeName,
    pub regime: Regime,
    pub method: Method,
    pub variant: String,
    pub value: Option<f64>,
    pub std_err: Option<f64>,
    pub n: Option<u64>,
    pub seed: Option<u64>,
    /// `ok`, `low_confidence`, or `error:<message>`.
    pub status: String,
}

/// Rows of one or more sweeps plus the provenance for the CSV preamble.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec_hash: String,
    pub seed: u64,
    pub axis: AxisKind,
    pub rows: Vec<Row>,
}

fn analytic(spec: &ResolvedSpec, cell: &Cell, method: Method) -> CoreResult<f64> {
    let gd = LinkBudget::from_db(cell.g_d_db)?;
    let ge = LinkBudget::from_db(cell.g_e_db)?;
    let r = cell.rates;
    let regime = spec.source.regime;
    match (spec.scheme, regime, method) {
        (Scheme::Dt, Regime::Csi, _) => Ok(sop_dt_csi(r, gd, ge)),
        (Scheme::Df, Regime::Csi, _) => Ok(sop_df_csi(r, gd, ge)),
        (Scheme::Dt, Regime::Nocsi, _) => Ok(sop_dt_nocsi(r, gd, ge).total),
        (Scheme::Df, Regime::Nocsi, _) => Ok(sop_df_nocsi(r, gd, ge).total),
        (Scheme::Nc, _, _) => {
            // NC is GNC(2,1,1); E's side uses its free-intersource recovery.
            let eve = sop_gnc_nocsi(r, gd, ge, GncParams::nc(), GncNoCsiMethod::Floor)?.secrecy;
            Ok(sop_nocsi_compose(nc_outage(r.total_rate(), gd)?, eve)?.total)
        }
        (Scheme::Gnc(p), Regime::Csi, m) => {
            let m = match m {
                Method::Theorem1 => GncCsiMethod::Theorem1,
                Method::Quadrature => GncCsiMethod::Quadrature,
                _ => GncCsiMethod::Asymptotic,
            };
            sop_gnc_csi(r, gd, ge, p, m)
        }
        (Scheme::Gnc(p), Regime::Nocsi, m) => {
            let m = match m {
                Method::Exact2Src => GncNoCsiMethod::ExactTwoSource,
                Method::Approx => GncNoCsiMethod::Approx,
                Method::Floor => GncNoCsiMethod::Floor,
                _ => GncNoCsiMethod::MaxApprox,
            };
            Ok(sop_gnc_nocsi(r, gd, ge, p, m)?.total)
        }
    }
}

fn simulated(spec: &ResolvedSpec, cell: &Cell, cfg: &SimConfig) -> CoreResult<Estimate> {
    let gd = LinkBudget::from_db(cell.g_d_db)?;
    let ge = LinkBudget::from_db(cell.g_e_db)?;
    match spec.source.regime {
        Regime::Csi => simulate_sop_csi(spec.scheme, cell.rates, gd, ge, cfg),
        Regime::Nocsi => Ok(simulate_sop_nocsi(spec.scheme, cell.rates, gd, ge, cfg)?.total),
    }
}

/// Seed of grid point `index` of curve `curve`; curves get disjoint ranges.
pub fn cell_seed(base: u64, curve: usize, index: usize) -> u64 {
    base.wrapping_add(((curve as u64) << 32) | index as u64)
}

/// Evaluates every (grid point, method) pair in grid order. Failures are
/// recorded in the status column and the sweep continues.
pub fn evaluate(spec: &ResolvedSpec, curve: usize) -> Vec<Row> {
    let src = &spec.source;
    let mut rows = Vec::with_capacity(spec.cells.len() * src.methods.len());
    for (i, cell) in spec.cells.iter().enumerate() {
        for &method in &src.methods {
            let mut row = Row {
                axis_value: cell.axis_value,
                scheme: src.scheme,
                regime: src.regime,
                method,
                variant: src.variant.clone(),
                value: None,
                std_err: None,
                n: None,
                seed: None,
                status: "ok".into(),
            };
            if method == Method::Simulated {
                let cfg = SimConfig { seed: cell_seed(spec.sim.seed, curve, i), ..spec.sim };
                row.seed = Some(cfg.seed);
                row.n = Some(cfg.samples);
                match simulated(spec, cell, &cfg) {
                    Ok(e) => {
                        row.value = Some(e.p_hat);
                        row.std_err = Some(e.std_err);
                        if e.low_confidence() {
                            row.status = "low_confidence".into();
                        }
                    }
                    Err(e) => row.status = status_error(&e.to_string()),
                }
            } else {
                match analytic(spec, cell, method) {
                    Ok(v) => row.value = Some(v),
                    Err(e) => row.status = status_error(&e.to_string()),
                }
            }
            rows.push(row);
        }
    }
    rows
}

fn status_error(msg: &str) -> String {
    // keep the field CSV-safe
    format!("error:{}", msg.replace([',', '\n', '"'], ";"))
}

/// SHA-256 of the canonical TOML form of the specs, in order.
pub fn spec_hash(specs: &[SweepSpec]) -> String {
    let mut h = Sha256::new();
    for s in specs {
        h.update(toml::to_string(s).expect("specs serialize").as_bytes());
        h.update(b"\n---\n");
    }
    hex::encode(h.finalize())
}

pub fn run_sweep(spec: &ResolvedSpec) -> SweepResult {
    run_sweeps(std::slice::from_ref(spec))
}

/// Several sweeps on the same axis, concatenated in order.
pub fn run_sweeps(specs: &[ResolvedSpec]) -> SweepResult {
    assert!(!specs.is_empty());
    let sources: Vec<SweepSpec> = specs.iter().map(|s| s.source.clone()).collect();
    SweepResult {
        spec_hash: spec_hash(&sources),
        seed: specs[0].sim.seed,
        axis: specs[0].axis,
        rows: specs.iter().enumerate().flat_map(|(c, s)| evaluate(s, c)).collect(),
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub type CurveKey = (SchemeName, Regime, Method, String);

fn curve_key(r: &Row) -> CurveKey {
    (r.scheme, r.regime, r.method, r.variant.clone())
}

/// Curves of a result, each as (key, points) in first-appearance order.
pub fn curves(rows: &[Row]) -> Vec<(CurveKey, Vec<(f64, f64)>)> {
    let mut out: Vec<(CurveKey, Vec<(f64, f64)>)> = Vec::new();
    for r in rows {
        let key = curve_key(r);
        let idx = match out.iter().position(|(k, _)| *k == key) {
            Some(i) => i,
            None => {
                out.push((key, Vec::new()));
                out.len() - 1
            }
        };
        if let (Some(v), true) = (r.value, r.status == "ok") {
            out[idx].1.push((r.axis_value, v));
        }
    }
    out
}

/// Log-log slope magnitude over the last 10 dB of a dB-axis curve.
pub fn top_decade_slope(points: &[(f64, f64)]) -> Option<f64> {
    let top = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, v)| *x >= top - 10.0 - 1e-9 && *v > 0.0 && *v < 1.0)
        .map(|&(x, v)| (10f64.powf(x / 10.0), v))
        .collect();
    diversity_estimate(&pts).ok()
}

fn summary_lines(result: &SweepResult) -> Vec<String> {
    let mut out = Vec::new();
    for ((scheme, regime, method, variant), pts) in curves(&result.rows) {
        let label = if variant.is_empty() {
            format!("{scheme}/{regime}/{method}")
        } else {
            format!("{scheme}/{regime}/{method}/{variant}")
        };
        if result.axis == AxisKind::DestinationSnr {
            if let Some(s) = top_decade_slope(&pts) {
                out.push(format!("# slope {label}: {}", fmt_f64(s)));
            }
        }
        if regime == Regime::Nocsi {
            if let Some(&(x, v)) = pts.last() {
                out.push(format!("# last {label}: {} at {}", fmt_f64(v), x));
            }
        }
    }
    out
}

pub fn to_csv(result: &SweepResult) -> String {
    let mut s = String::new();
    writeln!(s, "# ncsec sweep").unwrap();
    writeln!(s, "# spec_sha256: {}", result.spec_hash).unwrap();
    writeln!(s, "# seed: {}", result.seed).unwrap();
    if result.axis == AxisKind::SecrecyRate {
        writeln!(s, "# axis_value_dB holds the secrecy rate in bpcu for this sweep").unwrap();
    }
    for l in summary_lines(result) {
        writeln!(s, "{l}").unwrap();
    }
    write_rows(&mut s, &result.rows);
    s
}

/// Header line plus one line per row.
pub fn write_rows(s: &mut String, rows: &[Row]) {
    writeln!(s, "{CSV_HEADER}").unwrap();
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{}",
            r.axis_value,
            r.scheme,
            r.regime,
            r.method,
            r.variant,
            opt(r.value),
            opt(r.std_err),
            r.n.map(|n| n.to_string()).unwrap_or_default(),
            r.seed.map(|n| n.to_string()).unwrap_or_default(),
            r.status
        )
        .unwrap();
    }
}

fn parse_name<T: DeserializeOwned>(s: &str) -> Result<T, String> {
    T::deserialize(StrDeserializer::<serde::de::value::Error>::new(s)).map_err(|e| e.to_string())
}

/// Parses the data rows of a CSV produced by [`to_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<Row>, String> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    if lines.next() != Some(CSV_HEADER) {
        return Err("missing header".into());
    }
    let parse_opt_f = |s: &str| -> Result<Option<f64>, String> {
        if s.is_empty() { Ok(None) } else { s.parse().map(Some).map_err(|e| format!("{s}: {e}")) }
    };
    let parse_opt_u = |s: &str| -> Result<Option<u64>, String> {
        if s.is_empty() { Ok(None) } else { s.parse().map(Some).map_err(|e| format!("{s}: {e}")) }
    };
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 10 {
                return Err(format!("expected 10 fields: {l}"));
            }
            Ok(Row {
                axis_value: f[0].parse().map_err(|e| format!("{}: {e}", f[0]))?,
                scheme: parse_name(f[1])?,
                regime: parse_name(f[2])?,
                method: parse_name(f[3])?,
                variant: f[4].into(),
                value: parse_opt_f(f[5])?,
                std_err: parse_opt_f(f[6])?,
                n: parse_opt_u(f[7])?,
                seed: parse_opt_u(f[8])?,
                status: f[9].into(),
            })
        })
        .collect()
}
