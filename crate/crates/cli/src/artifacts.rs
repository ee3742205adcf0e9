//! Serializable artifact schemas and writers.
//!
//! JSON artifacts are deterministic given the configuration: fixed field
//! order, sorted tap maps, and the timestamp quarantined in a `meta` object
//! so byte comparison of everything else is meaningful. CSV files carry a
//! single header row; complex columns are split into `re`/`im`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use wavesamp_core::{
    ExistenceReport, LaurentFilter, PeriodicSymbol, SpectralFunction, TimeFunction,
};

use crate::config::RunConfig;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Timestamp container kept separate from the reproducible payload.
#[derive(Serialize)]
pub struct Meta {
    pub timestamp_unix_ms: u128,
}

impl Meta {
    pub fn now() -> Meta {
        Meta {
            timestamp_unix_ms: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
        }
    }
}

#[derive(Serialize)]
pub struct ExistenceDto {
    pub stage: String,
    pub verdict: String,
    pub lower_bound_estimate: f64,
    pub upper_bound_estimate: f64,
    pub zero_locations: Vec<f64>,
    pub grid_n: usize,
    pub truncation_k: usize,
    pub unverified_hypothesis: String,
}

impl ExistenceDto {
    pub fn from_report(report: &ExistenceReport) -> ExistenceDto {
        ExistenceDto {
            stage: report.stage.to_string(),
            verdict: report.verdict.to_string(),
            lower_bound_estimate: report.lower_bound_estimate,
            upper_bound_estimate: report.upper_bound_estimate,
            zero_locations: report.zero_locations.clone(),
            grid_n: report.grid_n,
            truncation_k: report.truncation_k,
            unverified_hypothesis: report.assumptions().to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct CheckArtifact<'a> {
    pub tool_version: &'a str,
    pub config: &'a RunConfig,
    pub v0: ExistenceDto,
    pub wavelet: Option<ExistenceDto>,
    pub meta: Meta,
}

#[derive(Serialize)]
pub struct BuildArtifact<'a> {
    pub tool_version: &'a str,
    pub config: &'a RunConfig,
    pub files: Vec<String>,
    pub s_phi_hat_tail_fraction: f64,
    pub s_psi_hat_tail_fraction: f64,
    pub s_phi_hat_hermitian_residual: f64,
    pub s_psi_hat_hermitian_residual: f64,
    pub meta: Meta,
}

#[derive(Serialize)]
pub struct RecoveryArtifact<'a> {
    pub tool_version: &'a str,
    pub config: &'a RunConfig,
    pub n_range: i64,
    pub sample_count: usize,
    pub central_window: [f64; 2],
    pub sup_error: f64,
    pub meta: Meta,
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(value)?;
    fs::write(&path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

/// Columns `x_or_w, re, im`.
pub fn write_complex_csv(
    dir: &Path,
    name: &str,
    axis: &str,
    rows: impl Iterator<Item = (f64, f64, f64)>,
) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut out = String::new();
    out.push_str(&format!("{axis},re,im\n"));
    for (x, re, im) in rows {
        out.push_str(&format!("{x},{re},{im}\n"));
    }
    fs::write(&path, out).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

pub fn time_csv(dir: &Path, name: &str, f: &TimeFunction) -> Result<PathBuf> {
    write_complex_csv(
        dir,
        name,
        "x",
        (0..f.len()).map(|i| (f.x_at(i), f.values()[i].re, f.values()[i].im)),
    )
}

pub fn symbol_csv(dir: &Path, name: &str, sym: &PeriodicSymbol) -> Result<PathBuf> {
    write_complex_csv(
        dir,
        name,
        "w",
        (0..sym.n()).map(|m| (sym.w_at(m), sym.values()[m].re, sym.values()[m].im)),
    )
}

pub fn spectrum_csv(dir: &Path, name: &str, sf: &SpectralFunction) -> Result<PathBuf> {
    write_complex_csv(
        dir,
        name,
        "w",
        (0..sf.m()).map(|i| (sf.w_at(i), sf.values()[i].re, sf.values()[i].im)),
    )
}

/// Curve as compact JSON: envelope fields plus a `points` array of
/// `[x_or_w, re, im]` triples (not pretty-printed; curves are large).
pub fn curve_json(
    dir: &Path,
    name: &str,
    config: &RunConfig,
    label: &str,
    axis: &str,
    points: impl Iterator<Item = (f64, f64, f64)>,
) -> Result<PathBuf> {
    #[derive(Serialize)]
    struct CurveArtifact<'a> {
        tool_version: &'a str,
        config: &'a RunConfig,
        label: &'a str,
        axis: &'a str,
        points: Vec<[f64; 3]>,
        meta: Meta,
    }
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let artifact = CurveArtifact {
        tool_version: TOOL_VERSION,
        config,
        label,
        axis,
        points: points.map(|(x, re, im)| [x, re, im]).collect(),
        meta: Meta::now(),
    };
    let text = serde_json::to_string(&artifact)?;
    fs::write(&path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

/// Tap map as `{ "k": [re, im] }`, dropping numerically-zero tails.
pub fn taps_json(dir: &Path, name: &str, config: &RunConfig, filter: &LaurentFilter) -> Result<PathBuf> {
    #[derive(Serialize)]
    struct TapsArtifact<'a> {
        tool_version: &'a str,
        config: &'a RunConfig,
        representation: &'a str,
        taps: BTreeMap<i64, [f64; 2]>,
        meta: Meta,
    }
    let taps: BTreeMap<i64, [f64; 2]> = filter
        .taps()
        .iter()
        .filter(|(_, c)| c.norm() > 1e-12)
        .map(|(&k, c)| (k, [c.re, c.im]))
        .collect();
    write_json(
        dir,
        name,
        &TapsArtifact {
            tool_version: TOOL_VERSION,
            config,
            representation: "symbol(z) = 1/2 * sum_k taps[k] * z^k, z = exp(-i w/2)",
            taps,
            meta: Meta::now(),
        },
    )
}
