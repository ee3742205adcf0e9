//! Run configuration: defaults, config-file parsing and flag precedence.
//!
//! The config file is plain `key = value` text with `#` comments. CLI flags
//! override file values; the `WAVESAMP_OUT` environment variable overrides
//! the file's output directory but yields to an explicit `--out-dir`.
//! Every artifact embeds the fully resolved configuration, so runs are
//! auditable and byte-reproducible.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use wavesamp_core::{parse_generator, recommended_grid, GeneratorSpec, Tolerances};

/// Raw, partially-specified configuration (file and flags accumulate here).
#[derive(Debug, Default, Clone)]
pub struct RawConfig {
    pub generator: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub w_max_over_pi: Option<f64>,
    pub m: Option<usize>,
    pub j: Option<u32>,
    pub range: Option<(f64, f64)>,
    pub eps_div: Option<f64>,
    pub tau_zero_rel: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub csv: Option<bool>,
    pub json: Option<bool>,
}

impl RawConfig {
    /// Later sources win field-by-field.
    pub fn overlay(mut self, over: RawConfig) -> RawConfig {
        macro_rules! take {
            ($field:ident) => {
                if over.$field.is_some() {
                    self.$field = over.$field;
                }
            };
        }
        take!(generator);
        take!(n);
        take!(k);
        take!(w_max_over_pi);
        take!(m);
        take!(j);
        take!(range);
        take!(eps_div);
        take!(tau_zero_rel);
        take!(out_dir);
        take!(csv);
        take!(json);
        self
    }

    pub fn from_file(path: &Path) -> Result<RawConfig> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let mut cfg = RawConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{}:{}: expected `key = value`", path.display(), lineno + 1);
            };
            let key = key.trim();
            let value = value.trim();
            let ctx = || format!("{}:{}: invalid value for `{key}`", path.display(), lineno + 1);
            match key {
                "generator" => cfg.generator = Some(value.to_string()),
                "n" => cfg.n = Some(value.parse().with_context(ctx)?),
                "k" => cfg.k = Some(value.parse().with_context(ctx)?),
                "w_max_pi" => cfg.w_max_over_pi = Some(value.parse().with_context(ctx)?),
                "m" => cfg.m = Some(value.parse().with_context(ctx)?),
                "j" => cfg.j = Some(value.parse().with_context(ctx)?),
                "range" => cfg.range = Some(parse_range(value).with_context(ctx)?),
                "eps_div" => cfg.eps_div = Some(value.parse().with_context(ctx)?),
                "tau_zero_rel" => cfg.tau_zero_rel = Some(value.parse().with_context(ctx)?),
                "out_dir" => cfg.out_dir = Some(PathBuf::from(value)),
                "csv" => cfg.csv = Some(value.parse().with_context(ctx)?),
                "json" => cfg.json = Some(value.parse().with_context(ctx)?),
                other => bail!("{}:{}: unknown key `{other}`", path.display(), lineno + 1),
            }
        }
        Ok(cfg)
    }
}

pub fn parse_range(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("range must be `<a>..<b>`"))?;
    let lo: f64 = a.trim().parse().map_err(|_| anyhow!("bad range start"))?;
    let hi: f64 = b.trim().parse().map_err(|_| anyhow!("bad range end"))?;
    if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
        bail!("range must be increasing");
    }
    Ok((lo, hi))
}

/// Fully resolved run configuration; this is what artifacts echo.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub generator: String,
    pub n: usize,
    pub k: usize,
    pub w_max_over_pi: f64,
    pub m: usize,
    pub j: u32,
    pub range: [f64; 2],
    pub eps_div: f64,
    pub tau_zero_rel: f64,
    pub out_dir: PathBuf,
    pub csv: bool,
    pub json: bool,
}

impl RunConfig {
    /// Resolve against the generator's recommended synthesis grid. Grid
    /// sizes must be powers of two and all numeric fields positive.
    pub fn resolve(raw: &RawConfig) -> Result<(RunConfig, GeneratorSpec)> {
        let fragment = raw
            .generator
            .clone()
            .ok_or_else(|| anyhow!("no generator configured (use --generator or a config file)"))?;
        let gen = build_generator(&fragment)?;
        let grid = recommended_grid(&gen);

        let cfg = RunConfig {
            generator: fragment,
            n: raw.n.unwrap_or(grid.symbol_n),
            k: raw.k.unwrap_or(64),
            w_max_over_pi: raw.w_max_over_pi.unwrap_or(grid.w_max / PI),
            m: raw.m.unwrap_or(grid.m),
            j: raw.j.unwrap_or(grid.j),
            range: raw.range.map(|(a, b)| [a, b]).unwrap_or([grid.range.0, grid.range.1]),
            eps_div: raw.eps_div.unwrap_or(1e-12),
            tau_zero_rel: raw.tau_zero_rel.unwrap_or(1e-6),
            out_dir: resolved_out_dir(raw),
            csv: raw.csv.unwrap_or(true),
            json: raw.json.unwrap_or(true),
        };
        if !cfg.n.is_power_of_two() || !cfg.m.is_power_of_two() {
            bail!("n and m must be powers of two (got n={}, m={})", cfg.n, cfg.m);
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if cfg.k == 0
            || !positive(cfg.w_max_over_pi)
            || !positive(cfg.eps_div)
            || !positive(cfg.tau_zero_rel)
        {
            bail!("numeric configuration fields must be positive");
        }
        Ok((cfg, gen))
    }

    pub fn w_max(&self) -> f64 {
        self.w_max_over_pi * PI
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            eps_div: self.eps_div,
            tau_zero_rel: self.tau_zero_rel,
        }
    }

    pub fn range_tuple(&self) -> (f64, f64) {
        (self.range[0], self.range[1])
    }
}

fn resolved_out_dir(raw: &RawConfig) -> PathBuf {
    if let Some(dir) = &raw.out_dir {
        return dir.clone();
    }
    if let Ok(env_dir) = std::env::var("WAVESAMP_OUT") {
        if !env_dir.is_empty() {
            return PathBuf::from(env_dir);
        }
    }
    PathBuf::from("wavesamp-out")
}

/// Accept either a full generator fragment (`builtin: haar`,
/// `expr: ..., decay_order: 2`) or a bare builtin name.
pub fn build_generator(fragment: &str) -> Result<GeneratorSpec> {
    let text = if fragment.contains(':') {
        fragment.to_string()
    } else {
        format!("builtin: {fragment}")
    };
    parse_generator(&text).map_err(|e| anyhow!("{e}"))
}
