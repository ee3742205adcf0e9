//! `wavesamp` — interpolation scaling functions and interpolation wavelets
//! from closed-form spectra: existence checks, symbol/curve construction and
//! sampling-recovery experiments.
//!
//! Exit codes: 0 = success / basis exists, 1 = usage or configuration error,
//! 2 = no interpolation basis, 3 = inconclusive (refine the grid).

mod artifacts;
mod config;
mod pipeline;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_range, RawConfig, RunConfig};

#[derive(Parser)]
#[command(
    name = "wavesamp",
    version,
    about = "Interpolation bases in multiresolution analyses: existence, construction, recovery"
)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Overrides {
    /// Config file (`key = value` lines; flags override file values).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Generator: a builtin name (shannon, haar, bspline2, bspline3,
    /// bspline4) or a fragment like `expr: (sin(w/2)/(w/2))^2, decay_order: 2`.
    #[arg(long, global = true)]
    generator: Option<String>,

    /// Symbol grid size (power of two).
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Truncation radius for lattice sums.
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Spectral cutoff in units of pi.
    #[arg(long = "w-max-pi", global = true)]
    w_max_pi: Option<f64>,

    /// Spectral sample count (power of two).
    #[arg(long, global = true)]
    m: Option<usize>,

    /// Dyadic time resolution exponent (step 2^-j).
    #[arg(long, global = true)]
    j: Option<u32>,

    /// Synthesis range, e.g. `-16..16`.
    #[arg(long, global = true, value_parser = parse_range_arg)]
    range: Option<(f64, f64)>,

    /// Hard denominator floor for pointwise divisions.
    #[arg(long = "eps-div", global = true)]
    eps_div: Option<f64>,

    /// Relative near-zero classification threshold.
    #[arg(long = "tau-zero-rel", global = true)]
    tau_zero_rel: Option<f64>,

    /// Output directory (falls back to $WAVESAMP_OUT, then the config file,
    /// then ./wavesamp-out).
    #[arg(long = "out-dir", global = true)]
    out_dir: Option<PathBuf>,

    /// Write CSV curves.
    #[arg(long, global = true)]
    csv: Option<bool>,

    /// Write JSON artifacts.
    #[arg(long, global = true)]
    json: Option<bool>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether interpolation bases exist (approximation space, then
    /// wavelet spaces).
    Check,
    /// Construct and export the interpolating scaling function, wavelet,
    /// filter taps and existence-functional curve.
    Build,
    /// Recover the reference wavelet from its half-integer samples.
    Recover {
        /// Sample index range: samples are taken at n - 1/2 for |n| <= n_range.
        #[arg(long = "n-range", default_value_t = 3)]
        n_range: i64,
        /// Central window for the error measurement, e.g. `-2..2`.
        #[arg(long, value_parser = parse_range_arg)]
        window: Option<(f64, f64)>,
    },
    /// Run every bundled case study into per-generator subdirectories.
    Report,
}

fn parse_range_arg(s: &str) -> Result<(f64, f64), String> {
    parse_range(s).map_err(|e| e.to_string())
}

fn flags_to_raw(o: &Overrides) -> RawConfig {
    RawConfig {
        generator: o.generator.clone(),
        n: o.n,
        k: o.k,
        w_max_over_pi: o.w_max_pi,
        m: o.m,
        j: o.j,
        range: o.range,
        eps_div: o.eps_div,
        tau_zero_rel: o.tau_zero_rel,
        out_dir: None, // handled separately for env-var precedence
        csv: o.csv,
        json: o.json,
    }
}

fn run() -> anyhow::Result<i32> {
    let cli = Cli::parse();

    let file_cfg = match &cli.overrides.config {
        Some(path) => RawConfig::from_file(path)?,
        None => RawConfig::default(),
    };
    let mut raw = file_cfg.overlay(flags_to_raw(&cli.overrides));

    // Output directory precedence: --out-dir, then WAVESAMP_OUT, then the
    // config file, then the default.
    if let Some(dir) = &cli.overrides.out_dir {
        raw.out_dir = Some(dir.clone());
    } else if let Ok(env_dir) = std::env::var("WAVESAMP_OUT") {
        if !env_dir.is_empty() {
            raw.out_dir = Some(PathBuf::from(env_dir));
        }
    }

    // `report` supplies its own generators; give it a placeholder so the
    // shared resolution path can run.
    if matches!(cli.command, Command::Report) && raw.generator.is_none() {
        raw.generator = Some("builtin: shannon".to_string());
    }

    let (cfg, gen) = RunConfig::resolve(&raw)?;
    match cli.command {
        Command::Check => pipeline::cmd_check(&cfg, &gen),
        Command::Build => pipeline::cmd_build(&cfg, &gen),
        Command::Recover { n_range, window } => {
            pipeline::cmd_recover(&cfg, &gen, n_range, window)
        }
        Command::Report => pipeline::cmd_report(&cfg),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
