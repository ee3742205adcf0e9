//! Subcommand implementations on top of the core pipeline.

use std::path::Path;

use anyhow::{anyhow, Result};
use serde::Serialize;
use wavesamp_core as core;
use wavesamp_core::{
    check_v0_interpolation, check_wavelet_interpolation, extract_filter, gramian,
    interp_scaling_hat, interp_wavelet_hat, inverse_fourier, pe_function, qs_symbol,
    recovery_experiment, two_scale_symbol_ps, GeneratorSpec, RecoveryConfig, Spectrum, Verdict,
};

use crate::artifacts::{
    curve_json, spectrum_csv, symbol_csv, taps_json, time_csv, write_json, BuildArtifact,
    CheckArtifact, ExistenceDto, Meta, RecoveryArtifact, TOOL_VERSION,
};
use crate::config::RunConfig;

/// Process exit codes: 0 = exists/success, 1 = usage or config error,
/// 2 = not_exists, 3 = inconclusive.
pub fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Exists => 0,
        Verdict::NotExists => 2,
        Verdict::Inconclusive => 3,
    }
}

pub struct CheckOutcome {
    pub v0: core::ExistenceReport,
    pub wavelet: Option<core::ExistenceReport>,
}

impl CheckOutcome {
    pub fn final_verdict(&self) -> Verdict {
        match &self.wavelet {
            Some(w) => w.verdict,
            None => self.v0.verdict,
        }
    }
}

fn run_existence(cfg: &RunConfig, gen: &GeneratorSpec) -> Result<CheckOutcome> {
    let tol = cfg.tolerances();
    let v0 = check_v0_interpolation(gen, cfg.n, cfg.k, &tol).map_err(|e| anyhow!("{e}"))?;
    if v0.verdict != Verdict::Exists {
        return Ok(CheckOutcome { v0, wavelet: None });
    }
    let p_s = two_scale_symbol_ps(gen, cfg.n, cfg.k, &tol).map_err(|e| anyhow!("{e}"))?;
    let spec = Spectrum::interpolating(gen, cfg.k, &tol).map_err(|e| anyhow!("{e}"))?;
    let e_s = gramian(&spec, cfg.n, cfg.k).map_err(|e| anyhow!("{e}"))?;
    let wavelet =
        check_wavelet_interpolation(gen, &p_s, &e_s, cfg.k, &tol).map_err(|e| anyhow!("{e}"))?;
    Ok(CheckOutcome {
        v0,
        wavelet: Some(wavelet),
    })
}

fn write_check_artifact(dir: &Path, cfg: &RunConfig, outcome: &CheckOutcome) -> Result<()> {
    if cfg.json {
        write_json(
            dir,
            "existence.json",
            &CheckArtifact {
                tool_version: TOOL_VERSION,
                config: cfg,
                v0: ExistenceDto::from_report(&outcome.v0),
                wavelet: outcome.wavelet.as_ref().map(ExistenceDto::from_report),
                meta: Meta::now(),
            },
        )?;
    }
    Ok(())
}

fn print_existence(name: &str, outcome: &CheckOutcome) {
    let v0 = &outcome.v0;
    println!(
        "{name}: V0 {} (|m| in [{:.6}, {:.6}], grid {}, K {})",
        v0.verdict, v0.lower_bound_estimate, v0.upper_bound_estimate, v0.grid_n, v0.truncation_k
    );
    match &outcome.wavelet {
        Some(w) => {
            println!(
                "{name}: wavelet {} (|PE|^2 in [{:.6}, {:.6}], grid {})",
                w.verdict, w.lower_bound_estimate, w.upper_bound_estimate, w.grid_n
            );
            if !w.zero_locations.is_empty() {
                let head: Vec<String> = w
                    .zero_locations
                    .iter()
                    .take(4)
                    .map(|z| format!("{z:.6}"))
                    .collect();
                println!(
                    "{name}: existence functional vanishes near w = {} ({} grid points)",
                    head.join(", "),
                    w.zero_locations.len()
                );
            }
        }
        None => println!("{name}: wavelet check skipped (V0 basis missing)"),
    }
}

/// `check`: existence verdicts, exit code encodes the result.
pub fn cmd_check(cfg: &RunConfig, gen: &GeneratorSpec) -> Result<i32> {
    let outcome = run_existence(cfg, gen)?;
    write_check_artifact(&cfg.out_dir, cfg, &outcome)?;
    print_existence(gen.name(), &outcome);
    Ok(verdict_exit_code(outcome.final_verdict()))
}

/// `build`: writes the scaling/wavelet curves, filter taps and the
/// existence-functional curve.
pub fn cmd_build(cfg: &RunConfig, gen: &GeneratorSpec) -> Result<i32> {
    let tol = cfg.tolerances();
    let outcome = run_existence(cfg, gen)?;
    write_check_artifact(&cfg.out_dir, cfg, &outcome)?;
    if outcome.final_verdict() != Verdict::Exists {
        print_existence(gen.name(), &outcome);
        println!("{}: nothing to build", gen.name());
        return Ok(verdict_exit_code(outcome.final_verdict()));
    }
    let wavelet_report = outcome.wavelet.as_ref().expect("wavelet stage ran");

    let p_s = two_scale_symbol_ps(gen, cfg.n, cfg.k, &tol).map_err(|e| anyhow!("{e}"))?;
    let spec = Spectrum::interpolating(gen, cfg.k, &tol).map_err(|e| anyhow!("{e}"))?;
    let e_s = gramian(&spec, cfg.n, cfg.k).map_err(|e| anyhow!("{e}"))?;
    let q_s = qs_symbol(&p_s, &e_s, &tol).map_err(|e| anyhow!("{e}"))?;
    let pe = pe_function(&p_s, &e_s).map_err(|e| anyhow!("{e}"))?;

    let s_phi_hat =
        interp_scaling_hat(gen, cfg.w_max(), cfg.m, cfg.k, &tol).map_err(|e| anyhow!("{e}"))?;
    let s_psi_hat =
        interp_wavelet_hat(&s_phi_hat, &q_s, wavelet_report).map_err(|e| anyhow!("{e}"))?;
    let s_phi = inverse_fourier(&s_phi_hat, cfg.j, cfg.range_tuple()).map_err(|e| anyhow!("{e}"))?;
    let s_psi = inverse_fourier(&s_psi_hat, cfg.j, cfg.range_tuple()).map_err(|e| anyhow!("{e}"))?;

    let dir = &cfg.out_dir;
    let mut files = Vec::new();
    if cfg.csv {
        files.push(time_csv(dir, "s_phi.csv", &s_phi)?);
        files.push(time_csv(dir, "s_psi.csv", &s_psi)?);
        files.push(symbol_csv(dir, "pe_s.csv", &pe)?);
        files.push(spectrum_csv(dir, "s_phi_hat.csv", &s_phi_hat)?);
        files.push(spectrum_csv(dir, "s_psi_hat.csv", &s_psi_hat)?);
    }
    if cfg.json {
        let p_taps = extract_filter(&p_s, 24).map_err(|e| anyhow!("{e}"))?;
        let q_taps = extract_filter(&q_s, 24).map_err(|e| anyhow!("{e}"))?;
        files.push(taps_json(dir, "p_s_taps.json", cfg, &p_taps)?);
        files.push(taps_json(dir, "q_s_taps.json", cfg, &q_taps)?);
        for (name, f) in [("s_phi.json", &s_phi), ("s_psi.json", &s_psi)] {
            files.push(curve_json(
                dir,
                name,
                cfg,
                f.label(),
                "x",
                (0..f.len()).map(|i| (f.x_at(i), f.values()[i].re, f.values()[i].im)),
            )?);
        }
        for (name, sf) in [("s_phi_hat.json", &s_phi_hat), ("s_psi_hat.json", &s_psi_hat)] {
            files.push(curve_json(
                dir,
                name,
                cfg,
                sf.label(),
                "w",
                (0..sf.m()).map(|i| (sf.w_at(i), sf.values()[i].re, sf.values()[i].im)),
            )?);
        }
    }
    let file_names: Vec<String> = files
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    if cfg.json {
        write_json(
            dir,
            "build.json",
            &BuildArtifact {
                tool_version: TOOL_VERSION,
                config: cfg,
                files: file_names,
                s_phi_hat_tail_fraction: s_phi_hat.tail_fraction(),
                s_psi_hat_tail_fraction: s_psi_hat.tail_fraction(),
                s_phi_hat_hermitian_residual: s_phi_hat.hermitian_residual(),
                s_psi_hat_hermitian_residual: s_psi_hat.hermitian_residual(),
                meta: Meta::now(),
            },
        )?;
    }
    for sf in [&s_phi_hat, &s_psi_hat] {
        if sf.tail_fraction() > 1e-6 {
            eprintln!(
                "warning: {} holds {:.3e} of its energy in the outer 10% of the band; \
                 consider a larger w_max",
                sf.label(),
                sf.tail_fraction()
            );
        }
    }
    println!(
        "{}: wrote {} artifacts to {}",
        gen.name(),
        files.len() + usize::from(cfg.json),
        dir.display()
    );
    Ok(0)
}

/// `recover`: sampling-recovery experiment for the reference wavelet.
pub fn cmd_recover(
    cfg: &RunConfig,
    gen: &GeneratorSpec,
    n_range: i64,
    window: Option<(f64, f64)>,
) -> Result<i32> {
    let tol = cfg.tolerances();
    let mut rc = RecoveryConfig::for_generator(gen);
    rc.grid_n = cfg.n;
    rc.trunc_k = cfg.k;
    rc.out_j = cfg.j;
    if let Some(w) = window {
        rc.central_window = w;
    }
    let result = match recovery_experiment(gen, n_range, &rc, &tol) {
        Ok(r) => r,
        Err(core::Error::PreconditionFailed(msg)) => {
            eprintln!("{}: recovery refused: {msg}", gen.name());
            return Ok(2);
        }
        Err(e) => return Err(anyhow!("{e}")),
    };

    let dir = &cfg.out_dir;
    if cfg.csv {
        // Full-range reconstruction curve.
        time_csv(dir, "reconstruction.csv", &result.reconstruction)?;
        // Windowed comparison: x, f_ap, target, error.
        let err = &result.error;
        let rows: Vec<(f64, f64, f64, f64)> = (0..err.len())
            .map(|i| {
                let x = err.x_at(i);
                let e = err.values()[i].re;
                let f_ap = result
                    .reconstruction
                    .value_at(x)
                    .map(|v| v.re)
                    .unwrap_or(f64::NAN);
                (x, f_ap, f_ap - e, e)
            })
            .collect();
        let mut text = String::from("x,f_ap,target,error\n");
        for (x, f_ap, target, e) in rows {
            text.push_str(&format!("{x},{f_ap},{target},{e}\n"));
        }
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("recovery.csv"), text)?;
    }
    if cfg.json {
        write_json(
            dir,
            "recovery.json",
            &RecoveryArtifact {
                tool_version: TOOL_VERSION,
                config: cfg,
                n_range,
                sample_count: result.sample_count,
                central_window: [rc.central_window.0, rc.central_window.1],
                sup_error: result.sup_error,
                meta: Meta::now(),
            },
        )?;
    }
    println!(
        "{}: recovered from {} samples, sup error {:.3e} on [{}, {}]",
        gen.name(),
        result.sample_count,
        result.sup_error,
        rc.central_window.0,
        rc.central_window.1
    );
    Ok(0)
}

/// `report`: run every bundled case into per-case subdirectories plus a
/// machine-readable summary.
pub fn cmd_report(base_cfg: &RunConfig) -> Result<i32> {
    #[derive(Serialize)]
    struct CaseSummary {
        generator: String,
        v0_verdict: String,
        wavelet_verdict: Option<String>,
        recovery_sup_error: Option<f64>,
        recovery_n_range: Option<i64>,
    }
    #[derive(Serialize)]
    struct ReportArtifact<'a> {
        tool_version: &'a str,
        cases: Vec<CaseSummary>,
        meta: Meta,
    }

    let mut cases = Vec::new();
    for name in ["shannon", "haar", "bspline2", "bspline3", "bspline4"] {
        let gen = crate::config::build_generator(name)?;
        let grid = wavesamp_core::recommended_grid(&gen);
        let mut cfg = base_cfg.clone();
        cfg.generator = format!("builtin: {name}");
        cfg.n = grid.symbol_n;
        cfg.w_max_over_pi = grid.w_max / std::f64::consts::PI;
        cfg.m = grid.m;
        cfg.j = grid.j;
        cfg.range = [grid.range.0, grid.range.1];
        cfg.out_dir = base_cfg.out_dir.join(name);

        let outcome = run_existence(&cfg, &gen)?;
        write_check_artifact(&cfg.out_dir, &cfg, &outcome)?;
        print_existence(name, &outcome);
        let exists = outcome.final_verdict() == Verdict::Exists;
        if exists {
            cmd_build(&cfg, &gen)?;
        }

        // Recovery experiments mirror the two spline studies.
        let recovery = match name {
            "bspline2" => Some((3i64, (-2.0, 2.0))),
            "bspline4" => Some((4i64, (-3.0, 3.0))),
            _ => None,
        };
        let mut sup = None;
        let mut used_range = None;
        if let Some((n_range, window)) = recovery {
            let code = cmd_recover(&cfg, &gen, n_range, Some(window))?;
            if code == 0 {
                let recovery_json = std::fs::read_to_string(cfg.out_dir.join("recovery.json"))?;
                let value: serde_json::Value = serde_json::from_str(&recovery_json)?;
                sup = value["sup_error"].as_f64();
                used_range = Some(n_range);
            }
        }
        cases.push(CaseSummary {
            generator: name.to_string(),
            v0_verdict: outcome.v0.verdict.to_string(),
            wavelet_verdict: outcome.wavelet.as_ref().map(|w| w.verdict.to_string()),
            recovery_sup_error: sup,
            recovery_n_range: used_range,
        });
    }

    write_json(
        &base_cfg.out_dir,
        "report.json",
        &ReportArtifact {
            tool_version: TOOL_VERSION,
            cases,
            meta: Meta::now(),
        },
    )?;
    println!("report written to {}", base_cfg.out_dir.display());
    Ok(0)
}
