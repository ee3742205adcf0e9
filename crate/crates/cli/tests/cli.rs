//! End-to-end tests of the binary: exit-code contract, artifact layout,
//! config precedence and byte-level determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wavesamp"))
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = bin();
    cmd.args(args).env_remove("WAVESAMP_OUT");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json_without_meta(path: &Path) -> serde_json::Value {
    let text = fs::read_to_string(path).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    value.as_object_mut().unwrap().remove("meta");
    value
}

#[test]
fn exit_codes_follow_the_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["check", "--generator", "bspline3", "--out-dir", dir.path().to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let out = run(
        &["check", "--generator", "bspline4", "--out-dir", dir.path().to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));

    let out = run(
        &["check", "--generator", "nosuch", "--out-dir", dir.path().to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_artifacts_are_deterministic() {
    // Identical configuration twice into the same directory: everything but
    // the quarantined timestamp must be byte-identical.
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for _ in 0..2 {
        let out = run(
            &["check", "--generator", "bspline2", "--out-dir", dir.path().to_str().unwrap()],
            &[],
        );
        assert_eq!(out.status.code(), Some(0));
        let raw = fs::read_to_string(dir.path().join("existence.json")).unwrap();
        let stripped: String = raw
            .lines()
            .filter(|l| !l.contains("timestamp_unix_ms") && !l.contains("\"meta\""))
            .collect::<Vec<_>>()
            .join("\n");
        texts.push(stripped);
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn nonexistent_case_reports_its_zero() {
    let dir = tempfile::tempdir().unwrap();
    run(
        &["check", "--generator", "bspline3", "--out-dir", dir.path().to_str().unwrap()],
        &[],
    );
    let v = json_without_meta(&dir.path().join("existence.json"));
    assert_eq!(v["v0"]["verdict"], "exists");
    assert_eq!(v["wavelet"]["verdict"], "not_exists");
    let zeros = v["wavelet"]["zero_locations"].as_array().unwrap();
    assert!(zeros
        .iter()
        .any(|z| (z.as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-2));
}

#[test]
fn flags_override_config_file_and_env_sets_output() {
    let dir = tempfile::tempdir().unwrap();
    let out_env = dir.path().join("from-env");
    let config_path = dir.path().join("run.conf");
    fs::write(
        &config_path,
        "# test configuration\ngenerator = bspline3\nn = 2048\nk = 32\n",
    )
    .unwrap();

    let out = run(
        &[
            "check",
            "--config",
            config_path.to_str().unwrap(),
            "--generator",
            "bspline4",
        ],
        &[("WAVESAMP_OUT", out_env.to_str().unwrap())],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    let v = json_without_meta(&out_env.join("existence.json"));
    assert_eq!(v["config"]["generator"], "bspline4");
    assert_eq!(v["config"]["n"], 2048);
    assert_eq!(v["config"]["k"], 32);

    // An explicit --out-dir beats the environment.
    let out_flag = dir.path().join("from-flag");
    let out = run(
        &[
            "check",
            "--generator",
            "bspline4",
            "--out-dir",
            out_flag.to_str().unwrap(),
        ],
        &[("WAVESAMP_OUT", out_env.to_str().unwrap())],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out_flag.join("existence.json").exists());
}

#[test]
fn build_writes_the_advertised_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["build", "--generator", "haar", "--out-dir", dir.path().to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    for name in [
        "existence.json",
        "build.json",
        "s_phi.csv",
        "s_psi.csv",
        "pe_s.csv",
        "s_phi_hat.csv",
        "s_psi_hat.csv",
        "p_s_taps.json",
        "q_s_taps.json",
    ] {
        assert!(dir.path().join(name).exists(), "missing {name}");
    }
    // Tap artifact carries the box generator's unit taps at k = 0, 1.
    let taps = json_without_meta(&dir.path().join("p_s_taps.json"));
    let map = taps["taps"].as_object().unwrap();
    assert!((map["0"][0].as_f64().unwrap() - 1.0).abs() < 1e-8);
    assert!((map["1"][0].as_f64().unwrap() - 1.0).abs() < 1e-8);

    // CSV header contract.
    let pe = fs::read_to_string(dir.path().join("pe_s.csv")).unwrap();
    assert!(pe.starts_with("w,re,im\n"));
    let s_phi = fs::read_to_string(dir.path().join("s_phi.csv")).unwrap();
    assert!(s_phi.starts_with("x,re,im\n"));
}

#[test]
fn build_refuses_nonexistent_wavelet_basis() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["build", "--generator", "bspline3", "--out-dir", dir.path().to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(dir.path().join("existence.json").exists());
    assert!(!dir.path().join("s_psi.csv").exists());
}

#[test]
fn recover_writes_summary_and_curves() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "recover",
            "--generator",
            "shannon",
            "--n-range",
            "5",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let summary = json_without_meta(&dir.path().join("recovery.json"));
    assert!(summary["sup_error"].as_f64().unwrap() < 1e-3);
    assert_eq!(summary["sample_count"], 11);
    let csv = fs::read_to_string(dir.path().join("recovery.csv")).unwrap();
    assert!(csv.starts_with("x,f_ap,target,error\n"));
    assert!(dir.path().join("reconstruction.csv").exists());

    let out = run(
        &[
            "recover",
            "--generator",
            "bspline3",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn custom_expression_generators_run_the_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    // The triangle spectrum written as an expression behaves like bspline2.
    // Expression generators have no closed periodization shortcuts, so the
    // lattice sums are genuinely truncated; a larger K buys the accuracy.
    let out = run(
        &[
            "check",
            "--generator",
            "expr: (sin(w/2)/(w/2))^2, decay_order: 2",
            "--n",
            "2048",
            "--k",
            "256",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_without_meta(&dir.path().join("existence.json"));
    assert_eq!(v["wavelet"]["verdict"], "exists");
    let lo = v["wavelet"]["lower_bound_estimate"].as_f64().unwrap();
    assert!((lo - 4.0 / 9.0).abs() < 5e-3, "lower bound {lo}");
}
