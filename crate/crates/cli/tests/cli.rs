use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn otp_rh(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otp-rh"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("OTP_RH_QUAD_TOL")
        .output()
        .expect("binary runs")
}

fn summary(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap()
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn constant_weight_eighth_polynomial_is_cos_4x() {
    let dir = tempfile::tempdir().unwrap();
    let o = otp_rh(&["otp", "--weight", "const", "--n", "4"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for row in rows(&dir.path().join("otp_coeffs.csv")).iter().filter(|r| r[0] == "8") {
        let k: i64 = row[1].parse().unwrap();
        let re: f64 = row[2].parse().unwrap();
        let im: f64 = row[3].parse().unwrap();
        let want = if k.abs() == 4 { 0.5 } else { 0.0 };
        assert!((re - want).abs() < 1e-14 && im.abs() < 1e-14, "k={k}: {re} {im}");
    }
    let leading = rows(&dir.path().join("leading.csv"));
    assert_eq!(leading.len(), 4);
    // a_n = 2i for n >= 2
    assert_eq!(leading[1][4].parse::<f64>().unwrap(), 2.0);
}

#[test]
fn rh_verify_hard_stages_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = otp_rh(&["rh-verify", "--weight", "cos:0.5", "--n", "3", "--r", "0.6"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    assert!(s["max_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(s["assertions_passed"], true);
    assert_eq!(s["n"], 3);
    assert_eq!(s["r"], 0.6);
    let stages: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("stages.json")).unwrap()).unwrap();
    let stages = stages.as_array().unwrap();
    assert_eq!(stages.len(), 9);
    assert!(stages.iter().all(|st| st["weight_spec"] == "cos:0.5" && st["n"] == 3));
    // stdout carries the same summary
    let printed: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(printed["command"], "rh-verify");
}

#[test]
fn decay_sweep_slope_matches_contour_height() {
    let dir = tempfile::tempdir().unwrap();
    let o = otp_rh(&["decay-sweep", "--weight", "poisson:0.4", "--n", "2..8"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    let r = s["r"].as_f64().unwrap();
    let table = rows(&dir.path().join("decay.csv"));
    assert_eq!(table.len(), 7);
    for row in &table {
        let slope: f64 = row[5].parse().unwrap();
        assert!((slope + r).abs() / r < 0.05, "{slope} vs -{r}");
    }
    assert_eq!(s["n"], "2..8");
}

#[test]
fn bad_weight_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = otp_rh(&["moments", "--weight", "cos:2"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(!dir.path().join("summary.json").exists());

    let o = otp_rh(&["moments"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn empty_sweep_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = otp_rh(&["decay-sweep", "--weight", "const", "--n", "5..4"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(dir.path().join("decay.csv")).unwrap(),
        "n,norm_g_minus_i,k_norm,k_distance,eta_hat,fitted_slope\n"
    );
    assert!(summary(dir.path())["max_residual"].is_null());
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let o = otp_rh(&["rh-verify", "--weight", "exptrig:0.3,0.1", "--n", "4"], dir.path());
        assert_eq!(o.status.code(), Some(0));
    }
    for file in ["residuals.csv", "stages.json"] {
        let x = std::fs::read(a.path().join(file)).unwrap();
        let y = std::fs::read(b.path().join(file)).unwrap();
        assert_eq!(x, y, "{file}");
    }
}

#[test]
fn weight_spec_is_echoed_verbatim() {
    let dir = tempfile::tempdir().unwrap();
    let spec = "exptrig:0.30,0.100";
    let o = otp_rh(&["szego", "--weight", spec], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    assert_eq!(s["weight_spec"], spec);
    assert_eq!(s["command"], "szego");
    assert_eq!(rows(&dir.path().join("szego.csv")).len(), 256);
}

#[test]
fn config_file_fills_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "weight = \"poisson:0.4\"\nn = \"3..5\"\nr = 0.4\n").unwrap();
    let o = otp_rh(
        &["asymptotics", "--config", cfg.to_str().unwrap(), "--r", "0.3", "--n-ref", "12", "--x", "0.1,1.2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(dir.path());
    assert_eq!(s["weight_spec"], "poisson:0.4");
    assert_eq!(s["r"], 0.3);
    assert_eq!(rows(&dir.path().join("asymptotics.csv")).len(), 6);
}

#[test]
fn tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_otp-rh"))
        .args(["moments", "--weight", "const", "--out"])
        .arg(dir.path())
        .env("OTP_RH_QUAD_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("quadrature"));
}

#[test]
fn failed_assertion_exits_two_with_report_path() {
    // a tolerance far too loose for a non-polynomial weight leaves
    // quadrature error in the Szego product
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_otp-rh"))
        .args(["szego", "--weight", "poisson:0.9", "--tol", "1e-3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("szego.csv"), "{err}");
    assert_eq!(summary(dir.path())["assertions_passed"], false);
    assert!(dir.path().join("szego.csv").exists());
}
