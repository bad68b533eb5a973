use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pellarcs"))
        .args(args)
        .env_remove("PELLARCS_TOL")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_rows(args: &[&str]) -> Vec<Vec<String>> {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn tuple_reports_a_disjoint_configuration() {
    let v = json(&["tuple", "--n", "8", "--m", "2", "--k", "0.99"]);
    let r = &v["results"];
    assert!(r["z_star"].as_f64().unwrap() > 1.0);
    assert_eq!(r["kind"], "disjoint");
    assert_eq!(r["counts"]["interval"], 5);
    assert_eq!(r["counts"]["arc"], 5);
    assert_eq!(v["certified"], true);
    assert_eq!(v["warnings"][0], "gcd(m, n) = 2 > 1");
}

#[test]
fn map_matches_the_reference_endpoint() {
    let v = json(&["map", "--k", "0.70710678", "--lambda", "0.25"]);
    assert!((v["results"]["alpha"].as_f64().unwrap() - 0.910_179_7).abs() < 1e-7);
    assert!((v["results"]["beta"].as_f64().unwrap() - 0.414_213_6).abs() < 1e-7);
}

#[test]
fn invert_reduces_every_quadrant() {
    let base = json(&["map", "--k", "0.6", "--lambda", "0.3"]);
    let (a, b) = (base["results"]["alpha"].as_f64().unwrap(), base["results"]["beta"].as_f64().unwrap());
    for (sa, sb) in [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
        let (alpha, beta) = (format!("{}", sa * a), format!("{}", sb * b));
        let v = json(&["invert", "--alpha", &alpha, "--beta", &beta]);
        let r = &v["results"];
        assert!((r["k"].as_f64().unwrap() - 0.6).abs() < 1e-9);
        assert!((r["lambda"].as_f64().unwrap() - 0.3).abs() < 1e-9);
        assert_eq!(r["reduction"]["reflected_real"], sa < 0.0);
        assert_eq!(r["reduction"]["reflected_imag"], sb < 0.0);
        assert_eq!(v["warnings"].as_array().unwrap().len(), (sa < 0.0) as usize + (sb < 0.0) as usize);
        assert_eq!(v["certified"], true);
    }
    assert_eq!(run(&["invert", "--alpha", "0.5", "--beta", "0"]).status.code(), Some(1));
}

#[test]
fn pell_run_records_a_small_residual() {
    let v = json(&["pell", "--n", "8", "--m", "2", "--k", "0.99"]);
    let r = &v["results"];
    assert!(r["residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(r["t_chebyshev"].as_array().unwrap().len(), 9);
    assert_eq!(r["u_chebyshev"].as_array().unwrap().len(), 7);
    assert_eq!(r["cert_points"], 512);
}

#[test]
fn boundary_csv_has_the_requested_rows() {
    let rows = csv_rows(&["boundary", "--samples", "64"]);
    assert_eq!(rows.len(), 64);
    let quarter = rows.iter().find(|r| r[0].parse::<f64>().unwrap() == 0.25).unwrap();
    assert!((quarter[1].parse::<f64>().unwrap() - 0.942_809).abs() < 1e-5);
}

#[test]
fn paramcurves_has_both_families() {
    let rows = csv_rows(&["paramcurves", "--samples", "8"]);
    assert_eq!(rows.iter().filter(|r| r[0] == "lambda").count(), 9 * 8);
    assert_eq!(rows.iter().filter(|r| r[0] == "k").count(), 6 * 8);
}

#[test]
fn trace_lists_the_arc_then_the_preimage() {
    let rows = csv_rows(&["trace", "--n", "8", "--m", "2", "--k", "0.7", "--samples", "64", "--resolution", "64"]);
    assert_eq!(rows.iter().filter(|r| r[0] == "arc").count(), 65);
    assert!(rows.iter().any(|r| r[0].starts_with("preimage-")));
    for r in &rows {
        assert!(r[1..].iter().all(|v| v.parse::<f64>().unwrap().is_finite()));
    }
}

#[test]
fn plot_has_one_marker_per_extremal_point() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let out = run(&["plot", "--n", "8", "--m", "2", "--k", "0.7", "--resolution", "96", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(!dir.path().join("fig.svg.partial").exists());
    for layer in ["interval", "arc", "preimage", "extremals"] {
        assert!(svg.contains(&format!("<g id=\"{layer}\"")), "{layer}");
    }
    assert_eq!(svg.matches("<svg").count(), 1);
    let v = json(&["extremals", "--n", "8", "--m", "2", "--k", "0.7"]);
    let count = v["results"]["interval_count"].as_u64().unwrap() + v["results"]["arc_count"].as_u64().unwrap();
    assert_eq!(svg.matches("class=\"extremal\"").count() as u64, count);
}

#[test]
fn output_is_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_ms");
        v
    };
    let args = ["extremals", "--n", "7", "--m", "3", "--k", "0.3"];
    assert_eq!(strip(json(&args)), strip(json(&args)));
    let args = ["boundary", "--samples", "8"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn input_errors_exit_with_one() {
    for args in [
        vec!["tuple", "--n", "8", "--m", "5", "--k", "0.7"],
        vec!["map", "--k", "1.5", "--lambda", "0.2"],
        vec!["map", "--k", "0.5"],
        vec!["boundary", "--samples", "8", "--format", "json"],
        vec!["map", "--k", "0.5", "--lambda", "0.2", "--tol", "0.1"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn tolerance_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_pellarcs"))
        .args(["map", "--k", "0.5", "--lambda", "0.2"])
        .env("PELLARCS_TOL", "1e-3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_pellarcs"))
        .args(["map", "--k", "0.5", "--lambda", "0.2"])
        .env("PELLARCS_TOL", "1e-10")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["results"]["alpha"].as_f64().unwrap() > 0.0);
}

#[test]
fn half_turn_requests_carry_a_notice() {
    let v = json(&["tuple", "--n", "6", "--m", "3", "--k", "0.6"]);
    assert_eq!(v["warnings"][0], "lambda = 1/2 uses the closed-form composition");
    assert!(v["results"]["z_star"].as_f64().unwrap().abs() < 1e-15);
}

#[test]
fn uncertified_runs_exit_with_two() {
    let out = run(&["pell", "--n", "16", "--m", "7", "--k", "0.99999"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not certified") && err.contains("leading coefficient"), "{err}");
}
