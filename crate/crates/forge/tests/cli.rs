use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use theta_forge::json::series_from_json;
use theta_forge_core::lattice::named;
use theta_forge_core::modforms::theta_plain;

fn forge(args: &[&str], catalog: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_theta-forge"));
    cmd.args(args).env_remove("THETA_FORGE_CATALOG");
    if let Some(dir) = catalog {
        cmd.env("THETA_FORGE_CATALOG", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn expand_a2_theta() {
    let o = forge(&["expand-theta", "--lattice", "A2", "--prec", "4"], None);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "coefficients: [1, 6, 0, 6]\n");
}

#[test]
fn json_series_round_trips_to_library_value() {
    let o = forge(&["expand-theta", "--lattice", "D4", "--prec", "8", "--format", "json"], None);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let exps: Vec<u64> = v["coeffs"].as_array().unwrap().iter().map(|t| t[0].as_u64().unwrap()).collect();
    assert!(exps.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(series_from_json(&v).unwrap(), theta_plain(&named::d4(), 8).unwrap());
}

#[test]
fn usage_and_config_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["expand-theta", "--lattice", "NOPE"],
        &["expand-theta"],
        &["expand-theta", "--lattice", "A2", "--prec", "0"],
        &["expand-theta", "--lattice", "A2", "--k", "2", "--v", "1,0,0"],
        &["expand-theta", "--lattice", "A2", "--class", "1,0"],
        &["expand-psi", "--lattice", "2A2"],
        &["expand-psi", "--lattice", "A2", "--k", "3"],
        &["expand-eisenstein", "--weight", "3"],
        &["verify-identity", "--lattice", "2A2"],
        &["verify-identity", "--lattice", "A2", "--alpha", "1,2"],
        &["verify-laws", "--lattice", "A2", "--tol", "0"],
        &["verify-laws", "--lattice", "A2", "--laws", "thm1,nope"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = forge(args, None);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn root_identity_on_a2() {
    let o = forge(&["verify-identity", "--lattice", "A2", "--prec", "20"], None);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("root identity residual: 0 through q^20\n"));
    let o = forge(&["verify-identity", "--lattice", "D4", "--alpha", "1,0,0,0", "--format", "json"], None);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["through"], 20);
    assert_eq!(v["residual"]["coeffs"], Value::Array(vec![]));
}

#[test]
fn d4_campaign_passes() {
    let args = ["verify-laws", "--lattice", "D4", "--laws", "thm1,thm33", "--count", "10", "--seed", "7", "--tol", "1e-8"];
    let o = forge(&args, None);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 20);
    assert!(text.ends_with("20 passed, 0 failed\n"));
}

#[test]
fn json_reports_are_deterministic_and_match_exit_code() {
    let args = ["verify-laws", "--lattice", "A2", "--laws", "thm32,poisson,gauss-closed", "--count", "4", "--seed", "3", "--format", "json"];
    let a = forge(&args, None);
    let b = forge(&args, None);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let reports: Vec<Value> = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(reports.len(), 12);
    for r in &reports {
        let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["law", "inputs", "residual", "tol", "pass"]);
        assert!(r["residual"].as_f64().unwrap() < 1e-8);
        assert_eq!(r["pass"], Value::Bool(true));
    }
    let other = forge(&["verify-laws", "--lattice", "A2", "--laws", "poisson", "--count", "4", "--seed", "4", "--format", "json"], None);
    assert_ne!(other.stdout, forge(&["verify-laws", "--lattice", "A2", "--laws", "poisson", "--count", "4", "--seed", "3", "--format", "json"], None).stdout);
}

#[test]
fn failed_report_exits_1() {
    let o = forge(&["verify-laws", "--lattice", "A2", "--laws", "thm32", "--count", "3", "--tol", "1e-300", "--format", "json"], None);
    let reports: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(reports.iter().any(|r| r["pass"] == Value::Bool(false)));
    assert_eq!(code(&o), 1);
}

#[test]
fn catalog_directory_and_file_paths() {
    let dir = tempfile::tempdir().unwrap();
    // An isometric copy of A₂ with a different basis.
    fs::write(dir.path().join("a2alt.json"), r#"{"name": "A2alt", "gram": [[2, 1], [1, 2]]}"#).unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();

    let o = forge(&["expand-theta", "--lattice", "A2alt", "--prec", "4"], Some(dir.path()));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "coefficients: [1, 6, 0, 6]\n");

    let o = forge(&["catalog"], Some(dir.path()));
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().last().unwrap().starts_with("A2alt"));

    let o = forge(&["catalog", "--format", "json"], Some(dir.path()));
    let list: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(list[5]["gram"], serde_json::json!([[2, 1], [1, 2]]));
    assert_eq!(list[5]["det"], 3);

    let path = dir.path().join("a2alt.json");
    let o = forge(&["expand-theta", "--lattice", path.to_str().unwrap(), "--prec", "4"], None);
    assert_eq!(stdout(&o), "coefficients: [1, 6, 0, 6]\n");

    // Not even: every command touching the catalog reports it.
    fs::write(dir.path().join("bad.json"), r#"{"name": "bad", "gram": [[1, 0], [0, 2]]}"#).unwrap();
    let o = forge(&["catalog"], Some(dir.path()));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd diagonal"));
}

#[test]
fn rootless_form_needs_explicit_vector() {
    let o = forge(&["expand-psi", "--lattice", "2A2", "--cusp", "--prec", "6", "--v", "1,0 / s=1/4"], None);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "coefficients: [0, -6, -6, 36, 48, -36]\n");
    // k = 0 ignores the vector.
    let o = forge(&["expand-theta", "--lattice", "2A2", "--prec", "3"], None);
    assert_eq!(stdout(&o), "coefficients: [1, 0, 6]\n");
}

#[test]
fn eisenstein_and_class_expansions() {
    let o = forge(&["expand-eisenstein", "--weight", "2", "--prec", "3"], None);
    assert_eq!(stdout(&o), "coefficients: [-1/12, 2, 6]\n");
    let o = forge(&["expand-theta", "--lattice", "A2", "--prec", "2", "--class", "1,2"], None);
    assert_eq!(code(&o), 0);
    // Class of (1,2)/3: three vectors of norm 1/3 and three of norm 4/3.
    assert_eq!(stdout(&o).lines().skip(1).collect::<Vec<_>>(), ["q^(3/9): 3", "q^(12/9): 3"]);
}
