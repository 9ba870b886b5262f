use std::process::{Command, Output};

use serde_json::Value;

fn spinorlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinorlab"))
        .args(args)
        .env_remove("SPINORLAB_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn list_prints_every_suite() {
    let out = spinorlab(&["certify", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let ids: Vec<&str> = text.lines().collect();
    assert_eq!(ids, spinorlab_cli::suite_ids());
}

#[test]
fn passing_suite_exits_zero_with_versioned_json() {
    let out = spinorlab(&["certify", "eq1", "--n", "1..3", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "eq1");
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 0);
}

#[test]
fn certified_failure_exits_one_with_counterexample() {
    let out = spinorlab(&["certify", "eq4", "--n", "1", "--trials", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert!(v["counterexample"].is_object());
    assert!(String::from_utf8_lossy(&out.stderr).contains("right-action-sign"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["certify", "nope"][..],
        &["certify", "eq1", "--n", "0..3"],
        &["certify", "eq1", "--trials", "0"],
        &["spectrum", "torus"],
        &["spectrum", "torus", "--n", "7"],
        &["spectrum", "sphere", "--n", "3"],
        &["bound", "--n", "2", "--alpha2", "1", "--h-mean-sq", "0", "--N", "1"],
        &["bound", "--n", "3", "--alpha2", "x", "--h-mean-sq", "0", "--N", "1"],
        &["spectrum", "--bogus"],
    ] {
        let out = spinorlab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn same_seed_gives_identical_bytes() {
    let args = ["certify", "eq6", "--n", "1..2", "--trials", "4", "--seed", "17"];
    let a = spinorlab(&args);
    let b = spinorlab(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = spinorlab(&["certify", "eq6", "--n", "1..2", "--trials", "4", "--seed", "18"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn seed_defaults_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_spinorlab"))
        .args(["certify", "lemma1", "--n", "1", "--trials", "2"])
        .env("SPINORLAB_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 42);
}

#[test]
fn circle_spectrum_is_half_integral() {
    let out = spinorlab(&["spectrum", "circle", "--K", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["command"], "spectrum");
    let values: Vec<f64> = v["eigenvalues"].as_array().unwrap().iter().map(|l| l["value"].as_f64().unwrap()).collect();
    assert_eq!(values, [-0.5, 0.5]);
}

#[test]
fn sphere_spectrum_markdown() {
    let out = spinorlab(&["spectrum", "sphere", "--n", "3", "--p", "2", "--kmax", "3", "--format", "md"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for row in ["| 0 | 4 | 6 |", "| 1 | 9 |", "| 2 | 16 |", "| 3 | 25 |"] {
        assert!(text.contains(row), "{row} missing from\n{text}");
    }
}

#[test]
fn sharp_bound_on_the_sphere() {
    let out = spinorlab(&["bound", "--n", "3", "--alpha2", "1", "--h-mean-sq", "0", "--N", "6", "--compare", "sphere"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["bound"], "4");
    assert_eq!(v["comparison"]["margin"], "0");
    assert_eq!(v["comparison"]["holds"], true);
}

#[test]
fn violated_bound_exits_one() {
    let out = spinorlab(&["bound", "--n", "1", "--alpha2", "0", "--h-mean-sq", "0", "--N", "4", "--compare", "torus"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["comparison"]["holds"], false);
}

#[test]
fn negative_alpha_squared_is_accepted() {
    let out = spinorlab(&["bound", "--n", "3", "--alpha2", "-1", "--h-sup-sq", "1", "--N", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["bound"], "-7/4");
    assert_eq!(v["vacuous"], true);
}
