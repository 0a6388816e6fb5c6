//! End-to-end checks of the `bihelm` binary: exit codes, output
//! determinism, and format validation.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bihelm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bihelm"))
}

fn run(args: &[&str]) -> Output {
    bihelm().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("bihelm-cli-tests");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write temp file");
    path
}

#[test]
fn check_reports_failure_of_regular_separation_with_exit_zero() {
    let out = run(&["check", "--system", "cartesian"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("regular: false"));
    assert!(text.contains("coefficient of u1_3*u2_3: -2"));
}

#[test]
fn constraints_exit_code_tracks_the_verdict() {
    // all cartesian catalog sets pass
    let out = run(&["constraints", "--system", "cartesian"]);
    assert_eq!(out.status.code(), Some(0));

    // the polar radial set is conditional on the separation constant
    let out = run(&["constraints", "--system", "polar"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("lambda = 0"));

    // binding the constant to zero turns it into a clean pass
    let out = run(&["constraints", "--system", "polar", "--lambda", "0"]);
    assert_eq!(out.status.code(), Some(0));

    // a set violating the tangency conditions fails
    let bad = write_temp(
        "bad.json",
        r#"{"constants": [{"name": "c1", "equals": "u1_2 + u1^2"}],
            "relations": [{"target": "u1_3", "rhs": "0"},
                          {"target": "u1_4", "rhs": "0"}]}"#,
    );
    let out = run(&[
        "constraints",
        "--system",
        "cartesian",
        "--constraints",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("verdict: fail"));

    // a set too small to decouple the equation is a reported error
    let undersized = write_temp(
        "undersized.json",
        r#"{"constants": [], "relations": [{"target": "u1_3", "rhs": "u1"}]}"#,
    );
    let out = run(&[
        "constraints",
        "--system",
        "cartesian",
        "--constraints",
        undersized.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn conformal_catalog_entries_are_conditional_on_the_constant_relation() {
    for system in ["parabolic", "elliptic-hyperbolic"] {
        let out = run(&["constraints", "--system", system]);
        assert_eq!(out.status.code(), Some(2), "{system}");
        assert!(stdout(&out).contains("gamma^2 - lambda = 0"), "{system}");
    }
}

#[test]
fn empty_constraint_set_reduces_to_the_regular_check() {
    let empty = write_temp("empty.json", r#"{"constants": [], "relations": []}"#);
    let out = run(&[
        "constraints",
        "--system",
        "cartesian",
        "--constraints",
        empty.to_str().unwrap(),
    ]);
    // no catalog chart separates regularly, so the fallback fails
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("unconstrained"));
}

#[test]
fn user_metric_with_user_constraints_reduces_to_the_other_side() {
    let metric = write_temp(
        "flat.json",
        r#"{"chart": ["x", "y"], "params": [],
            "g_contra": [["1", "0"], ["0", "1"]]}"#,
    );
    let set = write_temp(
        "xside.json",
        r#"{"constants": [{"name": "c1", "equals": "u1_2 + u1^2"}],
            "relations": [{"target": "u1_3", "rhs": "-2*u1_2*u1"},
                          {"target": "u1_4", "rhs": "-2*u1_2^2 - 2*u1_3*u1"}]}"#,
    );
    let out = run(&[
        "constraints",
        "--metric",
        metric.to_str().unwrap(),
        "--constraints",
        set.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("reduced[y]"));
    assert!(text.contains("c1^2"));
}

#[test]
fn liouville_profile_files_are_accepted() {
    let profiles = write_temp(
        "profiles.json",
        r#"{"f": "u^2 + 3*u", "g": "v^2 - v", "params": []}"#,
    );
    let arg = format!("liouville:{}", profiles.to_str().unwrap());
    let out = run(&["constraints", "--system", &arg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("gamma^2 - lambda = 0"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        vec!["check", "--system", "polar", "--format", "json"],
        vec!["constraints", "--system", "parabolic", "--format", "json"],
        vec!["plate", "--n", "0..1", "--m", "1..2", "--format", "json"],
        vec!["coeffs", "--system", "elliptic-hyperbolic", "--format", "json"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.status.code(), second.status.code(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert!(!first.stdout.is_empty(), "{args:?}");
        // and it parses back
        let _: serde_json::Value =
            serde_json::from_slice(&first.stdout).expect("valid JSON");
    }
}

#[test]
fn plate_csv_has_the_expected_headers_and_grid_block() {
    let out = run(&[
        "plate", "--n", "0", "--m", "1", "--grid", "3x4", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut blocks = text.split("\n\n");
    let modes = blocks.next().expect("mode block");
    let grid = blocks.next().expect("grid block");
    assert!(modes.starts_with("n,m,l_nm,k,omega,residual"));
    assert_eq!(modes.lines().count(), 2);
    assert!(grid.starts_with("r,theta,t,psi"));
    assert_eq!(grid.lines().count(), 1 + 3 * 4);
}

#[test]
fn plate_scales_frequencies_with_the_material_constants() {
    let out = run(&[
        "plate", "--n", "0", "--m", "1", "--a", "2", "--rho", "3", "--c", "12",
        "--format", "csv",
    ]);
    let text = stdout(&out);
    let row = text.lines().nth(1).expect("data row");
    let fields: Vec<&str> = row.split(',').collect();
    let l: f64 = fields[2].parse().unwrap();
    let k: f64 = fields[3].parse().unwrap();
    let omega: f64 = fields[4].parse().unwrap();
    assert!((k - l / 2.0).abs() < 1e-12);
    assert!((omega - 2.0 * k * k).abs() < 1e-10);
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["check"]);
    assert_eq!(out.status.code(), Some(1), "missing input source");

    let out = run(&["check", "--system", "nosuch"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["check", "--system", "cartesian", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1), "csv not valid for check");

    let out = run(&["check", "--system", "cartesian", "--lambda", "x+1"]);
    assert_eq!(out.status.code(), Some(1), "lambda must be constant");

    let out = run(&["plate", "--m", "0..2"]);
    assert_eq!(out.status.code(), Some(1), "radial index is 1-based");

    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn seed_env_changes_the_sampled_witness_but_not_the_claims() {
    let base = run(&["check", "--system", "polar", "--format", "json"]);
    let seeded = bihelm()
        .args(["check", "--system", "polar", "--format", "json"])
        .env("BIHELM_SEED", "7")
        .output()
        .expect("binary runs");
    let a: serde_json::Value = serde_json::from_slice(&base.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&seeded.stdout).unwrap();
    assert_eq!(a["consistency"]["seed"], serde_json::json!(20260815));
    assert_eq!(b["consistency"]["seed"], serde_json::json!(7));
    assert_eq!(a["entries"], b["entries"], "symbolic claims are seed-free");
    assert_eq!(a["consistency"]["max_zero_claim_error"], serde_json::json!(0.0));
}

#[test]
fn coeffs_lists_every_family_for_the_polar_chart() {
    let out = run(&["coeffs", "--system", "polar"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for needle in [
        "Gamma[1] = -1/r",
        "A[1,1,1,1] = 1",
        "A[2,2,2,2] = 1/r^4",
        "B[1,1,1] = 2/r",
        "C[2,2] = 4/r^4",
        "D[1] = 1/r^3",
        "det(g_contra) = 1/r^2",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
    }
}
