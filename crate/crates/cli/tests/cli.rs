//! End-to-end checks of the `ncdg` binary: output shape, exit codes, and
//! spec-file round trips. Kept to the small algebras so the whole file runs
//! in seconds.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ncdg(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncdg"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf8")
}

/// Emits the bundled specs into a fresh tempdir and returns it.
fn spec_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().expect("tempdir");
    let out = ncdg(&["emit-specs", "--dir", "."], dir.path());
    assert!(out.status.success(), "emit-specs failed: {}", stderr(&out));
    dir
}

fn spec(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn emit_specs_writes_the_fleet_and_the_worked_example() {
    let dir = spec_dir();
    for name in [
        "m2.json",
        "m3.json",
        "c_plus_c.json",
        "m2_plus_c.json",
        "triangular2.json",
        "kronecker.json",
        "m2_regular_module.json",
        "m2_regular_nabla.json",
        "m2_der_module.json",
        "m2_bracket_nabla.json",
    ] {
        assert!(spec(&dir, name).exists(), "{name} missing");
    }
}

#[test]
fn run_emits_sorted_json_reports_and_exit_zero() {
    let dir = spec_dir();
    let out = ncdg(&["run", "--suite", "cartan", "--seed", "7", "m2.json"], dir.path());
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let checks = reports[0]["checks"].as_array().expect("checks array");
    assert!(checks.len() >= 5);
    let laws: Vec<&str> = checks.iter().map(|c| c["law"].as_str().unwrap()).collect();
    let mut sorted = laws.clone();
    sorted.sort_unstable();
    assert_eq!(laws, sorted, "rows must be sorted by law");
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(stderr(&out).contains("cartan/m2: 5 pass, 0 fail, 0 unsupported"));
}

#[test]
fn run_reports_are_byte_identical_for_fixed_seed() {
    let dir = spec_dir();
    let args = ["run", "--suite", "algebra", "--seed", "11", "m2.json", "c_plus_c.json"];
    let first = ncdg(&args, dir.path());
    let second = ncdg(&args, dir.path());
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn run_text_format_prints_one_line_per_check() {
    let dir = spec_dir();
    let out = ncdg(
        &["run", "--suite", "algebra", "--format", "text", "triangular2.json"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("suite algebra on triangular2 (seed 0):"));
    assert!(text.contains("[pass] the unit is neutral"));
}

#[test]
fn unknown_suites_and_malformed_specs_exit_two() {
    let dir = spec_dir();
    let out = ncdg(&["run", "--suite", "spectral"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown suite"));

    std::fs::write(spec(&dir, "broken.json"), "{\"name\": 3}").expect("write");
    let out = ncdg(&["describe", "broken.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ParseError"));
}

#[test]
fn describe_prints_the_structural_facts() {
    let dir = spec_dir();
    let out = ncdg(&["describe", "m2.json"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("algebra m2: dim 4"));
    assert!(text.contains("center: dim 1"));
    assert!(text.contains("derivations: dim 3, inner 3, outer 0"));
    assert!(text.contains("[X0, X1]"));

    let out = ncdg(&["describe", "c_plus_c.json", "--format", "json"], dir.path());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["derivations"]["dim"], 0);
    assert_eq!(value["center"]["dim"], 2);
}

#[test]
fn symplectic_prints_tables_or_reports_the_precondition() {
    let dir = spec_dir();
    let out = ncdg(&["symplectic", "m2.json"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("omega(X_a, X_b)"));
    assert!(text.contains("hamiltonian table:"));
    assert!(text.contains("poisson table:"));

    let out = ncdg(&["symplectic", "c_plus_c.json"], dir.path());
    assert!(out.status.success(), "the precondition path is a reported outcome");
    assert!(stdout(&out).contains("unsupported: CenterNotTrivial"));

    let out = ncdg(&["symplectic", "m2.json", "--check", "--seed", "3"], dir.path());
    assert!(out.status.success());
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(reports[0]["suite"], "symplectic");
    assert!(reports[0]["checks"].as_array().unwrap().len() >= 9);
}

#[test]
fn connection_modes_check_transform_and_reject() {
    let dir = spec_dir();
    let base: Vec<String> = [
        "connection",
        "m2.json",
        "--module",
        "m2_regular_module.json",
        "--nabla",
        "m2_regular_nabla.json",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();

    let args: Vec<&str> = base.iter().map(String::as_str).chain(["--check"]).collect();
    let out = ncdg(&args, dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("both axioms hold"));

    let args: Vec<&str> = base.iter().map(String::as_str).chain(["--curvature"]).collect();
    let out = ncdg(&args, dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("flat: yes"));

    // The dual of the regular bimodule is the center, so the dual rule is a
    // single 1x1 block per basis derivation.
    let args: Vec<&str> = base
        .iter()
        .map(String::as_str)
        .chain(["--dual", "--format", "json"])
        .collect();
    let out = ncdg(&args, dir.path());
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["matrices"].as_array().unwrap().len(), 3);
    assert_eq!(value["matrices"][0].as_array().unwrap().len(), 1);

    // Corrupt one entry: --check fails with exit 1, transforms refuse with 2.
    let nabla = spec(&dir, "m2_regular_nabla.json");
    let mut value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&nabla).unwrap()).unwrap();
    value["matrices"][0][0][0] = serde_json::json!("7");
    std::fs::write(spec(&dir, "twisted.json"), value.to_string()).unwrap();
    let out = ncdg(
        &[
            "connection",
            "m2.json",
            "--module",
            "m2_regular_module.json",
            "--nabla",
            "twisted.json",
            "--check",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violation:"));
    let out = ncdg(
        &[
            "connection",
            "m2.json",
            "--module",
            "m2_regular_module.json",
            "--nabla",
            "twisted.json",
            "--dual",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn connection_torsion_of_the_bracket_rule_is_the_bracket() {
    let dir = spec_dir();
    let out = ncdg(
        &[
            "connection",
            "m2.json",
            "--module",
            "m2_der_module.json",
            "--nabla",
            "m2_bracket_nabla.json",
            "--torsion",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("T(X0, X1) = (2)·X2"));
    assert!(text.contains("torsion-free: no"));
}

#[test]
fn weyl_tables_match_on_every_row() {
    let dir = spec_dir();
    let out = ncdg(&["weyl", "--max-degree", "3"], dir.path());
    assert!(out.status.success());
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let checks = reports[0]["checks"].as_array().expect("checks");
    // 20 monomials of degree <= 3, all ordered pairs.
    assert_eq!(checks.len(), 400);
    assert!(checks.iter().all(|c| c["status"] == "pass"));

    let out = ncdg(
        &["weyl", "--max-degree", "4", "--pairs", "random", "--count", "12", "--seed", "5"],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stderr(&out).contains("weyl-table/ccr:"));
}
