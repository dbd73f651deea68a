//! End-to-end CLI tests: subcommands, exit codes, JSON output stability.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qpcoh(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpcoh"))
        .args(args)
        .current_dir(dir)
        .env("QPCOH_ENTRY_CAP", "1000000000")
        .output()
        .expect("binary runs")
}

fn algebras_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../algebras")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn hq_table_for_m2() {
    let out = qpcoh(&["hq", "m2.alg", "--max-degree", "4"], &algebras_dir());
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    for line in ["0            4          3          1", "4         2500       2000          1"] {
        assert!(stdout.contains(line), "missing {line:?} in:\n{stdout}");
    }
}

#[test]
fn check_reports_witnessing_triple_with_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write(
        tmp.path(),
        "bad.alg",
        r#"
name = "non-leibniz"
dim = 2
basis = ["u", "x"]
unit = ["1", "0"]
mult = [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]]

[bracket]
kind = "explicit"
entries = [[0, 1, 1, "1"], [1, 0, 1, "-1"]]
"#,
    );
    let out = qpcoh(&["check", &bad], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("Leibniz"), "{stdout}");
    assert!(stdout.contains('['), "witness indices missing: {stdout}");
}

#[test]
fn check_accepts_valid_documents() {
    for file in ["m2.alg", "kronecker.alg", "a2.alg", "a3.alg", "dual-numbers.alg", "ground-field.alg"] {
        let out = qpcoh(&["check", file], &algebras_dir());
        assert_eq!(out.status.code(), Some(0), "{file}: {out:?}");
    }
}

#[test]
fn malformed_rational_is_input_error() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write(
        tmp.path(),
        "zero-denominator.alg",
        r#"
name = "bad"

[builder]
matrix = { n = 2 }

[bracket]
kind = "standard"
lambda = "1/0"
"#,
    );
    let out = qpcoh(&["hq", &bad], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("1/0"), "{stderr}");
}

#[test]
fn missing_file_is_input_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qpcoh(&["hq", "nope.alg"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_cap_is_exit_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_qpcoh"))
        .args(["hq", "m2.alg", "--max-degree", "4"])
        .current_dir(algebras_dir())
        .env("QPCOH_ENTRY_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{out:?}");
}

#[test]
fn ses_check_kronecker_passes() {
    let out = qpcoh(&["ses-check", "kronecker.alg", "--max-degree", "4"], &algebras_dir());
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("PASS"), "{stdout}");
}

#[test]
fn json_payload_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let algebra = algebras_dir().join("a2.alg");
    let mut payloads = Vec::new();
    for run in 0..2 {
        let json_path = tmp.path().join(format!("out{run}.json"));
        let out = qpcoh(
            &[
                "hq",
                algebra.to_str().unwrap(),
                "--max-degree",
                "3",
                "--json",
                json_path.to_str().unwrap(),
            ],
            tmp.path(),
        );
        assert!(out.status.success(), "{out:?}");
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
        assert_eq!(doc["tool_version"], env!("CARGO_PKG_VERSION"));
        assert!(doc["input_hash"].as_str().unwrap().starts_with("sha256:"));
        assert!(doc["comment"].as_str().is_some());
        payloads.push(serde_json::to_string(&doc["payload"]).unwrap());
    }
    assert_eq!(payloads[0], payloads[1], "payload must be bit-for-bit stable");
}

#[test]
fn env_check_json_records_seed() {
    let tmp = tempfile::tempdir().unwrap();
    let algebra = algebras_dir().join("a2.alg");
    let json_path = tmp.path().join("env.json");
    let out = qpcoh(
        &[
            "env-check",
            algebra.to_str().unwrap(),
            "--samples",
            "25",
            "--seed",
            "42",
            "--max-u-degree",
            "6",
            "--json",
            json_path.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["seed"], 42);
    assert_eq!(doc["payload"]["env_check"]["pass"], true);
}

#[test]
fn no_validate_skips_axiom_checking() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write(
        tmp.path(),
        "broken.alg",
        r#"
name = "broken-jacobi"
dim = 2
basis = ["u", "x"]
unit = ["1", "0"]
mult = [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]]

[bracket]
kind = "explicit"
entries = [[1, 1, 1, "1"]]
"#,
    );
    let with_validation = qpcoh(&["hq0", &bad], tmp.path());
    assert_eq!(with_validation.status.code(), Some(1));
    let without = qpcoh(&["hq0", &bad, "--no-validate"], tmp.path());
    assert_eq!(without.status.code(), Some(0), "{without:?}");
}

#[test]
fn hq_truncated_cli_matches_expected() {
    let out = qpcoh(
        &["hq", "m2.alg", "--max-degree", "5", "--truncate", "0"],
        &algebras_dir(),
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("truncated-0"), "{stdout}");
    let dims: Vec<&str> = stdout
        .lines()
        .filter(|l| l.trim_start().chars().next().is_some_and(|c| c.is_ascii_digit()))
        .map(|l| l.split_whitespace().last().unwrap())
        .collect();
    assert_eq!(dims, vec!["1", "1", "0", "1", "1", "0"]);
}

#[test]
fn hl_coefficient_choices() {
    let out = qpcoh(
        &["hl", "kronecker.alg", "--max-degree", "2", "--coefficients", "trivial"],
        &algebras_dir(),
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("coefficients trivial"), "{stdout}");
    let out = qpcoh(
        &["hl", "kronecker.alg", "--max-degree", "2", "--coefficients", "self"],
        &algebras_dir(),
    );
    assert!(out.status.success());
}

#[test]
fn hq0_hq1_direct_values() {
    let out = qpcoh(&["hq0", "m2.alg"], &algebras_dir());
    assert!(String::from_utf8(out.stdout).unwrap().contains("= 1"));
    let out = qpcoh(&["hq1", "kronecker.alg"], &algebras_dir());
    assert!(String::from_utf8(out.stdout).unwrap().contains("= 5"));
}

#[test]
fn kunneth_check_requires_trivial_bracket() {
    let out = qpcoh(&["kunneth-check", "a2.alg"], &algebras_dir());
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let out = qpcoh(&["kunneth-check", "dual-numbers.alg"], &algebras_dir());
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn tensor_check_refuses_failed_hypothesis() {
    // Kronecker has HH^1 = K^3, so the tensor identity's hypothesis fails.
    let out = qpcoh(&["tensor-check", "kronecker.alg", "--max-degree", "2"], &algebras_dir());
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("HH"), "{stderr}");
}
