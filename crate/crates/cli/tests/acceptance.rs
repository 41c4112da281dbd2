//! Acceptance gate: every suite check must pass inside its time budget,
//! and the installed binary must honor the documented exit codes.

use std::fs;
use std::process::Command;

use charp_cli::report::Status;
use charp_cli::suite::{run_suite, SuiteOptions};

const BOUNDS_MS: [(&str, u64); 12] = [
    ("lucas", 5_000),
    ("fpure", 1_000),
    ("tight-closure", 120_000),
    ("graded-invariants", 30_000),
    ("isolated-singularity", 30_000),
    ("split-quadratic", 60_000),
    ("split-cubic-witness", 60_000),
    ("closure-oracle", 60_000),
    ("reduction-a-invariant", 10_000),
    ("intersection-identity", 10_000),
    ("groebner", 60_000),
    ("classifier", 30_000),
];

#[test]
fn full_suite_passes_within_budgets() {
    let report = run_suite(&SuiteOptions::default()).expect("suite runs");
    assert_eq!(report.entries.len(), BOUNDS_MS.len());
    let mut all_ok = true;
    for (id, bound) in BOUNDS_MS {
        let entry = report.entries.iter().find(|e| e.id == id).expect("entry present");
        let ok = entry.status == Status::Pass && entry.runtime_ms < bound;
        println!(
            "{} {:<22} {:>7} ms (budget {:>6} ms)  {}",
            if ok { "PASS" } else { "FAIL" },
            entry.id,
            entry.runtime_ms,
            bound,
            entry.detail
        );
        all_ok &= ok;
    }
    assert!(all_ok, "a check failed or overran its budget");
    assert_eq!(report.overall, Status::Pass);
}

fn charp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_charp"))
}

const EXAMPLE: &str = "ring p=2 vars=X,Y,Z,W\nf = X^2+X*Y*Z*W+Y^3+Z^3+W^3\nI = Y, Z, W\n";

#[test]
fn report_certificates_replay_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = charp()
        .args(["paper-verify", "--only", "fpure,groebner,split-cubic-witness", "--report"])
        .arg(&report_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let replay = charp().args(["replay", "--report"]).arg(&report_path).output().unwrap();
    assert_eq!(replay.status.code(), Some(0));
    let text = String::from_utf8_lossy(&replay.stdout);
    assert!(text.contains("VALID"));
    assert!(!text.contains("INVALID"));

    // Corrupting a witness coefficient must flip the verdict and the exit.
    let mut doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    doc["entries"][0]["certificate"]["witness"]["coefficient"] = serde_json::json!(2);
    let tampered = dir.path().join("tampered.json");
    fs::write(&tampered, serde_json::to_string(&doc).unwrap()).unwrap();
    let replay = charp().args(["replay", "--report"]).arg(&tampered).output().unwrap();
    assert_eq!(replay.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&replay.stdout).contains("INVALID"));
}

#[test]
fn document_commands_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let example = dir.path().join("example.txt");
    fs::write(&example, EXAMPLE).unwrap();

    let out = charp().args(["fpure", "--input"]).arg(&example).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("F-pure: yes"));

    let out = charp().args(["hilbert", "--input"]).arg(&example).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("a-invariant: -2"));

    let out = charp()
        .args(["tc", "--z", "X", "--qmax", "4", "--input"])
        .arg(&example)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // No Frobenius level fits below qmax = 1.
    let out = charp()
        .args(["tc", "--z", "X", "--qmax", "1", "--input"])
        .arg(&example)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let mono = dir.path().join("mono.txt");
    fs::write(&mono, "ring p=5 vars=X,Y\nI = X^2, Y^2\n").unwrap();
    let out = charp().args(["closure", "--input"]).arg(&mono).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("X*Y"));

    let out = charp().args(["redno", "--input"]).arg(&mono).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("r = a + d holds"));

    let m3 = dir.path().join("m3.txt");
    fs::write(&m3, "ring p=5 vars=X,Y,Z\nI = X, Y, Z\n").unwrap();
    let out = charp().args(["vv", "--k", "1", "--l", "2", "--input"]).arg(&m3).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_envelopes_are_versioned() {
    let out = charp().args(["binom", "--p", "3", "--m", "5", "--n", "2", "--emit", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "binom");
    assert_eq!(doc["value"], 1);
}

#[test]
fn input_problems_exit_three() {
    let out = charp().args(["fpure", "--input", "/definitely/not/here.txt"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "ring p=5 vars=X,Y\nf = X^2+7*Y\n").unwrap();
    let out = charp().args(["fpure", "--input"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    // Missing required flag is a usage problem, not an inconclusive result.
    let out = charp().args(["fregular"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = charp().args(["paper-verify", "--only", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}
