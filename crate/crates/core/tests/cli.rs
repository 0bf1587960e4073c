//! End-to-end tests of the binary: golden outputs, exit codes, and
//! byte-level determinism.

use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_paraorbit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_in(dir: &TempDir, args: &[&str]) -> Output {
    bin()
        .args(args)
        .current_dir(dir.path())
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn para_dual_golden() {
    let out = run(&["para", "dual", "2 2 : 1 2 3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2 2 : 1 2 3\n");

    let out = run(&["para", "dual", "1 2 : 0 2"]);
    assert_eq!(stdout(&out), "2 1 : 0 1 1\n");
}

#[test]
fn para_compose_golden() {
    let out = run(&["para", "compose", "2 2 : 0 1 2", "2 2 : 1 2 3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2 2 : 1 2 3\n");
}

#[test]
fn para_count_golden() {
    let out = run(&["para", "count", "--n", "1", "--m", "1", "--in", "delta"]);
    assert_eq!(stdout(&out), "3\n");
    let out = run(&["para", "count", "--n", "1", "--m", "1", "--in", "lambda"]);
    assert_eq!(stdout(&out), "6\n");
    let out = run(&["para", "count", "--n", "0", "--m", "0", "--in", "lambda"]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn para_structured_output() {
    let out = run(&["--format", "structured", "para", "dual", "2 2 : 1 2 3"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["n"], 2);
    assert_eq!(value["values"], serde_json::json!([1, 2, 3]));
}

#[test]
fn para_exit_codes() {
    // malformed literal: 2
    let out = run(&["para", "dual", "2 2 1 2 3"]);
    assert_eq!(out.status.code(), Some(2));
    // invariant violation: 1
    let out = run(&["para", "check", "2 2 : 3 1 1"]);
    assert_eq!(out.status.code(), Some(1));
    // rank mismatch in composition: 1
    let out = run(&["para", "compose", "1 1 : 0 1", "2 2 : 0 1 2"]);
    assert_eq!(out.status.code(), Some(1));
    // valid: 0 (the cyclic operator ends above its target rank, so it is
    // duplicial but not simplicial)
    let out = run(&["para", "check", "2 2 : 1 2 3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "valid n=2 m=2 class=k in_k=true in_delta=false\n"
    );
}

#[test]
fn para_check_classifies() {
    let out = run(&["para", "check", "0 1 : 1"]);
    assert_eq!(
        stdout(&out),
        "valid n=0 m=1 class=delta in_k=true in_delta=true\n"
    );
    let out = run(&["para", "check", "1 0 : 0 1"]);
    assert_eq!(
        stdout(&out),
        "valid n=1 m=0 class=k in_k=true in_delta=false\n"
    );
    let out = run(&["para", "check", "0 0 : -3"]);
    assert_eq!(
        stdout(&out),
        "valid n=0 m=0 class=paracyclic in_k=false in_delta=false\n"
    );
}

#[test]
fn instances_emit_and_validate_roundtrip() {
    let dir = TempDir::new().unwrap();
    for name in ["trivial", "z6-two-normals", "s3-orbit", "s3-collapse"] {
        let out = run_in(&dir, &["instances", "emit", name]);
        assert_eq!(out.status.code(), Some(0), "emit {name} failed");
        let file = format!("{name}.json");
        let out = run_in(&dir, &["orbit", "validate", &file]);
        assert_eq!(out.status.code(), Some(0), "validate {name} failed");
        assert!(stdout(&out).ends_with("result: all checks pass\n"));
    }
}

#[test]
fn emit_to_stdout_matches_file() {
    let dir = TempDir::new().unwrap();
    let piped = run_in(&dir, &["instances", "emit", "z4-orbit", "--out", "-"]);
    run_in(&dir, &["instances", "emit", "z4-orbit"]);
    let written = std::fs::read_to_string(dir.path().join("z4-orbit.json")).unwrap();
    assert_eq!(stdout(&piped), written);
}

#[test]
fn orbit_hom_golden() {
    let dir = TempDir::new().unwrap();
    run_in(&dir, &["instances", "emit", "s3-orbit"]);
    let out = run_in(
        &dir,
        &["orbit", "hom", "--from", "A3", "--to", "A3", "s3-orbit.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "hom(A3, A3): 2 morphisms\n  e*G[A3]\n  (2 3)*G[A3]\n"
    );
    let out = run_in(
        &dir,
        &[
            "orbit",
            "hom",
            "--from",
            "<(1 2)>",
            "--to",
            "<(1 2)>",
            "s3-orbit.json",
        ],
    );
    assert_eq!(stdout(&out), "hom(<(1 2)>, <(1 2)>): 1 morphisms\n  e*G[<(1 2)>]\n");
}

#[test]
fn orbit_ho_and_dual_golden() {
    let dir = TempDir::new().unwrap();
    run_in(&dir, &["instances", "emit", "s3-collapse"]);
    let out = run_in(
        &dir,
        &["orbit", "ho", "--from", "pt", "--to", "pt", "s3-collapse.json"],
    );
    assert_eq!(
        stdout(&out),
        "ho-hom(pt, pt): 2 classes\n  class 0: reps e\n  class 1: reps (2 3)\n"
    );
    let out = run_in(
        &dir,
        &[
            "orbit",
            "dual",
            "--from",
            "pt",
            "--to",
            "pt",
            "--class",
            "1",
            "s3-collapse.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "class 1: ho-hom(pt, pt) reps (2 3)\ndual: ho-hom(pt, pt) reps (2 3)\n"
    );
    // out-of-range class index is malformed input
    let out = run_in(
        &dir,
        &[
            "orbit",
            "dual",
            "--from",
            "pt",
            "--to",
            "pt",
            "--class",
            "7",
            "s3-collapse.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orbit_theorem_exit_codes() {
    let dir = TempDir::new().unwrap();
    run_in(&dir, &["instances", "emit", "s3-collapse"]);
    let out = run_in(&dir, &["orbit", "theorem", "s3-collapse.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("ho-hom(pt, pt): 2 classes"));
    assert!(stdout(&out).ends_with("result: all checks pass\n"));

    // the lattice instance fails the tubular hypothesis: a red check
    run_in(&dir, &["instances", "emit", "s3-orbit-dual"]);
    let out = run_in(&dir, &["orbit", "theorem", "s3-orbit-dual.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("check duality.tubular: FAIL"));
    assert!(stdout(&out).contains("check duality.lift.well-defined: skipped"));

    // instances without a duality skip the homotopy-level checks but pass
    run_in(&dir, &["instances", "emit", "s3-isotropy"]);
    let out = run_in(&dir, &["orbit", "theorem", "s3-isotropy.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("check ho.equivalence: skipped"));

    // the oracle runs on orbit-of-group instances
    run_in(&dir, &["instances", "emit", "z4-orbit"]);
    let out = run_in(&dir, &["orbit", "theorem", "z4-orbit.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("check oracle.equivariant-maps: pass"));
}

#[test]
fn orbit_validate_rejects_broken_axioms_with_exit_1() {
    let dir = TempDir::new().unwrap();
    run_in(&dir, &["instances", "emit", "z6-two-normals"]);
    let path = dir.path().join("z6-two-normals.json");
    let text = std::fs::read_to_string(&path).unwrap();
    // break antitonicity by relating the two carriers
    let broken = text.replace(
        "\"leq\": [\n      [\n        true,\n        false\n      ],",
        "\"leq\": [\n      [\n        true,\n        true\n      ],",
    );
    assert_ne!(broken, text);
    std::fs::write(&path, broken).unwrap();
    let out = run_in(&dir, &["orbit", "validate", "z6-two-normals.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("check presheaf.antitone: FAIL"));
}

#[test]
fn malformed_files_exit_2() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
    let out = run_in(&dir, &["orbit", "validate", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run_in(&dir, &["orbit", "validate", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown keys are rejected
    run_in(&dir, &["instances", "emit", "trivial"]);
    let path = dir.path().join("trivial.json");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("\"version\": 1", "\"version\": 1,\n  \"bogus\": 3"))
        .unwrap();
    let out = run_in(&dir, &["orbit", "validate", "trivial.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_instance_exits_1() {
    let out = run(&["instances", "check", "no-such-entry"]);
    assert_eq!(out.status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let out = run_in(&dir, &["instances", "emit", "no-such-entry"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hom_on_invalid_instance_exits_1() {
    let dir = TempDir::new().unwrap();
    run_in(&dir, &["instances", "emit", "s3-collapse"]);
    let path = dir.path().join("s3-collapse.json");
    let text = std::fs::read_to_string(&path).unwrap();
    // carrier {e, (1 2 3)} is not closed: axiom failure, not a shape error
    let broken = text.replace(
        "\"presheaf\": [\n    [\n      0,\n      3,\n      4\n    ]\n  ],",
        "\"presheaf\": [\n    [\n      0,\n      3\n    ]\n  ],",
    );
    assert_ne!(broken, text);
    std::fs::write(&path, broken).unwrap();
    let out = run_in(
        &dir,
        &["orbit", "hom", "--from", "pt", "--to", "pt", "s3-collapse.json"],
    );
    assert_eq!(out.status.code(), Some(1));
    // an empty carrier is a shape error instead
    let text = std::fs::read_to_string(&path).unwrap();
    let broken = text.replace(
        "\"presheaf\": [\n    [\n      0,\n      3\n    ]\n  ],",
        "\"presheaf\": [\n    []\n  ],",
    );
    assert_ne!(broken, text);
    std::fs::write(&path, broken).unwrap();
    let out = run_in(&dir, &["orbit", "validate", "s3-collapse.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_object_label_exits_2() {
    let dir = TempDir::new().unwrap();
    run_in(&dir, &["instances", "emit", "s3-orbit"]);
    let out = run_in(
        &dir,
        &["orbit", "hom", "--from", "A5", "--to", "A3", "s3-orbit.json"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn instances_check_all_entries_pass() {
    for entry in paraorbit::instances::catalog() {
        let out = run(&["instances", "check", entry.name]);
        assert_eq!(out.status.code(), Some(0), "{} failed", entry.name);
    }
}

#[test]
fn missing_duality_reported_as_check_failure() {
    let dir = TempDir::new().unwrap();
    run_in(&dir, &["instances", "emit", "s3-orbit"]);
    let out = run_in(
        &dir,
        &["orbit", "ho", "--from", "A3", "--to", "A3", "s3-orbit.json"],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    run_in(&dir, &["instances", "emit", "s3-orbit"]);
    for args in [
        vec!["instances", "list"],
        vec!["orbit", "theorem", "s3-orbit.json"],
        vec!["--format", "structured", "orbit", "theorem", "s3-orbit.json"],
        vec!["para", "enumerate", "--n", "1", "--m", "2", "--window", "1"],
    ] {
        let first = run_in(&dir, &args);
        let second = run_in(&dir, &args);
        assert_eq!(first.stdout, second.stdout, "args {args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn enumerate_lists_every_window() {
    let out = run(&["para", "enumerate", "--n", "1", "--m", "0", "--window", "0"]);
    assert_eq!(stdout(&out), "1 0 : 0 0\n1 0 : 0 1\n");
}
