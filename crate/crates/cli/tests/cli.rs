use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hdx(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdx")).args(args).current_dir(dir).env_remove("HDX_BUDGET").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn faces(text: &str) -> usize {
    text.lines().skip(1).count()
}

#[test]
fn generate_complexes() {
    let dir = tempfile::tempdir().unwrap();
    let out = hdx(dir.path(), &["generate", "complete", "--n", "6", "--d", "2"]);
    assert!(out.status.success());
    assert_eq!(faces(&stdout(&out)), 20);
    assert_eq!(faces(&stdout(&hdx(dir.path(), &["generate", "torus"]))), 14);
    assert_eq!(stdout(&hdx(dir.path(), &["generate", "complete", "--n", "3", "--d", "2"])), "dim 2\n0 1 2\n");
    let glued = stdout(&hdx(dir.path(), &["generate", "glued-simplices", "--d", "3", "--count", "2"]));
    assert_eq!(glued, "dim 3\n0 1 2 3\n0 1 2 4\n");
    assert_eq!(hdx(dir.path(), &["generate", "complete", "--n", "2", "--d", "2"]).status.code(), Some(2));
}

#[test]
fn generate_file_canonicalizes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("x.txt"), "# two triangles\ndim 2\n2 1 0 w 1\n3 1 0 w 3\n").unwrap();
    let out = hdx(dir.path(), &["generate", "file", "x.txt", "--out", "y.txt"]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("y.txt")).unwrap(), "dim 2\n0 1 2 w 1/4\n0 1 3 w 3/4\n");
}

#[test]
fn analyze_reports_link_spectra_and_constants() {
    let dir = tempfile::tempdir().unwrap();
    hdx(dir.path(), &["generate", "complete", "--n", "5", "--d", "2", "--out", "k5.txt"]);
    let report = json(&hdx(dir.path(), &["analyze", "k5.txt", "--format", "json"]));
    let vertex_links: Vec<f64> = report["spectral"]["links"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|l| l["face"].as_array().unwrap().len() == 1)
        .map(|l| l["lambda"].as_f64().unwrap())
        .collect();
    assert_eq!(vertex_links.len(), 5);
    assert!(vertex_links.iter().all(|l| (l - 1.0 / 3.0).abs() < 1e-9));
    assert_eq!(report["degree_bound"], 6);

    let trivial = json(&hdx(dir.path(), &["analyze", "k5.txt", "--group", "trivial", "--format", "json"]));
    assert!(trivial["coboundary"].as_array().unwrap().iter().all(|c| c["value"].is_null()));
}

#[test]
fn analyze_torus_systole() {
    let dir = tempfile::tempdir().unwrap();
    hdx(dir.path(), &["generate", "torus", "--out", "t.txt"]);
    let report = json(&hdx(dir.path(), &["analyze", "t.txt", "--format", "json"]));
    assert_eq!(report["cosystolic"]["mu"], "2/7");
}

#[test]
fn budget_overruns_are_marked_skipped() {
    let dir = tempfile::tempdir().unwrap();
    hdx(dir.path(), &["generate", "torus", "--out", "t.txt"]);
    let out = Command::new(env!("CARGO_BIN_EXE_hdx"))
        .args(["analyze", "t.txt", "--format", "json"])
        .current_dir(dir.path())
        .env("HDX_BUDGET", "100")
        .output()
        .unwrap();
    let report = json(&out);
    assert!(report["cosystolic"]["skipped"].is_string());
}

#[test]
fn delta1_of_a_star() {
    let dir = tempfile::tempdir().unwrap();
    hdx(dir.path(), &["generate", "complete", "--n", "4", "--d", "2", "--out", "k4.txt"]);
    fs::write(dir.path().join("star.cochain"), "dim 1 group Z2\n0 1 1\n0 2 1\n0 3 1\n").unwrap();
    let report = json(&hdx(dir.path(), &["delta1", "k4.txt", "star.cochain", "--eta", "1/3", "--format", "json"]));
    assert_eq!(report["delta1"], "0");
    assert_eq!(report["weight"], "1/2");
    assert_eq!(report["non_local"]["mutual"], "1/4");
    assert_eq!(hdx(dir.path(), &["delta1", "k4.txt", "star.cochain", "--eta", "2"]).status.code(), Some(2));
}

#[test]
fn correcting_a_cocycle_takes_no_steps() {
    let dir = tempfile::tempdir().unwrap();
    hdx(dir.path(), &["generate", "complete", "--n", "5", "--d", "3", "--out", "x.txt"]);
    fs::write(dir.path().join("zero.cochain"), "dim 1 group Z3\n").unwrap();
    let out = hdx(dir.path(), &["correct", "x.txt", "zero.cochain", "--format", "json", "--out", "run"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["steps"], 0);
    assert_eq!(fs::read_to_string(dir.path().join("run/trace.jsonl")).unwrap(), "");
    assert_eq!(fs::read_to_string(dir.path().join("run/corrected.cochain")).unwrap(), "dim 1 group Z3\n");
}

#[test]
fn correcting_planted_noise_decreases_the_coboundary() {
    let dir = tempfile::tempdir().unwrap();
    hdx(dir.path(), &["generate", "complete", "--n", "6", "--d", "3", "--out", "x.txt"]);
    // Two edges at vertex 0 carry noise.
    fs::write(dir.path().join("f.cochain"), "dim 1 group S3\n0 1 1\n0 2 3\n").unwrap();
    let out = hdx(dir.path(), &["correct", "x.txt", "f.cochain", "--out", "run"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let verdict: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("run/verdict.json")).unwrap()).unwrap();
    assert_eq!(verdict["path"], "non_abelian");
    assert_eq!(verdict["bounds_hold"], true);
    let trace = fs::read_to_string(dir.path().join("run/trace.jsonl")).unwrap();
    let steps: Vec<Value> = trace.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(steps.len(), verdict["steps"].as_u64().unwrap() as usize);
    assert!(!steps.is_empty());
}

#[test]
fn nonabelian_correction_needs_a_three_complex() {
    let dir = tempfile::tempdir().unwrap();
    hdx(dir.path(), &["generate", "complete", "--n", "5", "--d", "2", "--out", "x.txt"]);
    fs::write(dir.path().join("f.cochain"), "dim 1 group S3\n0 1 1\n").unwrap();
    let out = hdx(dir.path(), &["correct", "x.txt", "f.cochain"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension"));
}

#[test]
fn empty_suite_selection_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = hdx(dir.path(), &["verify", "none"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("result: PASS (0 claims, 0 falsified)"));
}

#[test]
fn quick_verify_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let a = hdx(dir.path(), &["verify", "hierarchy,cosystolic", "--quick", "--seed", "5", "--format", "json"]);
    let b = hdx(dir.path(), &["verify", "hierarchy,cosystolic", "--quick", "--seed", "5", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 5);
}

#[test]
fn bundles_replay_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("b");
    fs::create_dir(&b).unwrap();
    fs::write(b.join("complex.txt"), "dim 2\n0 1 2\n0 1 3\n").unwrap();
    fs::write(b.join("a.cochain"), "dim 1 group Z2\n0 1 1\n").unwrap();
    fs::write(b.join("claim.json"), r#"{"suite": "delta1", "claim": "delta-partition", "params": {}, "cochains": ["a"]}"#)
        .unwrap();
    let out = hdx(dir.path(), &["verify", "--bundle", "b"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("PASS delta-partition"));

    // A bundle naming a cochain the claim does not read fails on replay.
    fs::write(b.join("claim.json"), r#"{"suite": "delta1", "claim": "star-example", "params": {}, "cochains": ["a"]}"#)
        .unwrap();
    assert_eq!(hdx(dir.path(), &["verify", "--bundle", "b"]).status.code(), Some(1));
}
