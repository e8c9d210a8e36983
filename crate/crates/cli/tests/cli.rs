use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn necklace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_necklace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn build(dir: &Path, name: &str, spec: &str, seed: Option<u64>) -> PathBuf {
    let file = dir.join(name);
    let seed = seed.map(|s| s.to_string());
    let mut args = Vec::new();
    if let Some(s) = &seed {
        args.extend(["--seed", s.as_str()]);
    }
    args.extend(["build", spec, "-o", file.to_str().unwrap()]);
    let out = necklace(&args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    file
}

fn analyze_json(file: &Path) -> Value {
    let out = necklace(&["analyze", file.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn build_writes_expected_shapes() {
    let dir = TempDir::new().unwrap();
    let z6 = build(dir.path(), "z6.json", "Z/6", Some(1));
    let report = analyze_json(&z6);
    assert_eq!(report["summary"]["root"], "path(1)");
    assert_eq!(report["summary"]["shape_counts"]["cycle"], 1);
    let big = build(dir.path(), "big.json", "Z^2 x Z/2 x Z/4", Some(2));
    assert_eq!(analyze_json(&big)["summary"]["root"], "path(4)");
}

#[test]
fn build_to_stdout_logs_to_stderr() {
    let out = necklace(&["--seed", "3", "build", "Z/2"]);
    assert_eq!(out.status.code(), Some(0));
    let seq: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(seq.is_object());
    assert!(String::from_utf8_lossy(&out.stderr).contains("allocator seed 3"));
}

#[test]
fn same_seed_reproduces_build() {
    let dir = TempDir::new().unwrap();
    let a = build(dir.path(), "a.json", "Z x Z/3", Some(11));
    let b = build(dir.path(), "b.json", "Z x Z/3", Some(11));
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn analyze_reports_group_and_genus() {
    let dir = TempDir::new().unwrap();
    let z6 = analyze_json(&build(dir.path(), "z6.json", "Z/6", Some(1)));
    assert_eq!(
        z6["homogeneity"]["group"],
        serde_json::json!({"rank": 0, "factors": [6]})
    );
    assert_eq!(z6["genus"]["counts"], serde_json::json!({}));

    let z = analyze_json(&build(dir.path(), "z.json", "Z", Some(1)));
    assert_eq!(z["homogeneity"]["group"]["rank"], 1);
    assert_eq!(z["genus"]["counts"]["2"], 1);
    assert_eq!(z["genus"]["spectrum"]["1"], "all_remaining");
}

#[test]
fn analyze_text_mentions_group() {
    let dir = TempDir::new().unwrap();
    let f = build(dir.path(), "z.json", "Z", Some(1));
    let out = necklace(&["analyze", f.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains("homogeneity group: Z"), "{text}");
    assert!(text.contains("genus 2 at 1 point"), "{text}");
}

#[test]
fn expect_mismatch_exits_5() {
    let dir = TempDir::new().unwrap();
    let f = build(dir.path(), "z6.json", "Z/6", Some(1));
    let f = f.to_str().unwrap();
    assert_eq!(
        necklace(&["analyze", f, "--expect", "Z/2 x Z/3"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        necklace(&["analyze", f, "--expect", "Z/4"]).status.code(),
        Some(5)
    );
}

#[test]
fn parse_and_spec_errors() {
    let bad = necklace(&["build", "Z x Q"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains('^'));
    assert_eq!(necklace(&["build", "Z^0"]).status.code(), Some(3));
    assert_eq!(necklace(&["build", "Z/1"]).status.code(), Some(3));
}

#[test]
fn malformed_file_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("junk.json");
    std::fs::write(&f, b"{\"root\": 3}").unwrap();
    assert_eq!(
        necklace(&["analyze", f.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn invalid_sequence_exits_4() {
    let dir = TempDir::new().unwrap();
    let f = build(dir.path(), "z2.json", "Z/2", Some(1));
    let mut seq: Value = serde_json::from_slice(&std::fs::read(&f).unwrap()).unwrap();
    seq["universe"].as_array_mut().unwrap().pop();
    std::fs::write(&f, serde_json::to_vec(&seq).unwrap()).unwrap();
    let out = necklace(&["analyze", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not declared"));
}

#[test]
fn check_equiv_verdicts() {
    let dir = TempDir::new().unwrap();
    let a = build(dir.path(), "a.json", "Z/2", Some(1));
    let b = build(dir.path(), "b.json", "Z/3", Some(1));
    let c = build(dir.path(), "c.json", "Z/2", None);
    let d = build(dir.path(), "d.json", "Z/2", None);
    let (a, b, c, d) = (
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        c.to_str().unwrap(),
        d.to_str().unwrap(),
    );

    let same = necklace(&["check-equiv", a, a]);
    assert_eq!(same.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&same.stdout).unwrap();
    assert_eq!(v["equivalent"], true);
    assert!(v["certificate"].is_object());

    let diff = necklace(&["check-equiv", a, b]);
    assert_eq!(diff.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&diff.stdout).unwrap();
    assert_eq!(v["equivalent"], false);
    assert!(
        v["reason"]
            .as_str()
            .unwrap()
            .contains("component counts differ"),
        "{v}"
    );

    assert_eq!(necklace(&["check-equiv", c, d]).status.code(), Some(1));
}

#[test]
fn export_dot_draws_chains() {
    let dir = TempDir::new().unwrap();
    let z6 = build(dir.path(), "z6.json", "Z/6", Some(1));
    let out = stdout(&necklace(&["export", z6.to_str().unwrap(), "--depth", "1"]));
    assert!(out.starts_with("graph necklace {"));
    let tori = out
        .lines()
        .filter(|l| l.trim_start().starts_with('t') && l.contains("[label="))
        .count();
    assert_eq!(tori, 24, "{out}");

    let z = build(dir.path(), "z.json", "Z", Some(1));
    let out = stdout(&necklace(&["export", z.to_str().unwrap()]));
    let tori = out
        .lines()
        .filter(|l| l.trim_start().starts_with('t') && l.contains("[label="))
        .count();
    assert_eq!(tori, 3, "{out}");
    assert!(out.contains("shape=diamond"));
    assert_eq!(out.matches("label=\"...\"").count(), 2);

    let out = stdout(&necklace(&["export", z.to_str().unwrap(), "--depth", "0"]));
    assert_eq!(out.lines().count(), 4, "{out}");
}

#[test]
fn export_json_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = build(dir.path(), "a.json", "Z x Z/2", Some(4));
    let out = necklace(&["export", f.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let written: Value = serde_json::from_slice(&std::fs::read(&f).unwrap()).unwrap();
    let exported: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(written, exported);
}
