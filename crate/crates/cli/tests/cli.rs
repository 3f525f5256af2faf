use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn tdcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdcat")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = tdcat(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name} in {report}"))
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn chain_is_ccd() {
    let r = json(&["analyze-poset", &data("chain3.poset")]);
    assert_eq!(r["passed"], true);
    assert_eq!(r["command"], "analyze-poset");
    assert!(check(&r, "ccd")["detail"].as_str().unwrap().contains("true"));
}

#[test]
fn diamond_is_not_ccd_but_exits_zero() {
    let out = tdcat(&["analyze-poset", &data("m3.poset")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("ccd = false"), "{text}");
}

#[test]
fn simplex_ideals_form_a_chain() {
    let r = json(&["enumerate-ideals", "--builtin", "simplex", "--n", "2"]);
    assert_eq!(r["passed"], true);
    let detail = r["checks"][0]["detail"].as_str().unwrap();
    assert!(detail.contains("4 ideals") || detail.contains("4 idempotent"), "{detail}");
    assert!(detail.ends_with("chain"), "{detail}");
}

#[test]
fn dot_output_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("ideals.dot");
    let out = tdcat(&[
        "--format",
        "dot",
        "enumerate-ideals",
        &data("walking-arrow.cat"),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("digraph"));
    assert_eq!(std::fs::read_to_string(dot).unwrap(), stdout);
}

#[test]
fn td_witness_on_builtins() {
    for file in ["walking-arrow.cat", "simplex1.cat", "chain3.cat"] {
        let r = json(&["td-witness", &data(file)]);
        assert_eq!(r["passed"], true, "{file}");
    }
}

#[test]
fn td_witness_with_custom_samples() {
    let dir = tempfile::tempdir().unwrap();
    let samples = write(
        &dir,
        "s.txt",
        "presheaf two\nat 0 = {x, y}\nat 1 = {z}\nmap 0<=1 : z -> x\n",
    );
    let r = json(&["td-witness", &data("walking-arrow.cat"), "--samples", samples.to_str().unwrap()]);
    assert_eq!(r["passed"], true);
}

#[test]
fn wavy_and_sweeps() {
    assert_eq!(json(&["wavy", &data("chain3.poset")])["passed"], true);
    assert_eq!(json(&["transfer", "--count", "50", "--max-size", "4"])["passed"], true);
    assert_eq!(json(&["generator-restrict", &data("n5.poset")])["passed"], true);
}

#[test]
fn single_transfer() {
    let c = data("chain3.poset");
    let r = json(&["transfer", "--d", &c, "--e", &c, "--q", "0,1,2", "--r", "0,1,2", "--s", "0,1,2"]);
    assert_eq!(r["passed"], true);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let run = || {
        let mut r = json(&["--seed", "11", "transfer", "--count", "40", "--max-size", "4"]);
        r["elapsed_ms"] = Value::Null;
        r
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["seed"], 11);
    assert_eq!(a["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn builtin_round_trips_through_files() {
    let out = tdcat(&["builtin", "simplex", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "s1.cat", std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(json(&["td-witness", p.to_str().unwrap()])["passed"], true);
}

#[test]
fn malformed_inputs_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad_poset = write(&dir, "bad.poset", "element a\nle a\n");
    let out = tdcat(&["analyze-poset", bad_poset.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let cyclic = write(&dir, "cyc.poset", "element a\nelement b\nle a b\nle b a\n");
    assert_eq!(tdcat(&["analyze-poset", cyclic.to_str().unwrap()]).status.code(), Some(3));

    let no_table = write(
        &dir,
        "bad.cat",
        "object a\nobject b\nobject c\narrow f : a -> b\narrow g : b -> c\n",
    );
    assert_eq!(tdcat(&["td-witness", no_table.to_str().unwrap()]).status.code(), Some(3));

    let missing = dir.path().join("missing.poset");
    assert_eq!(tdcat(&["analyze-poset", missing.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(tdcat(&["--format", "dot", "analyze-poset", &data("m3.poset")]).status.code(), Some(3));
    assert_eq!(tdcat(&["generator-restrict", &data("m3.poset"), "--generators", "a,b"]).status.code(), Some(3));
    let c = data("chain3.poset");
    let out = tdcat(&["transfer", "--d", &c, "--e", &c, "--q", "0,0,2", "--r", "0,1,2", "--s", "0,1,2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn guard_limits_exit_three() {
    let out = tdcat(&["--guard-objects", "2", "analyze-poset", &data("chain3.poset")]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
}
