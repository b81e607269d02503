use std::io::Write;
use std::process::{Command, Output};

fn evade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evade")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_reports_winner() {
    let o = evade(&["solve", "--h", "k:4", "--property", "cycle", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["winner"], "Bob");
    assert_eq!(v["value"], 6);
    assert_eq!(v["strongly_elusive"], true);
}

#[test]
fn play_json_is_reproducible() {
    let args = ["play", "--h", "komega", "--seeker", "random:7", "--hider", "degree:2", "--fuel", "500", "--json"];
    let a = evade(&args);
    let b = evade(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 501);
    let last: serde_json::Value = serde_json::from_str(lines[500]).unwrap();
    assert_eq!(last["record"], "summary");
    assert_eq!(last["terminal_reason"], "FuelExhausted");
}

#[test]
fn verify_suite_passes() {
    let o = evade(&["verify", "--suite", "cycle-equivalence", "--max-n", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("pass"));
}

#[test]
fn omega_scorpion() {
    let o = evade(&["omega", "--h", "komega", "--seeker", "scorpion", "--hidden", "scorpion:3,4,7", "--json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["verdict"], true);
    assert_eq!(last["ground_truth"], true);
}

#[test]
fn enumerate_keeps_order_and_flags_bad_lines() {
    let path = std::env::temp_dir().join(format!("evade-cli-{}.g6", std::process::id()));
    writeln!(std::fs::File::create(&path).unwrap(), "C~\nzz\nB_").unwrap();
    let o = evade(&["enumerate", "--g6", path.to_str().unwrap(), "--property", "cycle", "--json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    let recs: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.iter().map(|r| r["line"].as_u64().unwrap()).collect::<Vec<_>>(), [1, 2, 3]);
    assert!(recs[1]["error"].is_string());
}

#[test]
fn bad_flags_name_the_grammar() {
    let o = evade(&["play", "--h", "k:4", "--seeker", "lex", "--hider", "nope"]);
    assert!(!o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("--hider") && err.contains("cycle-forest | degree:<n>"), "{err}");
    let o = evade(&["solve", "--h", "komega", "--property", "cycle"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_dot() {
    let o = evade(&["export", "--h", "k:3", "--seeker", "lex", "--hider", "cycle-forest"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("graph G {") && dot.contains("style=dashed"));
}
