use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn twodist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twodist")).args(args).output().expect("spawn")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twodist-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_color_verify() {
    let g = scratch("g.graph");
    let c = scratch("g.col");
    assert_eq!(twodist(&["gen", "--n", "50", "--min-delta", "6", "--seed", "4", "-o", s(&g)]).status.code(), Some(0));
    assert_eq!(twodist(&["color", s(&g), "-o", s(&c)]).status.code(), Some(0));
    let out = twodist(&["verify", s(&g), s(&c)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("valid"));

    let n = fs::read_to_string(&g).unwrap().lines().filter(|l| l.starts_with("r ")).count();
    let mono: String = (1..=n).map(|v| format!("{v} 1\n")).collect();
    fs::write(&c, mono).unwrap();
    let out = twodist(&["verify", s(&g), s(&c)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("share color 1"));
}

#[test]
fn audit_reduce_oracle() {
    let g = scratch("a.graph");
    assert!(twodist(&["gen", "--n", "30", "--seed", "9", "--flips", "300", "-o", s(&g)]).status.success());
    let out = twodist(&["audit", s(&g)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("kind\tid\tinitial\tfinal\n"));

    let out = twodist(&["reduce", s(&g), "--steps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("step 1: L2."));
    assert!(stdout.contains("properness ok"));

    let w = scratch("a.witness");
    let small = scratch("small.graph");
    assert!(twodist(&["gen", "--n", "12", "--seed", "1", "-o", s(&small)]).status.success());
    let out = twodist(&["oracle", s(&small), "-o", s(&w)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("exact\ttrue"));
    assert_eq!(twodist(&["verify", s(&small), s(&w)]).status.code(), Some(0));
}

#[test]
fn hunt_is_clean() {
    let out = twodist(&["hunt", "--trials", "3", "--n", "40", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("gaps\t0"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(twodist(&["audit", "/nonexistent/file"]).status.code(), Some(2));
    let bad = scratch("bad.graph");
    fs::write(&bad, "p 2 1\nr 1 1 2\n").unwrap();
    assert_eq!(twodist(&["color", s(&bad)]).status.code(), Some(2));
    assert_eq!(twodist(&["gen", "--n", "2"]).status.code(), Some(2));
    assert_eq!(twodist(&["bogus"]).status.code(), Some(2));
}
