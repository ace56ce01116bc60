use std::path::PathBuf;
use std::process::{Command, Output};

fn semef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semef")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("semef-{}-{name}", std::process::id()));
    std::fs::write(&path, text).expect("temp file");
    path
}

#[test]
fn eval_prints_values() {
    let o = semef(&["eval", "gallery:nat-intro:A", "E x. R(x)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "4");
    let o = semef(&["eval", "gallery:minmax-intro:A", "A x. R(x)"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = semef(&["eval", "gallery:minmax-intro:A", "x = x", "--assign", "x=a1"]);
    assert_eq!(stdout(&o).trim(), "4", "true equality is the top element");
}

#[test]
fn eval_rejects_bad_formula() {
    let o = semef(&["eval", "gallery:nat-intro:A", "E x. R(x"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn game_winners() {
    let o = semef(&["game", "ef", "gallery:pi-st:A", "gallery:pi-st:B", "--moves", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Spoiler"));
    let o = semef(&["game", "bijection", "gallery:nat-intro:A", "gallery:nat-intro:B", "--moves", "1"]);
    assert!(stdout(&o).starts_with("winner: Spoiler"));
    let o = semef(&["game", "ef", "gallery:nat-intro:A", "gallery:nat-intro:B", "--moves", "1"]);
    assert!(stdout(&o).starts_with("winner: Duplicator"));
    let o = semef(&[
        "game",
        "hom",
        "gallery:sigma4-majority:A",
        "gallery:sigma4-majority:B",
        "--moves",
        "2",
        "--homset",
        "prime",
    ]);
    assert!(stdout(&o).starts_with("winner: Duplicator"));
}

#[test]
fn setsize_only_for_counting() {
    let o = semef(&["game", "ef", "gallery:nat-intro:A", "gallery:nat-intro:B", "--moves", "1", "--setsize", "2"]);
    assert_eq!(code(&o), 2);
    let o = semef(&["game", "counting", "gallery:wxy-counting:A", "gallery:wxy-counting:B", "--moves", "1", "--setsize", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("winner: Spoiler"));
}

#[test]
fn homset_lists_prime_ideals() {
    let o = semef(&["homset", "minmax:3", "--kind", "prime"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("h_{0,1}"));
    assert!(out.contains("separating: yes"));
    assert_eq!(out.lines().filter(|l| l.contains("h_{")).count(), 3);
}

#[test]
fn validate_semiring_accepts_and_rejects() {
    let o = semef(&["validate-semiring", "minmax:3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("lattice: true"));
    let bad = temp_file("bad.sr", "carrier a b\nzero a\none b\nadd\na b\na a\nmul\na a\na b\n");
    let o = semef(&["validate-semiring", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn char_prints_formulas() {
    let o = semef(&["char", "gallery:nat-intro:A", "--kind", "nat", "--moves", "0"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).trim().is_empty());
    let o = semef(&["char", "gallery:appendix-m1:A", "--kind", "boolean", "--moves", "1"]);
    assert_eq!(code(&o), 0);
    let o = semef(&["char", "gallery:nat-intro:A", "--kind", "boolean", "--moves", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn equiv_verdicts() {
    let o = semef(&["equiv", "gallery:tropical-pair:A", "gallery:tropical-pair:B", "--moves", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pair-criterion"));
    let o = semef(&["equiv", "gallery:nat-intro:A", "gallery:nat-intro:B", "--moves", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("separated"));
    let o = semef(&["equiv", "gallery:minmax-intro:A", "gallery:minmax-intro:B", "--moves", "1", "--method", "search"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn repro_reports_seed_and_checks() {
    let o = semef(&["repro", "all"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("seed: 0xef01"));
    assert!(out.lines().any(|l| l.starts_with("PASS nat-intro/")));
    assert!(!out.lines().any(|l| l.starts_with("FAIL")));
    assert_eq!(stdout(&semef(&["repro", "all"])), out);
    let o = semef(&["repro", "no-such-entry"]);
    assert_eq!(code(&o), 2);
}
