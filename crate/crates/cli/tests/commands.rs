use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use relage::structures::parse_structure;

fn relage(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relage")).args(args).output().expect("runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EDGE: &str = "signature E/2\nelements 2\nrel E 0 1\n";
const CYCLE: &str = "signature E/2\nelements 3\nrel E 0 1\nrel E 1 2\nrel E 2 0\n";

#[test]
fn embed_prints_the_map() {
    let d = tempfile::tempdir().unwrap();
    let (a, b) = (write(d.path(), "a.rst", EDGE), write(d.path(), "b.rst", CYCLE));
    let o = relage(&["embed", s(&a), s(&b)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "embedding 0 1\n");
    let o = relage(&["embed", s(&b), s(&a)]);
    assert_eq!(code(&o), 1);
}

#[test]
fn parse_errors_exit_two_with_position() {
    let d = tempfile::tempdir().unwrap();
    let bad = write(d.path(), "bad.rst", "signature E/2\nelements 2\nrel E 0 9\n");
    let o = relage(&["embed", s(&bad), s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(code(&relage(&["embed"])), 2);
    assert_eq!(code(&relage(&["frobnicate"])), 2);
}

#[test]
fn rectangle_is_not_on_the_line() {
    let d = tempfile::tempdir().unwrap();
    let rect = write(
        d.path(),
        "rect.dmat",
        "points 4\nd 0 1 1\nd 1 2 2\nd 2 3 1\nd 0 3 2\nd 0 2 3\nd 1 3 3\n",
    );
    let o = relage(&["metric", "embed-line", s(&rect)]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "not embeddable\n");
    let tri = write(d.path(), "tri.dmat", "points 3\nd 0 1 1\nd 1 2 2\nd 0 2 3\n");
    let o = relage(&["metric", "embed-line", s(&tri)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "point 0 0\npoint 1 1\npoint 2 3\n");
}

#[test]
fn metric_encoding_round_trips() {
    let d = tempfile::tempdir().unwrap();
    let text = "points 3\nd 0 1 1/2\nd 0 2 2\nd 1 2 3/2\n";
    let m = write(d.path(), "m.dmat", text);
    let enc = d.path().join("m.rst");
    assert_eq!(code(&relage(&["metric", "encode", s(&m), "--auto", "--out", s(&enc)])), 0);
    parse_structure(&fs::read_to_string(&enc).unwrap()).unwrap();
    let o = relage(&["metric", "decode", s(&enc)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), text);
    let o = relage(&["metric", "omega", s(&m), "--t", "1"]);
    assert_eq!(stdout(&o), "omega 2\nwitness 0 2\n");
}

#[test]
fn ash_demo_certifies_the_bound() {
    let o = relage(&[
        "ash",
        "demo",
        "--flavor",
        "standard",
        "--parts",
        "2",
        "--part-size",
        "2",
        "--cap",
        "1",
        "--bound-limit",
        "4",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("bound 3\n"));
    assert!(out.contains("certificate no member on 4 vertices"));
    assert_eq!(code(&relage(&["ash", "demo", "--flavor", "graph"])), 2);
}

#[test]
fn grow_and_log() {
    let d = tempfile::tempdir().unwrap();
    let (g, log) = (d.path().join("g.rst"), d.path().join("log.txt"));
    let o = relage(&[
        "grow", "--ideal", "linear-orders", "--size", "4", "--check", "3", "--seed", "1", "--out", s(&g), "--log", s(&log),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("complete\nmissing 0 extra 0\n"));
    assert_eq!(parse_structure(&fs::read_to_string(&g).unwrap()).unwrap().size(), 3);
    assert!(!fs::read_to_string(&log).unwrap().is_empty());
    assert_eq!(code(&relage(&["grow", "--ideal", "nope", "--size", "3"])), 2);
}

#[test]
fn check_ideal_reports_both_halves() {
    let o = relage(&["check-ideal", "--ideal", "triangle-free", "--max-size", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("initial-segment ok\nup-directed ok"));
}

#[test]
fn amalgams_of_points() {
    let d = tempfile::tempdir().unwrap();
    let p = write(d.path(), "p.rst", "signature E/2\nelements 1\n");
    let l = write(d.path(), "l.rst", "signature E/2\nelements 1\nrel E 0 0\n");
    let o = relage(&["amalgams", s(&p), s(&p), "--ideal", "triangle-free"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("count 1\n"));
    // the two points side by side, with any of the four cross patterns
    let o = relage(&["amalgams", s(&l), s(&p)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("count 4\n"));
    let o = relage(&["amalgams", s(&l), s(&p), "--ideal", "triangle-free"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn encode3_round_trip() {
    let d = tempfile::tempdir().unwrap();
    let a = write(d.path(), "a.rst", "signature R0/2 R1/2\nelements 2\nrel R0 0 1\nrel R1 1 1\n");
    let t = d.path().join("t.rst");
    assert_eq!(code(&relage(&["encode3", s(&a), "--nat", "4", "--out", s(&t)])), 0);
    let o = relage(&["encode3", "--decode", s(&t)]);
    assert_eq!(code(&o), 0);
    let back = parse_structure(&stdout(&o)).unwrap();
    assert_eq!(back, parse_structure(&fs::read_to_string(&a).unwrap()).unwrap());
    let o = relage(&["encode3", s(&a), "--nat", "2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn resource_limits_exit_three() {
    let o = relage(&["grow", "--ideal", "all", "--relations", "3", "--size", "4", "--check", "3"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}
