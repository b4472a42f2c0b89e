//! End-to-end checks of the installed binary: exit-status contract, output
//! formats, and the counterexample round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ollivier"))
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ollivier-cli-{name}-{}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn curvature_csv_on_a_triangle() {
    let path = temp("k3", "a b\nb c\nc a\n");
    let out = bin()
        .args(["curvature", "--format", "csv", "--method", "full-lp"])
        .arg(&path)
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "edge_u,edge_v,W,kappa,method,W_plus,W_zero,W_minus"
    );
    for line in lines {
        assert!(line.contains(",1/2,full-lp,"), "{line}");
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    // 2: unreadable input
    let out = bin()
        .args(["curvature", "/definitely/not/a/file"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // 3: edge filter matched nothing
    let path = temp("path", "a b\nb c\n");
    let out = bin()
        .args(["curvature", "--edge", "a,c"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // 0: clean run with a matching filter
    let out = bin()
        .args(["curvature", "--edge", "a,b"])
        .arg(&path)
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1);
}

#[test]
fn compare_exits_zero_on_agreement() {
    let path = temp("compare", "a b\nb c\nc d\nd a\n");
    let out = bin().args(["compare"]).arg(&path).output().unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().all(|l| l.contains("\"agree\":true")));
}

#[test]
fn partition_json_lists_the_classes() {
    let path = temp("part", "u v\nu a\na b\nb v\n");
    let out = bin()
        .args(["partition", "--edge", "u,v"])
        .arg(&path)
        .output()
        .unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"square_u\":[\"a\"]"), "{text}");
    assert!(text.contains("\"square_v\":[\"b\"]"), "{text}");
    assert!(text.contains("\"refined\""));
}

#[test]
fn counterexample_emit_graph_round_trips() {
    let emitted = std::env::temp_dir().join(format!("ollivier-cli-ce-{}.edges", std::process::id()));
    let out = bin()
        .args([
            "counterexample",
            "--family",
            "bipartite",
            "--param",
            "5",
            "--emit-graph",
        ])
        .arg(&emitted)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"refuted\":true"));

    // re-ingest and recompute: the distinguished edge keeps its curvature
    let out = bin()
        .args(["curvature", "--edge", "u0,v0", "--method", "full-lp"])
        .arg(&emitted)
        .output()
        .unwrap();
    std::fs::remove_file(&emitted).ok();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"W\":\"23/21\""));
}
