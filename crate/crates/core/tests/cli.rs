//! The `artin` binary end to end.

use std::process::Command;

const TRIANGLE: &str = "a b c; a b 3; b c 3; a c 3";

fn artin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_artin")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn classify_cases() {
    assert_eq!(
        artin(&["classify", "--presentation", TRIANGLE, "--format", "text"]),
        (0, "LargeTriangle (a,b,c)\n".into())
    );
    let (code, out) = artin(&["classify", "--presentation", "a b c; a b 2; a c 2; b c 2", "--format", "text"]);
    assert_eq!((code, out.as_str()), (2, "NotCovered\n"));
    let (code, _) = artin(&["classify", "--graph", "/nonexistent/graph.txt"]);
    assert_eq!(code, 1);
}

#[test]
fn graph_file_input() {
    let dir = std::env::temp_dir().join(format!("artin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("free.txt");
    std::fs::write(&path, "s t;\n").unwrap();
    let (code, out) = artin(&["classify", "--graph", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!((code, out.as_str()), (0, "InfiniteLabelPair (s,t)\n"));
    let report = dir.join("report.json");
    let (code, out) = artin(&["classify", "--graph", path.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema"], "artin.classify/1");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_wn_on_triangle() {
    let (code, out) = artin(&["verify", "wn", "--presentation", TRIANGLE, "--bounds", "B=3", "--n", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let d: Vec<u64> = v["terms"].as_array().unwrap().iter().map(|t| t["distance"].as_u64().unwrap()).collect();
    assert_eq!(d, [1, 2, 3]);
}

#[test]
fn verify_qi_on_free_graph() {
    let (code, out) = artin(&["verify", "qi", "--presentation", "s t;", "--bounds", "r=3,s=2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"]["status"], "holds");
    assert!(v["max_ratio"].as_f64().unwrap() > 0.0);
}

#[test]
fn distance_examples() {
    let cases = [("s t;", "s t' s t'", 4), ("a b; a b 3", "a b a", 1), (TRIANGLE, "a b c' a'", 2)];
    for (graph, h, d) in cases {
        let (code, out) = artin(&["distance", "--presentation", graph, "--g", "", "--h", h, "--format", "text"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next().unwrap(), d.to_string(), "{graph}: {h}");
    }
}

#[test]
fn poset_dot_and_json() {
    let (code, dot) = artin(&["poset", "--presentation", TRIANGLE, "--bounds", "r=1,s=1", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.contains("class=\"cone\"") && dot.contains("class=\"rank2\""));
    let (_, json) = artin(&["poset", "--presentation", TRIANGLE, "--bounds", "r=1"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["spherical"].as_array().unwrap().len(), 7);
}

#[test]
fn sequence_for_three_free_triangle() {
    let (code, out) = artin(&["sequence", "--presentation", "a b c; a b 4; b c 4; a c 2", "--format", "text"]);
    assert_eq!((code, out.as_str()), (0, "b a b c\nb' a' b' c'\n"));
    let (code, _) = artin(&["sequence", "--presentation", "s t;"]);
    assert_eq!(code, 1);
}

#[test]
fn bad_bounds_are_input_errors() {
    let (code, _) = artin(&["verify", "criterion1", "--presentation", TRIANGLE, "--bounds", "L=x"]);
    assert_eq!(code, 1);
}
