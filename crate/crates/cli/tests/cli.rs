use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn daisy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_daisy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn build(dir: &TempDir, name: &str, shape: &str, gens: &[&str]) -> String {
    let out = path(dir, name);
    let mut args = vec!["build", "--shape", shape, "--out", &out];
    for g in gens {
        args.extend(["--gen", g]);
    }
    let o = daisy(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    out
}

#[test]
fn build_reports_counts_and_generators() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "g.json");
    let o = daisy(&["build", "--shape", "2,2,2", "--gen", "1,1,0", "--gen", "0,1,1", "--out", &out]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "6 vertices, 7 edges; generators (0,1,1) (1,1,0)");
    let doc = fs::read_to_string(&out).unwrap();
    assert!(!doc.contains("edges"));
    assert_eq!(doc.matches("\"0,").count() + doc.matches("\"1,").count(), 7);
}

#[test]
fn build_from_root_alone_is_one_vertex() {
    let o = daisy(&["build", "--shape", "3,2", "--gen", "0,0"]);
    assert!(o.status.success());
    assert!(stderr(&o).starts_with("1 vertices, 0 edges"));
    assert!(stdout(&o).contains("\"vertices\": [\n    \"0,0\"\n  ]"));
}

#[test]
fn malformed_tuple_names_the_tuple() {
    let o = daisy(&["build", "--shape", "2,2", "--gen", "1,0,1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.starts_with("error:") && err.contains("1,0,1"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn check_verdicts() {
    let dir = TempDir::new().unwrap();
    let good = build(&dir, "g.json", "2,2,2", &["1,1,0", "0,1,1"]);
    let o = daisy(&["check", &good]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "daisy: yes\nisometric: yes\nminimal host: yes\n");

    let holed = path(&dir, "holed.json");
    fs::write(
        &holed,
        r#"{"schema": 1, "shape": [2, 2], "root": "0,0", "vertices": ["0,0", "0,1", "1,1"]}"#,
    )
    .unwrap();
    let o = daisy(&["check", &holed]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("daisy: no (I((0,0), (1,1)) misses (1,0))"), "{}", stdout(&o));

    let empty = path(&dir, "empty.json");
    fs::write(&empty, r#"{"schema": 1, "shape": [2, 2], "root": "0,0", "vertices": []}"#).unwrap();
    let o = daisy(&["check", &empty]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty"));
}

#[test]
fn parse_errors_point_at_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.json");
    fs::write(&bad, "{\n  \"schema\": 1,\n  \"root\": 0\n}\n").unwrap();
    let o = daisy(&["check", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn classes_of_the_full_3_by_3_grid() {
    let dir = TempDir::new().unwrap();
    let g = build(&dir, "h.json", "3,3", &["1,1", "1,2", "2,1", "2,2"]);
    let o = daisy(&["classes", &g]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "2 classes\n\
         class 1: coordinate 2, 9 edges, anchored at (0,0)-(0,1)\n\
         class 2: coordinate 1, 9 edges, anchored at (0,0)-(1,0)\n"
    );
}

#[test]
fn decompose_then_replay_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let g = build(&dir, "p3.json", "2,2", &["1,0", "0,1"]);
    let script = path(&dir, "script.json");
    let o = daisy(&["decompose", &g, "--out", &script]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "2 steps");
    let replayed = path(&dir, "replayed.json");
    let o = daisy(&["expand", "--script", &script, "--out", &replayed]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read(&g).unwrap(), fs::read(&replayed).unwrap());
}

#[test]
fn expand_and_contract_are_inverse() {
    let dir = TempDir::new().unwrap();
    let g = build(&dir, "p3.json", "2,2", &["1,0", "0,1"]);
    let bigger = path(&dir, "bigger.json");
    let o = daisy(&["expand", &g, "--cover", "all", "--cover", "0,0;1,0", "--coord", "3", "--out", &bigger]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "5 vertices in host (2,2,2)");
    assert_eq!(daisy(&["check", &bigger]).status.code(), Some(0));

    let back = path(&dir, "back.json");
    let o = daisy(&["contract", &bigger, "--coord", "3", "--out", &back]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "X_0: (0,0) (0,1) (1,0)\nX_1: (0,0) (1,0)\n");
    let text = fs::read_to_string(&back).unwrap();
    assert!(text.contains("\"0,1\"") && !text.contains("\"1,1\""));
}

#[test]
fn expansion_rejects_a_non_daisy_cover() {
    let dir = TempDir::new().unwrap();
    let g = build(&dir, "p3.json", "2,2", &["1,0", "0,1"]);
    let o = daisy(&["expand", &g, "--cover", "all", "--cover", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a daisy graph"), "{}", stderr(&o));
}

#[test]
fn generic_documents() {
    let dir = TempDir::new().unwrap();
    let c4 = path(&dir, "c4.json");
    fs::write(
        &c4,
        r#"{"schema": 1, "root": "a", "vertices": ["a", "b", "c", "d"],
            "edges": [["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]]}"#,
    )
    .unwrap();
    let o = daisy(&["check", &c4]);
    assert_eq!(stdout(&o), "connected: yes\nrooted triangle condition: yes\n");
    let o = daisy(&["classes", &c4, "--format", "json"]);
    let classes: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(classes.as_array().unwrap().len(), 2);
    let o = daisy(&["contract", &c4, "--coord", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("\"edges\""));
}

#[test]
fn export_is_graphviz() {
    let dir = TempDir::new().unwrap();
    let g = build(&dir, "g.json", "3,2", &["2,1"]);
    let o = daisy(&["export", &g]);
    let dot = stdout(&o);
    assert!(dot.starts_with("graph daisy {"));
    assert!(dot.contains("label=\"(2,1)\""));
    assert_eq!(dot.matches("subgraph class_").count(), 2);
}

#[test]
fn emitted_documents_reparse_identically() {
    let dir = TempDir::new().unwrap();
    let g = build(&dir, "g.json", "3,3", &["2,1", "1,2"]);
    let o = daisy(&["export", &g, "--format", "json"]);
    assert_eq!(stdout(&o).as_bytes(), fs::read(Path::new(&g)).unwrap());
}

#[test]
fn verify_quick_passes_and_echoes_its_configuration() {
    let o = daisy(&["verify", "--suite", "quick", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("# daisy verify suite=quick seed=7 samples=20 budget=12\n"));
    assert!(text.contains(" 0 fail"));
    let again = daisy(&["verify", "--suite", "quick", "--seed", "7", "--sequential"]);
    assert_eq!(stdout(&again), text);
}

#[test]
#[ignore = "runs the full suite, several minutes"]
fn verify_full_passes() {
    let o = daisy(&["verify", "--suite", "full", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["config"]["budget"], 27);
}
