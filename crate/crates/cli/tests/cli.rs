use std::process::{Command, Output};

fn stylic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stylic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_n2_passes() {
    let out = stylic(&["verify", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("n = 2  |Styl| = 5"), "{text}");
    assert!(!text.contains("FAIL"));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("|Styl| = 5"), "{err}");
}

#[test]
fn verify_json_lists_every_size() {
    let out = stylic(&["verify", "--n", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let sizes: Vec<u64> = reports
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, vec![2, 5]);
}

#[test]
fn quiver_n3_dot() {
    let out = stylic(&["quiver", "--n", "3", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph Q {"));
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    let vertices = dot.lines().filter(|l| l.trim_end().ends_with("\";")).count();
    assert_eq!(vertices, 8);
    assert_eq!(edges.len(), 5);
    assert!(dot.contains("\"ba\" -> \"ca\" [label=\"c\"];"));
    assert!(dot.contains("\"ca\" -> \"cb\" [label=\"b\"];"));
}

#[test]
fn extended_quiver_has_loops() {
    let out = stylic(&["quiver", "--n", "2", "--extended", "--format", "json"]);
    let q: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // a→b plus loops: a at a, b at b, a and b at ba
    assert_eq!(q["edges"].as_array().unwrap().len(), 5);
}

#[test]
fn cartan_n1_csv_is_identity() {
    let out = stylic(&["cartan", "--n", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), ",ε,a\nε,1,0\na,0,1\n");
}

#[test]
fn enumerate_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("styl.json");
    let out = stylic(&["enumerate", "--n", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["size"], 15);
    assert_eq!(json["elements"].as_array().unwrap().len(), 15);
}

#[test]
fn idempotents_json_and_report() {
    let out = stylic(&["idempotents", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let list: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(list.as_array().unwrap().len(), 4);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.matches("PASS").count(), 4);
}

#[test]
fn output_is_deterministic() {
    let a = stylic(&["verify", "--n", "3", "--seed", "7"]);
    let b = stylic(&["verify", "--n", "3", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_configurations_exit_2() {
    for args in [
        &["verify", "--n", "0"][..],
        &["verify", "--n", "7"],
        &["cartan", "--n", "17", "--force"],
        &["quiver", "--n", "2", "--format", "csv"],
        &["enumerate", "--n", "2", "--extended"],
        &["enumerate"],
        &["bogus"],
    ] {
        assert_eq!(stylic(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_thread_count_exits_2() {
    let out = Command::new(env!("CARGO_BIN_EXE_stylic"))
        .args(["enumerate", "--n", "1"])
        .env("STYLIC_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
