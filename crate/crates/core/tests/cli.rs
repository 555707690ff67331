use std::fs;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_sierpinski-roman");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_writes_canonical_edge_list() {
    let out = run(&["gen", "--family", "path", "--n", "3", "--depth", "2"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "9 8\n0 1\n1 2\n1 3\n3 4\n4 5\n5 7\n6 7\n7 8\n"
    );
}

#[test]
fn gen_then_solve_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("s.el");
    let graph = graph.to_str().unwrap();
    let out = run(&[
        "gen", "--family", "cycle", "--n", "4", "--depth", "2", "--out", graph,
    ]);
    assert!(out.status.success());
    let out = run(&["solve", graph, "--json"]);
    assert!(out.status.success());
    let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["value"], 8);
    assert_eq!(cert["kind"], "roman");

    let out = run(&["solve", graph, "--domination"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("gamma = 4"), "{}", stdout(&out));
}

#[test]
fn solve_builds_the_sierpinski_graph_itself() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("k3.el");
    fs::write(&base, "3 3\n0 1\n0 2\n1 2\n").unwrap();
    let out = run(&[
        "solve",
        "--sierpinski",
        base.to_str().unwrap(),
        "--depth",
        "2",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("gamma_R = 5"), "{}", stdout(&out));
}

#[test]
fn input_errors_exit_with_two() {
    let out = run(&["gen", "--family", "path", "--n", "1", "--depth", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.el");
    fs::write(&bad, "3 2\n0 1\n").unwrap();
    assert_eq!(
        run(&["solve", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["solve", "/nonexistent/graph.el"]).status.code(),
        Some(2)
    );
}

#[test]
fn timeouts_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("c7.el");
    let out = run(&[
        "gen",
        "--family",
        "cycle",
        "--n",
        "7",
        "--out",
        base.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "solve",
        "--sierpinski",
        base.to_str().unwrap(),
        "--depth",
        "3",
        "--timeout",
        "0.001",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn construct_reports_exact_families() {
    let out = run(&["construct", "--family", "path", "--n", "5", "--t", "2"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["actual_weight"], 17);
    assert_eq!(report["valid"], true);

    let out = run(&["construct", "--family", "complete", "--n", "3", "--t", "3"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["actual_weight"], 14);
}

#[test]
fn formula_prints_json() {
    let out = run(&["formula", "--family", "path", "--n", "5", "--t", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"]["gamma_r"]["exact"], 17);
}

#[test]
fn verify_passes_on_small_paths() {
    let dir = tempfile::tempdir().unwrap();
    let rows = dir.path().join("rows.jsonl");
    let out = run(&[
        "verify",
        "--scope",
        "paths",
        "--n-max",
        "5",
        "--out",
        rows.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = fs::read_to_string(rows).unwrap();
    assert_eq!(text.lines().count(), 3);
    for line in text.lines() {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(row["status"], "pass");
    }
}

#[test]
fn sweep_is_reproducible_from_its_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = |name: &str| {
        let path = dir.path().join(name);
        let out = run(&[
            "sweep",
            "--count",
            "12",
            "--n-max",
            "5",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stdout(&out));
        fs::read(path).unwrap()
    };
    let first = args("a.jsonl");
    let second = args("b.jsonl");
    assert!(!first.is_empty());
    assert_eq!(first, second);
    let header: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&first).lines().next().unwrap()).unwrap();
    assert_eq!(header["seed"], 42);
}
