// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn tristream(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tristream"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn exact_on_k3() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.txt", "# triangle\n0 1\n1 2\n\n0\t2\n");
    let out = tristream(&["exact", &k3]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "n=3 m=3 W=3 T=1 kappa=1.000000");
}

#[test]
fn exact_on_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.txt", "");
    let out = tristream(&["exact", &empty]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "n=0 m=0 W=0 T=0 kappa=0.000000");
}

#[test]
fn malformed_line_exits_2_naming_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "0 1\n1 2\n2 3 4\n");
    let out = tristream(&["exact", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn missing_file_exits_3() {
    let out = tristream(&["exact", "/definitely/not/here.txt"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn estimate_is_deterministic_and_prints_banner() {
    let a = tristream(&["estimate", "--graph", "er", "--se", "500", "--sw", "500", "--seed", "4"]);
    let b = tristream(&["estimate", "--graph", "er", "--se", "500", "--sw", "500", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    assert!(text.starts_with("# tristream estimate seed=4 s_e=500 s_w=500"));
    assert!(text.contains("kappa_est=") && text.contains("warmup="));
}

#[test]
fn estimate_rejects_tiny_edge_reservoir() {
    let out = tristream(&["estimate", "--graph", "k3", "--se", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn estimate_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tristream"))
        .args(["estimate", "-", "--se", "10", "--sw", "10"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0 1\n1 2\n0 2\n0 1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("t=3 "));
}

#[test]
fn track_writes_one_row_per_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let edges: String = (0..10).map(|i| format!("{i} {}\n", i + 1)).collect();
    let input = write(dir.path(), "path.txt", &edges);
    for (every, rows) in [("5", 2), ("1", 10)] {
        let csv = dir.path().join(format!("track{every}.csv"));
        let out = tristream(&["track", &input, "--every", every, "--se", "4", "--sw", "4", "--output", csv.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let text = fs::read_to_string(&csv).unwrap();
        assert_eq!(text.lines().count(), rows + 1);
        assert!(text.starts_with("t,kappa_est,"));
    }
}

#[test]
fn track_to_unwritable_path_exits_3() {
    let out = tristream(&["track", "--graph", "k4", "--every", "1", "--output", "/definitely/not/here/out.csv"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn order_is_deterministic_and_degree_desc_groups_the_hub() {
    let a = tristream(&["order", "--graph", "er", "--ordering", "random", "--seed", "7"]);
    let b = tristream(&["order", "--graph", "er", "--ordering", "random", "--seed", "7"]);
    assert_eq!(stdout(&a), stdout(&b));

    let star = tristream(&["order", "--graph", "star", "--ordering", "deg-desc"]);
    let lines: Vec<String> = stdout(&star).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|l| l.starts_with("0 ")));
}

#[test]
fn order_writes_a_readable_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("bfs.txt");
    let out = tristream(&["order", "--graph", "k4", "--ordering", "bfs", "--output", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let exact = tristream(&["exact", out_path.to_str().unwrap()]);
    assert_eq!(stdout(&exact).trim(), "n=4 m=6 W=12 T=4 kappa=1.000000");
}

#[test]
fn birthday_experiment_reports_analytic_mean() {
    let dir = tempfile::tempdir().unwrap();
    let out = tristream(&["experiment", "birthday", "--graph", "k3", "--trials", "2000", "--output", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("analytic=0.6667"));
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 1);
    assert!(files[0].to_str().unwrap().starts_with("birthday_k3_"));
}

#[test]
fn orderings_experiment_has_five_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = tristream(&[
        "experiment", "orderings", "--graph", "er", "--se", "300", "--sw", "300", "--trials", "2", "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(file).unwrap();
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(names, ["random", "bfs", "dfs", "deg-asc", "deg-desc"]);
}

#[test]
fn unknown_experiment_exits_2_listing_names() {
    let out = tristream(&["experiment", "nope", "--graph", "k3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("convergence") && err.contains("birthday"));
}

#[test]
fn other_experiments_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for args in [
        vec!["experiment", "convergence", "--graph", "er", "--sizes", "20,200", "--trials", "2"],
        vec!["experiment", "sweep", "--graph", "er", "--fixed-value", "200", "--values", "1,50,200"],
        vec!["experiment", "singlebit", "--graph", "er", "--budget", "400", "--sb-slots", "100,200"],
        vec!["experiment", "tracking", "--graph", "er", "--se", "100", "--sw", "100", "--exact"],
    ] {
        let mut full = args.clone();
        full.extend(["--output", d]);
        let out = tristream(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("wrote "));
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 4);
}
