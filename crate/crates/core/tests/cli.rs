use std::io::Write;
use std::process::{Command, Output, Stdio};

use dbwalk::cli::run;
use serde_json::Value;

fn dbwalk(args: &[&str], stdin: &str) -> (i32, String, String) {
    let argv: Vec<&str> = std::iter::once("dbwalk")
        .chain(args.iter().copied())
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = dbwalk(args, "");
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn binary(args: &[&str], envs: &[(&str, &str)], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dbwalk"))
        .args(args)
        .env_remove("WATCHMAN_MAX_SEQ")
        .env_remove("WATCHMAN_MAX_VERTICES")
        .envs(envs.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(
        ok(&["walk", "-a", "2", "-k", "3", "--seq", "1001"]),
        "100,001,011,110\n"
    );
    assert_eq!(
        ok(&["classify", "--seq", "0001", "-a", "2", "-k", "3"]),
        "ProvablyNotWatchman (ConstantRun)\n"
    );
    let solved: Value = serde_json::from_str(&ok(&[
        "solve",
        "--from-seq",
        "01210123",
        "-a",
        "4",
        "-k",
        "3",
        "--count",
    ]))
    .unwrap();
    assert_eq!(solved["optimum"], 8);
    assert_eq!(solved["min_walk_count"], 2);
    assert_eq!(solved["min_walks"].as_array().unwrap().len(), 2);
    assert_eq!(solved["witness"].as_array().unwrap().len(), 8);
}

#[test]
fn gen_algorithms() {
    assert_eq!(ok(&["gen", "-a", "2", "-k", "3"]), "00010111\n");
    assert_eq!(
        ok(&["gen", "-a", "2", "-k", "2", "--algo", "greedy"]),
        "1100\n"
    );
    let euler = ok(&["gen", "-a", "3", "-k", "2", "--algo", "euler"]);
    let seq = dbwalk::parse_sequence(euler.trim(), 3).unwrap();
    assert!(seq.is_de_bruijn_sequence(2));
}

#[test]
fn graph_json_and_dot() {
    let g: Value = serde_json::from_str(&ok(&["graph", "-a", "2", "-k", "2"])).unwrap();
    assert_eq!(g["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(g["arcs"].as_array().unwrap().len(), 8);
    assert_eq!(g["provenance"]["kind"], "full");

    let dot = ok(&[
        "graph",
        "--from-seq",
        "01210123",
        "-a",
        "4",
        "-k",
        "3",
        "--dot",
        "--highlight-induced",
    ]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("style=bold").count(), 8);
    let g: Value =
        serde_json::from_str(&ok(&["graph", "--from-seq", "01210123", "-k", "3"])).unwrap();
    assert_eq!(
        dot.matches("->").count(),
        g["arcs"].as_array().unwrap().len()
    );
}

#[test]
fn json_round_trip_through_stdin_matches_direct_solve() {
    let strip = |text: &str| {
        let mut v: Value = serde_json::from_str(text).unwrap();
        v.as_object_mut().unwrap().remove("explored_states");
        v
    };
    for args in [
        vec!["-a", "2", "-k", "3"],
        vec!["--from-seq", "01210123", "-a", "4", "-k", "3"],
        vec!["--from-seq", "1011", "-k", "3"],
    ] {
        let graph = ok(&[&["graph", "--json"][..], &args].concat());
        let (code, piped, err) = dbwalk(&["solve"], &graph);
        assert_eq!(code, 0, "{err}");
        let direct = ok(&[&["solve"][..], &args].concat());
        assert_eq!(strip(&piped), strip(&direct), "{args:?}");
    }
}

#[test]
fn solve_custom_graph_from_stdin() {
    let graph = r#"{"alphabet":4,"order":1,"vertices":["0","1","2","3"],
        "arcs":[[0,1],[1,2],[2,3],[3,0]]}"#;
    let (code, out, err) = dbwalk(&["solve"], graph);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["optimum"], 4);
}

#[test]
fn verify_record() {
    let v: Value = serde_json::from_str(&ok(&["verify", "--seq", "01210123", "-k", "3"])).unwrap();
    assert_eq!(v["alphabet"], 4);
    assert_eq!(v["induced_length"], 8);
    assert_eq!(v["oracle_optimum"], 8);
    assert_eq!(v["is_watchman"], true);
    assert_eq!(v["vertex_count"], 24);
}

#[test]
fn sweep_json_lines_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = ok(&[
        "sweep",
        "-a",
        "2",
        "-k",
        "3",
        "--lengths",
        "3..5",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    let lines: Vec<Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let summary = &lines.last().unwrap()["summary"];
    // Binary necklaces of length 3, 4, 5: 4 + 6 + 8.
    assert_eq!(summary["verified"], 18);
    assert_eq!(summary["violations"], 0);
    assert_eq!(lines.len(), 19);

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut rows = text.lines();
    assert_eq!(
        rows.next().unwrap(),
        "sequence,length,verdict,reason,induced_length,oracle_optimum,is_watchman"
    );
    assert_eq!(rows.count(), 18);
    assert_eq!(
        out,
        ok(&["sweep", "-a", "2", "-k", "3", "--lengths", "3..=5"])
    );
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        vec!["classify", "--seq", "0120", "-a", "2", "-k", "2"],
        vec!["gen", "-a", "1", "-k", "2"],
        vec!["gen", "-a", "2", "-k", "2", "--algo", "nope"],
        vec!["walk", "-a", "2", "-k", "3", "--seq", "0000"],
        vec!["frobnicate"],
    ] {
        let out = binary(&args, &[], "");
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
    let out = binary(&["solve"], &[], "{not json");
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = binary(
        &["classify", "--seq", "0120", "-a", "2", "-k", "2"],
        &[],
        "",
    );
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("invalid symbol '2' at position 2"), "{err}");
}

#[test]
fn resource_errors_exit_two() {
    let out = binary(&["gen", "-a", "2", "-k", "13"], &[], "");
    assert_eq!(out.status.code(), Some(2));
    let out = binary(&["solve", "-a", "2", "-k", "5"], &[], "");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("32") && err.contains("24"), "{err}");

    let out = binary(
        &["solve", "-a", "2", "-k", "3"],
        &[("WATCHMAN_MAX_VERTICES", "4")],
        "",
    );
    assert_eq!(out.status.code(), Some(2));
    let out = binary(
        &["gen", "-a", "2", "-k", "3"],
        &[("WATCHMAN_MAX_SEQ", "4")],
        "",
    );
    assert_eq!(out.status.code(), Some(2));
    let out = binary(
        &["gen", "-a", "2", "-k", "13"],
        &[("WATCHMAN_MAX_SEQ", "8192")],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim().len(), 8192);
}

#[test]
fn binary_output_matches_library_entry_point() {
    let out = binary(&["walk", "-a", "3", "-k", "2"], &[], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        ok(&["walk", "-a", "3", "-k", "2"])
    );
}
