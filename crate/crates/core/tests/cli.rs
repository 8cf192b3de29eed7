use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use copzero::fixtures;
use copzero::report::AnalysisReport;
use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_copzero"))
        .args(args)
        .env_remove("COPZERO_MODE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    {
        let mut pipe = child.stdin.take().expect("stdin");
        pipe.write_all(stdin.unwrap_or("").as_bytes())
            .expect("write stdin");
    }
    child.wait_with_output().expect("binary finishes")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("copzero-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

#[test]
fn json_report_round_trips_byte_for_byte() {
    for name in fixtures::NAMES {
        for mode in ["exact", "float"] {
            let out = run(
                &["analyze", "--fixture", name, "--mode", mode, "--json"],
                None,
            );
            assert!(out.status.success(), "{name} {mode}");
            let text = stdout(&out);
            let report = AnalysisReport::from_json(&text).unwrap();
            assert_eq!(format!("{}\n", report.to_json()), text, "{name} {mode}");
            assert_eq!(report.schema_version, 1);
        }
    }
}

#[test]
fn exact_rationals_serialize_as_strings() {
    let out = run(
        &["minimal-zeros", "--fixture", "example-xbar", "--json"],
        None,
    );
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["minimal_zeros"][0]["tau"][0], "1/2");
    assert_eq!(v["minimal_zeros"][0]["support"], serde_json::json!([1, 2]));
}

#[test]
fn dot_output_is_well_formed() {
    for name in fixtures::NAMES {
        let out = run(&["graph", "--dot", "--fixture", name], None);
        assert!(out.status.success());
        let dot = stdout(&out);
        assert!(dot.starts_with("graph minimal_zeros {"), "{dot}");
        assert!(dot.trim_end().ends_with('}'));
        assert_eq!(dot.matches('{').count(), dot.matches('}').count(), "{dot}");
        let declared: Vec<&str> = dot
            .lines()
            .filter(|l| l.contains("[label="))
            .map(|l| l.split_whitespace().next().unwrap())
            .collect();
        for line in dot.lines().filter(|l| l.contains("--")) {
            let ends: Vec<&str> = line.trim().trim_end_matches(';').split(" -- ").collect();
            assert_eq!(ends.len(), 2, "{line}");
            assert!(ends.iter().all(|e| declared.contains(e)), "{line}");
        }
    }
}

#[test]
fn float_mode_agrees_with_exact_mode() {
    for name in fixtures::NAMES {
        let exact = AnalysisReport::from_json(&stdout(&run(
            &["analyze", "--fixture", name, "--json"],
            None,
        )))
        .unwrap();
        let out = run(
            &["analyze", "--fixture", name, "--json", "--mode", "float"],
            None,
        );
        let float = AnalysisReport::from_json(&stdout(&out)).unwrap();
        assert_eq!(float.input.mode, copzero::Mode::Float);
        assert_eq!(
            exact.minimal_zeros.len(),
            float.minimal_zeros.len(),
            "{name}"
        );
        for (a, b) in exact.minimal_zeros.iter().zip(&float.minimal_zeros) {
            assert_eq!(a.support, b.support);
            for (u, v) in a.tau.iter().zip(&b.tau) {
                assert!((u.to_f64() - v.to_f64()).abs() <= 1e-9, "{name}");
            }
        }
        assert_eq!(exact.graph, float.graph, "{name}");
        assert_eq!(exact.maximal_cliques, float.maximal_cliques, "{name}");
        assert_eq!(exact.representation, float.representation, "{name}");
    }
}

#[test]
fn mode_can_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_copzero"))
        .args(["analyze", "--fixture", "horn", "--json"])
        .env("COPZERO_MODE", "float")
        .output()
        .unwrap();
    let report = AnalysisReport::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.input.mode, copzero::Mode::Float);
}

#[test]
fn reads_matrix_from_stdin_and_files() {
    let text = "0 0 1 1 1\n0 0 1 1 1\n1 1 0 0 1\n1 1 0 0 1\n1 1 1 1 1\n";
    let out = run(&["cliques"], Some(text));
    assert!(out.status.success());
    assert_eq!(stdout(&out), "maximal cliques: 2\n  {1, 2}\n  {3, 4}\n");

    let path = temp_file("x.txt", text);
    let out = run(&["representation", path.to_str().unwrap()], None);
    assert!(stdout(&out).contains("P* {3,4}"));
    std::fs::remove_file(path).ok();
}

#[test]
fn errors_and_exit_codes() {
    let out = run(&["analyze"], Some("1 2\n3 4\n"));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("row 2, column 1"), "{err}");

    let out = run(&["analyze"], Some("1 2\n2 x\n"));
    assert_eq!(out.status.code(), Some(1));

    let not_copositive = "1 -2\n-2 1\n";
    let out = run(&["analyze", "--gate"], Some(not_copositive));
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check-copositive", "--gate"], Some(not_copositive));
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analyze"], Some(not_copositive));
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("input not verified copositive"));

    let out = run(&["analyze", "--fixture", "horn", "--zero-eps=-1"], None);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["analyze", "--bogus-flag"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_copositive_reports_a_witness() {
    let out = run(&["check-copositive", "--json"], Some("1 -2\n-2 1\n"));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["copositivity"]["is_copositive"], false);
    assert_eq!(
        v["copositivity"]["witness"],
        serde_json::json!(["1/2", "1/2"])
    );
}

#[test]
fn from_graph_output_feeds_back_into_analysis() {
    let edges = temp_file("g.txt", "n 5\n1 2\n2 3\n3 1\n4 5\n");
    let out = run(&["from-graph", edges.to_str().unwrap()], None);
    assert!(out.status.success());
    let matrix = stdout(&out);
    let out = run(&["graph", "--json"], Some(&matrix));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v["graph"]["edges"],
        serde_json::json!([[1, 2], [1, 3], [2, 3], [4, 5]])
    );

    let out = run(&["from-graph", edges.to_str().unwrap(), "--json"], None);
    let out = run(&["cliques"], Some(&stdout(&out)));
    assert_eq!(stdout(&out), "maximal cliques: 2\n  {1, 2, 3}\n  {4, 5}\n");
    std::fs::remove_file(edges).ok();

    let out = run(&["from-graph", "-"], Some("n 2\n1 3\n"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn membership_queries() {
    let cases = [
        ("example-x", "1/2 1/2 0 0 0", "zero: yes\ncomponents: {1}"),
        ("example-x", "0 0 1 0 0", "zero: yes\ncomponents: {2}"),
        (
            "example-x",
            "0.2 0.2 0.2 0.2 0.2",
            "zero: no\ncomponents: {}",
        ),
        (
            "example-xbar",
            "0 0 0 0.5 0.5",
            "zero: yes\ncomponents: {2}",
        ),
    ];
    for (fixture, point, expected) in cases {
        let path = temp_file("pt.txt", point);
        let out = run(
            &[
                "membership",
                "--fixture",
                fixture,
                "--point",
                path.to_str().unwrap(),
            ],
            None,
        );
        assert!(out.status.success());
        assert!(
            stdout(&out).contains(expected),
            "{fixture} {point}: {}",
            stdout(&out)
        );
        std::fs::remove_file(path).ok();
    }
    let path = temp_file("bad.txt", "1/2 1/3 0 0 0");
    let out = run(
        &[
            "membership",
            "--fixture",
            "example-x",
            "--point",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_reports_grid_oracle() {
    let out = run(
        &["verify", "--fixture", "example-xbar", "--grid", "4"],
        None,
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("grid oracle (N = 4)"), "{text}");
    assert!(!text.contains("FAILED"), "{text}");
}
