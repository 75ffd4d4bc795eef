use std::fs;
use std::path::Path;

use peres_cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn peres(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("peres").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn synth_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut full = args.to_vec();
    full.extend(["--out", &path]);
    let (code, _, err) = peres(&full);
    assert_eq!(code, EXIT_OK, "{err}");
    path
}

#[test]
fn table_rows_match_closed_forms() {
    let (code, out, _) = peres(&["table", "--max-n", "6"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<Vec<usize>> = out
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    for row in &rows {
        let n = row[0];
        assert_eq!(row[1], (1 << (n + 1)) - n - 2);
        assert_eq!(row[2], (1 << (n + 1)) - 3);
        assert_eq!(row[3], (1 << n) - 1);
        assert_eq!(row[4], (1 << n) - 1 - n);
    }
    assert_eq!(&rows[2][..3], &[3, 11, 13]);
}

#[test]
fn synth_then_cost_then_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let p = synth_to(dir.path(), "p2.txt", &["synth", "peres", "--n", "2"]);
    let (code, out, _) = peres(&["cost", "--circuit", &p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("quantum cost: 4\n"), "{out}");

    let (code, out, _) = peres(&["simulate", "--circuit", &p, "--input", "110"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "101\n");

    let (code, out, _) = peres(&["draw", "--circuit", &p]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn synth_to_stdout_and_json() {
    let (code, out, _) = peres(&["synth", "toffoli", "--n", "3", "--activation", "101"]);
    assert_eq!(code, EXIT_OK);
    let c = peres_core::io::parse(&out).unwrap();
    assert_eq!(c.quantum_cost(), 13);

    let dir = tempfile::tempdir().unwrap();
    let j = synth_to(dir.path(), "t.json", &["synth", "barenco", "--n", "3", "--annotate"]);
    let text = fs::read_to_string(&j).unwrap();
    assert!(text.trim_start().starts_with('{'));
    assert!(text.contains("\"alphas\""));
    let (code, out, _) = peres(&["verify", "--circuit", &j, "--family", "toffoli", "--n", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn verify_zero_polarity_families() {
    let dir = tempfile::tempdir().unwrap();
    let or = synth_to(dir.path(), "or.txt", &["synth", "orgate", "--n", "3"]);
    let and = synth_to(dir.path(), "and.txt", &["synth", "andzero", "--n", "3"]);
    assert_eq!(peres(&["verify", "--circuit", &or, "--family", "orgate", "--n", "3"]).0, EXIT_OK);
    assert_eq!(peres(&["verify", "--circuit", &and, "--family", "andzero", "--n", "3"]).0, EXIT_OK);
    assert_eq!(
        peres(&["verify", "--circuit", &or, "--family", "andzero", "--n", "3"]).0,
        EXIT_VERIFY_FAILED
    );
    assert_eq!(
        peres(&["verify", "--circuit", &or, "--family", "orgate", "--n", "3", "--activation", "111"]).0,
        EXIT_USAGE
    );
}

#[test]
fn verify_failures_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let p = synth_to(dir.path(), "p3.txt", &["synth", "peres", "--n", "3"]);
    let (code, out, _) = peres(&["verify", "--circuit", &p, "--family", "peres", "--n", "3", "--activation", "110"]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    assert!(out.contains("counterexample"));

    assert_eq!(peres(&["verify", "--circuit", &p, "--family", "peres", "--n", "4"]).0, EXIT_VERIFY_FAILED);
    assert_eq!(peres(&["verify", "--circuit", &p, "--family", "nope", "--n", "3"]).0, EXIT_USAGE);
    assert_eq!(peres(&["verify", "--circuit", "/does/not/exist", "--family", "peres", "--n", "3"]).0, EXIT_USAGE);
    assert_eq!(peres(&["verify", "--family", "peres", "--n", "3"]).0, EXIT_USAGE);
    assert_eq!(peres(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(peres(&["synth", "peres", "--n", "2", "--activation", "00"]).0, EXIT_USAGE);
    assert_eq!(peres(&["synth", "peres", "--n", "2", "--activation", "1"]).0, EXIT_USAGE);
    assert_eq!(peres(&["table", "--max-n", "0"]).0, EXIT_USAGE);
    assert_eq!(peres(&["--help"]).0, EXIT_OK);

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "circuit v1\ncontrols 2\ncnot 1 2\n").unwrap();
    let (code, _, err) = peres(&["cost", "--circuit", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn simulate_reports_non_classical_and_uses_dense_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let lone = dir.path().join("lone.txt");
    fs::write(&lone, "circuit v1\nwidth 2\ncontrols 1\ncroot 2 +1 1 2\n").unwrap();
    let lone = lone.to_str().unwrap();
    assert_eq!(peres(&["simulate", "--circuit", lone, "--input", "10"]).1, "NonClassical\n");
    assert_eq!(peres(&["simulate", "--circuit", lone, "--input", "00"]).1, "00\n");

    // Not layered: a Feynman gate controlled by the target line.
    let odd = dir.path().join("odd.txt");
    fs::write(&odd, "circuit v1\nwidth 3\ncontrols 2\ncnot 3 1\n").unwrap();
    let (code, out, _) = peres(&["simulate", "--circuit", odd.to_str().unwrap(), "--input", "001"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "101\n");
    assert_eq!(peres(&["simulate", "--circuit", lone, "--input", "1"]).0, EXIT_USAGE);
}
