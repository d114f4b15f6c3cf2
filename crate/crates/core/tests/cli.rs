use std::path::Path;
use std::process::{Command, Output};

use ovalg::reproduce::macaulay_example;
use ovalg::sysgen::PolySystem;
use serde_json::Value;

fn ovalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ovalg"))
        .args(args)
        .env_remove("OVALG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_example(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("mm.txt");
    std::fs::write(&path, macaulay_example().to_text()).unwrap();
    path
}

#[test]
fn gen_writes_a_parseable_ov_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.txt");
    let o = ovalg(&[
        "gen", "--kind", "ov", "--n", "9", "--v", "3", "--m", "12", "--q", "2", "--field-equations",
        "--homogeneous", "--seed", "1", "--out", path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("12 polynomials in 9 variables"));
    let s = PolySystem::read_file(&out).unwrap();
    assert_eq!((s.n(), s.m(), s.kind().vinegar(), s.seed()), (9, 12, Some(3), Some(1)));
}

#[test]
fn gen_is_deterministic_and_honours_the_seed_variable() {
    let args = ["gen", "--kind", "full", "--n", "3", "--m", "4", "--q", "2"];
    let a = ovalg(&args);
    let b = ovalg(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_ovalg"))
        .args(args)
        .env("OVALG_SEED", "7")
        .output()
        .unwrap();
    let explicit = ovalg(&[&args[..], &["--seed", "7"]].concat());
    assert_eq!(c.stdout, explicit.stdout);
    assert_ne!(c.stdout, a.stdout);
}

#[test]
fn gen_json_round_trips() {
    let o = ovalg(&["--format", "json", "gen", "--kind", "mixed", "--n", "10", "--v", "3", "--e", "6", "--u", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = PolySystem::from_json(&stdout(&o)).unwrap();
    assert_eq!(s.m(), 12);
    assert_eq!(PolySystem::from_json(&s.to_json().unwrap()).unwrap(), s);
}

#[test]
fn analyze_reports_the_chain_of_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example(dir.path());
    let report = dir.path().join("r.json");
    let args = [
        "--format", "json", "analyze", "--in", path_str(&input), "--max-degree", "6", "--check", "chain",
        "--report", path_str(&report),
    ];
    let o = ovalg(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["d_fall"], 3);
    assert_eq!(v["solv_deg"], 4);
    assert_eq!(v["checks"][0]["check"], "chain");
    assert_eq!(v["checks"][0]["holds"], true);
    assert!(v["empirical"].is_array());
    let again = ovalg(&args);
    assert_eq!(o.stdout, again.stdout);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(file, v);
}

#[test]
fn failing_identity_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.txt");
    // an OV system over GF(2) is far from semiregular
    let o = ovalg(&[
        "gen", "--kind", "ov", "--n", "9", "--v", "3", "--m", "12", "--q", "2", "--field-equations",
        "--homogeneous", "--seed", "1", "--out", path_str(&input),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = ovalg(&["analyze", "--in", path_str(&input), "--max-degree", "6", "--check", "hfq"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("check hfq   FAIL"));
}

#[test]
fn macaulay_dump_matches_the_display_convention() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example(dir.path());
    let dump = dir.path().join("m.csv");
    let o = ovalg(&["macaulay", "--in", path_str(&input), "--degree", "3", "--mode", "aff", "--dump-matrix", path_str(&dump)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("matrix 16x20"));
    let mut r = csv::Reader::from_path(&dump).unwrap();
    let header = r.headers().unwrap().clone();
    assert_eq!(header.len(), 21);
    assert_eq!(&header[1], "x1^3");
    assert_eq!(&header[20], "1");
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 16);
    assert_eq!(&rows[0][0], "1*f1");
    assert_eq!(&rows[15][0], "x1*f4");
    let bits: String = rows[0].iter().skip(1).collect();
    assert_eq!(bits, ovalg::reproduce::MACAULAY_EXAMPLE_MATRIX[0]);
}

#[test]
fn oversized_matrix_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example(dir.path());
    let o = ovalg(&["--max-entries", "100", "macaulay", "--in", path_str(&input), "--degree", "3", "--mode", "aff"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn solve_degree_of_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example(dir.path());
    let o = ovalg(&["--format", "json", "solve-degree", "--in", path_str(&input), "--max-degree", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["solving_degree"], 4);
    let basis: Vec<&str> = v["basis"].as_array().unwrap().iter().map(|b| b.as_str().unwrap()).collect();
    for f in ["x1 + 1", "x2", "x3 + 1"] {
        assert!(basis.contains(&f), "{f} missing from {basis:?}");
    }
}

#[test]
fn hilbert_csv_lists_every_degree() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_example(dir.path());
    let o = ovalg(&["--format", "csv", "hilbert", "--in", path_str(&input), "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "degree,hilbert");
    assert_eq!(lines.len(), 6);
}

#[test]
fn predict_matches_the_closed_form() {
    let o = ovalg(&["--format", "json", "predict", "--n", "8", "--m", "1", "--q", "2", "--field-equations", "--max-degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let raw: Vec<i64> = v["semiregular_raw"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(raw, [1, 8, 27, 48, 43, 8, -15]);
    assert_eq!(v["semiregular"][6], 0);
}

#[test]
fn reproduce_rows_in_every_format() {
    let o = ovalg(&["--jobs", "2", "--format", "json", "reproduce-paper", "--only", "series", "--only", "macaulay"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r["verdict"] == "PASS"));
    assert!(rows[0]["id"].as_str().unwrap().starts_with("series"));

    let o = ovalg(&["--format", "csv", "reproduce-paper", "--only", "series"]);
    let text = stdout(&o);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), ["id", "claim", "expected", "computed", "verdict"]);
    assert_eq!(r.records().count(), 2);

    let o = ovalg(&["reproduce-paper", "--only", "oil-plane"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(ovalg(&[]).status.code(), Some(1));
    assert_eq!(ovalg(&["reproduce-paper", "--only", "nothing"]).status.code(), Some(1));
    assert_eq!(ovalg(&["analyze", "--in", "/nonexistent/system.txt"]).status.code(), Some(1));
    assert_eq!(ovalg(&["gen", "--kind", "ov", "--n", "4", "--m", "2"]).status.code(), Some(1));
}

#[test]
fn list_names_every_group() {
    let o = ovalg(&["reproduce-paper", "--list"]);
    let ids: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(ids, ovalg::reproduce::group_ids().iter().map(|s| s.to_string()).collect::<Vec<_>>());
}
