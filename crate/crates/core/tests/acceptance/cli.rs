//! Command-line behaviour through `lamgraph::cli::run`.

use std::fs;
use std::path::{Path, PathBuf};

use lamgraph::cli::{run, EXIT_ERROR, EXIT_USAGE};
use tempfile::TempDir;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn lamgraph(args: &[&str]) -> Out {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lamgraph").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Out { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ck_matrix_of_the_even_shift_graph() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "even.json",
        r#"{"alphabet":["0","1"],"vertices":["a","b"],
            "edges":[{"src":"a","label":"0","dst":"a"},{"src":"a","label":"1","dst":"b"},{"src":"b","label":"1","dst":"a"}]}"#,
    );
    let o = lamgraph(&["ck-matrix", "--graph", s(&g)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rows: Vec<&str> = o.stdout.lines().filter(|l| l.chars().all(|c| c == '0' || c == '1' || c == ' ')).collect();
    assert_eq!(rows.len(), 3, "{}", o.stdout);
    let ones: usize = rows.iter().map(|r| r.matches('1').count()).sum();
    assert_eq!(ones, 5);
}

#[test]
fn kgroups_accept_bare_and_wrapped_matrices() {
    let dir = TempDir::new().unwrap();
    let ones = "[[1,1,1,1],[1,1,1,1],[1,1,1,1],[1,1,1,1]]";
    let bare = write(&dir, "bare.json", ones);
    let wrapped = write(&dir, "wrapped.json", &format!(r#"{{"matrix":{ones}}}"#));
    for p in [bare, wrapped] {
        let o = lamgraph(&["kgroups", "--matrix", s(&p)]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout.trim(), "K0 = Z/3Z, K1 = 0");
    }
}

#[test]
fn beta_classification_from_the_command_line() {
    let o = lamgraph(&["beta", "classify", "--beta", "3/2"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("non-sofic"), "{}", o.stdout);
    let o = lamgraph(&["beta", "classify", "--beta", "golden"]);
    assert!(o.stdout.starts_with("shift of finite type"), "{}", o.stdout);
}

#[test]
fn exit_codes_follow_verdicts() {
    let dir = TempDir::new().unwrap();
    let hb3 = write(&dir, "hb3.json", r#"{"higher_block":3}"#);
    let yes =
        lamgraph(&["conjugacy", "check", "--kind", "conj", "--left", "golden", "--data", s(&hb3), "--depth", "6"]);
    assert_eq!((yes.code, yes.stdout.lines().next()), (0, Some("yes")));
    let unknown =
        lamgraph(&["conjugacy", "check", "--kind", "conj", "--left", "golden", "--data", s(&hb3), "--depth", "2"]);
    assert_eq!(unknown.code, 2, "{}", unknown.stdout);

    let swap = write(
        &dir,
        "swap.json",
        r#"{"forward":{"window":1,"table":{"0":"0","1":"1"}},"backward":{"window":1,"table":{"0":"1","1":"0"}}}"#,
    );
    let no = lamgraph(&[
        "conjugacy",
        "check",
        "--kind",
        "conj",
        "--left",
        "golden",
        "--right",
        "golden",
        "--data",
        s(&swap),
    ]);
    assert_eq!(no.code, 1);
    assert!(no.stdout.contains("witness:"), "{}", no.stdout);

    let missing = lamgraph(&["validate", "--lgs", s(&dir.path().join("absent.json"))]);
    assert_eq!(missing.code, EXIT_ERROR);
    assert!(!missing.stderr.is_empty());

    assert_eq!(lamgraph(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(lamgraph(&["--jobs", "0", "subshift", "info", "--catalog", "even"]).code, EXIT_USAGE);
    assert_eq!(lamgraph(&["--version"]).code, 0);
    assert_eq!(lamgraph(&["--help"]).code, 0);
}

#[test]
fn substitution_check_through_a_data_file() {
    let dir = TempDir::new().unwrap();
    let sub = write(&dir, "sub.json", r#"{"images":{"0":"0","1":"10"}}"#);
    let o = lamgraph(&[
        "conjugacy",
        "check",
        "--kind",
        "substitution",
        "--left",
        "even",
        "--right",
        "odd",
        "--data",
        s(&sub),
    ]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    let missing_right =
        lamgraph(&["conjugacy", "check", "--kind", "substitution", "--left", "even", "--data", s(&sub)]);
    assert_eq!(missing_right.code, EXIT_ERROR);
}

#[test]
fn worker_count_does_not_change_output() {
    for args in [
        ["min", "--catalog", "even", "--level", "4", "--format", "json"].as_slice(),
        ["builders", "dyck", "--n", "2", "--level", "4", "--format", "json"].as_slice(),
        ["subshift", "info", "--catalog", "dyck:2"].as_slice(),
    ] {
        let one = lamgraph(&[&["--jobs", "1"], args].concat());
        let four = lamgraph(&[&["--jobs", "4"], args].concat());
        assert_eq!(one.code, 0, "{}", one.stderr);
        assert_eq!(one.stdout, four.stdout);
    }
}

#[test]
fn out_flag_writes_a_file_that_validates() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("dyck.json");
    let o = lamgraph(&["builders", "dyck", "--n", "2", "--level", "3", "--format", "json", "--out", s(&path)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains(r#""schema": "lamgraph/1""#));

    let v = lamgraph(&["validate", "--lgs", s(&path)]);
    assert_eq!(v.code, 0, "{}", v.stdout);
    assert!(v.stdout.contains("left_resolving: true"));

    let rel = lamgraph(&["export", "--lgs", s(&path), "--relations"]);
    assert_eq!(rel.code, 0, "{}", rel.stderr);
    assert!(!rel.stdout.is_empty());
}

#[test]
fn foreign_schema_is_an_error() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", r#"{"schema":"other/9","alphabet":["0"],"vertices":["a"],"edges":[]}"#);
    let o = lamgraph(&["ck-matrix", "--graph", s(&g)]);
    assert_eq!(o.code, EXIT_ERROR);
    assert!(o.stderr.contains("schema"), "{}", o.stderr);
}

#[test]
fn entropy_and_word_counts() {
    let o = lamgraph(&["subshift", "info", "--catalog", "golden"]);
    assert!(o.stdout.contains("word counts: 1 2 3 5 8 13 21"), "{}", o.stdout);
    let e = lamgraph(&["subshift", "entropy", "--catalog", "full:3"]);
    let value: f64 = e.stdout.split_whitespace().next().unwrap().parse().unwrap();
    assert!((value - 3f64.ln()).abs() < 1e-9, "{}", e.stdout);
}
