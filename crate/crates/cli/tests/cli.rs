use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use borel_orbits::poset::build_poset;
use borel_orbits::OrbitPoset;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_borel-orbits"))
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_matrix(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn poset_goldens_are_byte_exact() {
    for (format, file) in [("text", "poset4.txt"), ("json", "poset4.json"), ("dot", "poset4.dot")] {
        let out = run(&["poset", "--n", "4", "--format", format]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out), fs::read_to_string(golden(file)).unwrap(), "{format}");
    }
}

#[test]
fn poset_writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.dot");
    let out = run(&["poset", "--n", "4", "--format", "dot", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(path).unwrap(), fs::read_to_string(golden("poset4.dot")).unwrap());
}

#[test]
fn poset_text_levels_for_n_four() {
    let text = stdout(&run(&["poset", "--n", "4"]));
    let counts: Vec<usize> = text
        .lines()
        .filter(|l| l.starts_with("rank "))
        .map(|l| l.split_once(": ").unwrap().1.split(' ').count())
        .collect();
    assert_eq!(counts, vec![1, 2, 2, 2, 1, 1, 1]);
}

#[test]
fn poset_json_for_n_one_and_round_trip() {
    let json = stdout(&run(&["poset", "--n", "1", "--format", "json"]));
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["nodes"].as_array().unwrap().len(), 1);
    assert!(value["covers"].as_array().unwrap().is_empty());

    let json = fs::read_to_string(golden("poset4.json")).unwrap();
    assert_eq!(OrbitPoset::from_json(&json).unwrap(), build_poset(4));
}

#[test]
fn poset_rejects_zero() {
    assert_eq!(run(&["poset", "--n", "0"]).status.code(), Some(1));
    assert_eq!(run(&["poset", "--n", "4", "--format", "svg"]).status.code(), Some(1));
    assert_eq!(run(&["poset"]).status.code(), Some(1));
}

#[test]
fn canonicalize_examples() {
    let out = run(&["canonicalize", golden("example6.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("involution: (1,4)(2,5)\n"));

    let dir = tempfile::tempdir().unwrap();
    let zero = write_matrix(&dir, "zero.txt", "3\n0 0 0\n0 0 0\n0 0 0\n");
    assert!(stdout(&run(&["canonicalize", zero.to_str().unwrap()])).starts_with("involution: e\n"));

    let two = write_matrix(&dir, "two.txt", "2\n0 6\n\u{2212}6 0\n");
    let text = stdout(&run(&["canonicalize", two.to_str().unwrap()]));
    assert!(text.starts_with("involution: (1,2)\n"), "{text}");

    let fractions = write_matrix(&dir, "frac.txt", "4\n0 1/2 0 3\n-1/2 0 2/3 0\n0 -2/3 0 1\n-3 0 -1 0\n");
    let out = run(&["canonicalize", fractions.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("witness:"));
}

#[test]
fn canonicalize_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let symmetric = write_matrix(&dir, "sym.txt", "2\n0 1\n1 0\n");
    let out = run(&["canonicalize", symmetric.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not anti-symmetric"));

    let garbled = write_matrix(&dir, "bad.txt", "2\n0 1\n-1 zz\n");
    let out = run(&["canonicalize", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column 4"));

    let out = run(&["canonicalize", dir.path().join("missing.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rank_examples() {
    let text = stdout(&run(&["rank", "--n", "4", "(1,2)"]));
    assert!(text.contains("A: 1\n"));
    assert!(text.contains("- A: 5\n"));

    let text = stdout(&run(&["rank", "--n", "4", "e"]));
    assert!(text.contains("A: 6\n"));
    assert!(text.contains("- A: 0\n"));

    let text = stdout(&run(&["rank", "--n", "4", "(1,4)(2,3)"]));
    assert!(text.contains("inversions: 2\n"));
    assert!(text.contains("fixed-point sum: 0\n"));
    assert!(text.contains("A: 2\n"));
    assert!(text.contains("(inversions + fixed-point sum): 4\n"));

    for bad in ["(1,2", "(1,2)(2,3)", "(1,5)", "(2,1)"] {
        assert_eq!(run(&["rank", "--n", "4", bad]).status.code(), Some(1), "{bad}");
    }
}

#[test]
fn verify_examples() {
    let out = run(&["verify", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("7 of 7 checks passed"));

    let out = run(&["verify", "--n", "8", "--checks", "secfm"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS secfm (n=8): 764 cases"));

    let out = run(&["verify", "--n", "5", "--checks", "dimension", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS dimension (n=5): 26 cases"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(run(&["verify", "--n", "4", "--checks", "grading,nope"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--n", "9", "--checks", "dimension"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--n", "4", "--trials", "0"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--n", "4", "--seed", "17", "--trials", "5", "--checks", "invariance,pfaffian,bruhat"];
    let first = run(&args);
    let second = run(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(first.stdout, second.stdout);
    let json = ["poset", "--n", "5", "--format", "json"];
    assert_eq!(run(&json).stdout, run(&json).stdout);
}
