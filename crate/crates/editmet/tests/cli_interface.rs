//! End-to-end tests of the `editmet` binary: output formats, witness
//! rendering, exit codes, and environment knobs.

mod common;

use common::*;
use std::path::PathBuf;
use std::process::Command;
use tempfile::TempDir;

const CAP_ENV: &str = "EDITMET_MAX_UNIVERSE";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).expect("fixture files are writable");
    path
}

fn run_with<F: FnOnce(&mut Command)>(args: &[&str], configure: F) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_editmet"));
    cmd.args(args).env_remove(CAP_ENV);
    configure(&mut cmd);
    let out = cmd.output().expect("the binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_with(args, |_| {})
}

#[test]
fn classify_emits_the_report_as_json() {
    let dir = TempDir::new().unwrap();
    let intro = write(&dir, "intro.tsv", INTRO);
    let (code, stdout, stderr) = run(&["classify", intro.to_str().unwrap()]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let json: serde_json::Value = serde_json::from_str(&stdout).expect("stdout is JSON");
    assert_eq!(json["weighted"]["M"], true);
    assert_eq!(json["normalized"]["M"], true);
    assert_eq!(json["extended"]["M"], true);
    assert_eq!(json["normalized_defined"], true);
    assert_eq!(json["classes"]["MC"], false);
    assert_eq!(json["classes"]["MA"], true);
    assert_eq!(json["classes"]["MN"], true);
    assert_eq!(json["classes"]["ME"], true);
    assert_eq!(json["profiles"]["weighted"]["g"], true);
}

#[test]
fn dist_prints_the_exact_reduced_rational() {
    let dir = TempDir::new().unwrap();
    let counter = write(&dir, "counter.tsv", COUNTER);
    let (code, stdout, _) =
        run(&["dist", "--kind", "normalized", counter.to_str().unwrap(), "a", "b"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "3\n", "18/6 must print as 3");

    let unit = write(&dir, "unit.tsv", UNIT_AB);
    let (code, stdout, _) = run(&["dist", "--kind", "weighted", unit.to_str().unwrap(), "", ""]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "0\n", "the empty pair has distance zero");
}

#[test]
fn dist_decimal_appends_an_approximation() {
    let dir = TempDir::new().unwrap();
    let counter = write(&dir, "counter.tsv", COUNTER);
    let (code, stdout, _) = run(&[
        "dist",
        "--kind",
        "normalized",
        "--decimal",
        counter.to_str().unwrap(),
        "a",
        "ab",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1/2\n≈ 0.500000\n");
}

#[test]
fn witnesses_render_in_two_row_and_column_notation() {
    let dir = TempDir::new().unwrap();
    let unit = write(&dir, "unit.tsv", UNIT_AB);
    let (code, stdout, _) =
        run(&["dist", "--kind", "weighted", "--witness", unit.to_str().unwrap(), "ab", "a"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1\nab\na-\n", "value, then the two gapped rows");

    let intro = write(&dir, "intro.tsv", INTRO);
    let (code, stdout, _) =
        run(&["dist", "--kind", "extended", "--witness", intro.to_str().unwrap(), "a", "c"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "2\nabc\n", "value, then the walk columns");
}

#[test]
fn align_is_an_alias_for_dist_with_witness() {
    let dir = TempDir::new().unwrap();
    let unit = write(&dir, "unit.tsv", UNIT_AB);
    let via_dist =
        run(&["dist", "--kind", "weighted", "--witness", unit.to_str().unwrap(), "ab", "a"]);
    let via_align = run(&["align", "--kind", "weighted", unit.to_str().unwrap(), "ab", "a"]);
    assert_eq!(via_dist, via_align);
}

#[test]
fn verify_lists_violations_and_exits_one() {
    let dir = TempDir::new().unwrap();
    let counter = write(&dir, "counter.tsv", COUNTER);
    let (code, stdout, _) = run(&[
        "verify",
        "--kind",
        "normalized",
        "--max-len",
        "2",
        counter.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 20);
    assert!(
        lines.contains(
            &"triangle: d(\"a\", \"b\") = 3 > 17/6 = d(\"a\", \"ab\") + d(\"ab\", \"b\")"
        ),
        "stdout was:\n{stdout}"
    );
}

#[test]
fn verify_reports_clean_matrices_and_exits_zero() {
    let dir = TempDir::new().unwrap();
    let unit = write(&dir, "unit.tsv", UNIT_AB);
    let (code, stdout, _) =
        run(&["verify", "--kind", "weighted", "--max-len", "2", unit.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "no violations\n");
}

#[test]
fn verify_accepts_an_alphabet_subset() {
    let dir = TempDir::new().unwrap();
    let intro = write(&dir, "intro.tsv", INTRO);
    let (code, stdout, _) = run(&[
        "verify",
        "--kind",
        "weighted",
        "--max-len",
        "2",
        "--alphabet-subset",
        "ab",
        intro.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "no violations\n");

    let (code, _, stderr) = run(&[
        "verify",
        "--kind",
        "weighted",
        "--alphabet-subset",
        "az",
        intro.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("'z'"), "stderr was: {stderr}");
}

#[test]
fn negative_cycles_exit_three() {
    let dir = TempDir::new().unwrap();
    let cyclic = write(&dir, "cyclic.tsv", "\ta\tb\t-\na\t0\t-3\t1\nb\t2\t0\t1\n-\t1\t1\t*\n");
    let (code, _, stderr) =
        run(&["dist", "--kind", "extended", cyclic.to_str().unwrap(), "a", "b"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("negative cycle"), "stderr was: {stderr}");

    let (code, _, _) =
        run(&["verify", "--kind", "extended", "--max-len", "1", cyclic.to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();

    let bad = write(&dir, "bad.tsv", "\ta\t-\na\t0\t1\n-\t1\t0\n");
    let (code, _, stderr) = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(code, 2, "a value in the gap-gap cell is a parse error");
    assert!(!stderr.is_empty());

    let unit = write(&dir, "unit.tsv", UNIT_AB);
    let (code, _, stderr) =
        run(&["dist", "--kind", "weighted", unit.to_str().unwrap(), "ax", "b"]);
    assert_eq!(code, 2, "unknown sequence letters are input errors");
    assert!(stderr.contains("'x'"), "stderr was: {stderr}");

    let (code, _, _) = run(&["classify", dir.path().join("missing.tsv").to_str().unwrap()]);
    assert_eq!(code, 2, "unreadable files are input errors");

    let (code, _, stderr) =
        run(&["verify", "--kind", "weighted", "--max-len", "5", unit.to_str().unwrap()]);
    assert_eq!(code, 2, "the max-len hard cap is 4");
    assert!(stderr.contains("hard cap"), "stderr was: {stderr}");

    let (code, _, _) = run(&["dist", "--kind", "bogus", unit.to_str().unwrap(), "a", "b"]);
    assert_eq!(code, 2, "clap usage errors also exit 2");
}

#[test]
fn the_universe_cap_is_configurable_through_the_environment() {
    let dir = TempDir::new().unwrap();
    let unit = write(&dir, "unit.tsv", UNIT_AB);
    let path = unit.to_str().unwrap();

    let (code, stdout, _) = run_with(&["verify", "--kind", "weighted", "--max-len", "2", path], |c| {
        c.env(CAP_ENV, "10");
    });
    assert_eq!(code, 0, "7 sequences fit under a cap of 10");
    assert_eq!(stdout, "no violations\n");

    let (code, _, stderr) = run_with(&["verify", "--kind", "weighted", "--max-len", "3", path], |c| {
        c.env(CAP_ENV, "10");
    });
    assert_eq!(code, 2, "15 sequences exceed a cap of 10");
    assert!(stderr.contains(CAP_ENV), "stderr was: {stderr}");

    let (code, _, stderr) = run_with(&["verify", "--kind", "weighted", path], |c| {
        c.env(CAP_ENV, "not-a-number");
    });
    assert_eq!(code, 2);
    assert!(stderr.contains(CAP_ENV), "stderr was: {stderr}");
}
