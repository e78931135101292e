//! End-to-end tests that drive the compiled `aseries` binary the way a
//! shell user would: spawn it, capture both streams, and check bytes and
//! exit codes rather than library values.

use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_aseries"));
    // Keep runs hermetic: an ambient precision override must not leak in.
    cmd.env_remove("ASERIES_DIGITS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin()
        .args(args)
        .output()
        .expect("the aseries binary should spawn")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("stdout should be UTF-8")
}

fn stderr_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("stderr should be UTF-8")
}

fn json_lines(out: &Output) -> Vec<serde_json::Value> {
    stdout_of(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each record line should be JSON"))
        .collect()
}

#[test]
fn records_are_byte_identical_across_runs() {
    let args = [
        "verify",
        "--family",
        "thm3.2",
        "--n-range",
        "0..3",
        "--x",
        "1/2",
        "--x",
        "0.3",
        "--digits",
        "25",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0), "grid should verify");
    assert_eq!(
        first.stdout, second.stdout,
        "the same invocation must reproduce its output byte for byte"
    );
}

#[test]
fn default_theorem_grid_verifies_and_exits_zero() {
    let out = run(&[
        "verify",
        "--family",
        "thm3.2",
        "--n-range",
        "0..2",
        "--x",
        "1/2",
        "--digits",
        "25",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 3, "one record per shift");
    for r in &recs {
        assert_eq!(r["status"], "ok");
        assert_eq!(r["family"], "thm3.2");
        assert_eq!(r["certified"], true);
    }
}

#[test]
fn json_records_keep_the_field_order() {
    let out = run(&[
        "verify",
        "--family",
        "thm3.2",
        "--n-range",
        "0..0",
        "--x",
        "1/2",
        "--digits",
        "20",
    ]);
    let line = stdout_of(&out).lines().next().expect("one record");
    let keys = [
        "\"family\"",
        "\"p\"",
        "\"n\"",
        "\"x\"",
        "\"digits\"",
        "\"lhs\"",
        "\"rhs\"",
        "\"abs_error\"",
        "\"certified\"",
        "\"terms_used\"",
        "\"status\"",
    ];
    let mut last = 0;
    for key in keys {
        let pos = line
            .find(key)
            .unwrap_or_else(|| panic!("missing key {key}"));
        assert!(
            pos > last || last == 0,
            "{key} appears out of order in {line}"
        );
        last = pos;
    }
}

#[test]
fn csv_output_carries_the_fixed_header() {
    let out = run(&["verify", "--family", "cor3.3a", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut lines = stdout_of(&out).lines();
    assert_eq!(
        lines.next(),
        Some("family,p,n,x,digits,lhs,rhs,abs_error,certified,terms_used,status")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(
        rows.len(),
        6,
        "the half-argument table covers six even shifts"
    );
    for row in rows {
        assert_eq!(
            row.split(',').count(),
            11,
            "row arity must match the header"
        );
        assert!(row.ends_with(",ok"), "row should verify: {row}");
    }
}

#[test]
fn out_of_domain_point_is_flag_misuse() {
    let out = run(&[
        "verify",
        "--family",
        "thm3.2",
        "--n-range",
        "0..1",
        "--x",
        "1.5",
        "--digits",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_of(&out).contains("x out of domain"),
        "stderr was: {}",
        stderr_of(&out)
    );
}

#[test]
fn malformed_point_fails_its_records_only() {
    let out = run(&[
        "verify",
        "--family",
        "thm3.2",
        "--n-range",
        "0..1",
        "--x",
        "abc",
        "--x",
        "1/2",
        "--digits",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(1), "a failing record means exit 1");
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 4, "two shifts times two points");
    for r in &recs {
        let expect = if r["x"] == "abc" { "fail" } else { "ok" };
        assert_eq!(r["status"], expect, "record: {r}");
    }
    assert!(
        stderr_of(&out).contains("abc"),
        "the diagnostic should name the bad point"
    );
}

#[test]
fn surd_tokens_are_rejected_where_rationals_are_required() {
    let out = run(&[
        "verify", "--family", "hyp8.8", "--x", "sqrt2/2", "--digits", "20",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn environment_sets_the_default_precision() {
    let from_env = bin()
        .env("ASERIES_DIGITS", "30")
        .args([
            "verify",
            "--family",
            "thm3.2",
            "--n-range",
            "0..0",
            "--x",
            "1/2",
        ])
        .output()
        .expect("spawn");
    assert_eq!(json_lines(&from_env)[0]["digits"], 30);

    let flag_wins = bin()
        .env("ASERIES_DIGITS", "30")
        .args([
            "verify",
            "--family",
            "thm3.2",
            "--n-range",
            "0..0",
            "--x",
            "1/2",
            "--digits",
            "40",
        ])
        .output()
        .expect("spawn");
    assert_eq!(json_lines(&flag_wins)[0]["digits"], 40);

    let invalid = bin()
        .env("ASERIES_DIGITS", "abc")
        .args([
            "verify",
            "--family",
            "thm3.2",
            "--n-range",
            "0..0",
            "--x",
            "1/2",
        ])
        .output()
        .expect("spawn");
    assert_eq!(invalid.status.code(), Some(2));
}

#[test]
fn closed_form_prints_bare_constants() {
    let two = run(&["closed-form", "--family", "cor4.3", "--n", "1"]);
    assert_eq!(stdout_of(&two), "2\n");

    let cubic = run(&["closed-form", "--family", "cor5.3", "--n", "0"]);
    assert_eq!(stdout_of(&cubic), "1/48*pi^3\n");
}

#[test]
fn tables_match_the_frozen_constants() {
    let first = run(&["table", "--corollary", "3.3a"]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout_of(&first);
    assert!(text.starts_with("| n | value |\n| --- | --- |\n"));
    assert!(
        text.contains("| 6 | 20/3*pi - 12*sqrt(3) |"),
        "table was:\n{text}"
    );

    let second = run(&["table", "--corollary", "4.4a"]);
    let text = stdout_of(&second);
    assert!(
        text.contains("| 4 | 1/6*pi^2 - 7/12*pi*sqrt(3) + 13/8 |"),
        "table was:\n{text}"
    );
}

#[test]
fn pi_command_reports_exact_errors() {
    let exact = run(&["pi", "--power", "1", "--n", "7", "--digits", "30"]);
    let text = stdout_of(&exact);
    assert!(
        text.contains("scaled = 3.14159265358979323846264338328e0"),
        "output was:\n{text}"
    );
    assert!(text.contains("exact_error = 0"), "output was:\n{text}");

    let squared = run(&["pi", "--power", "2", "--n", "20", "--digits", "30"]);
    let text = stdout_of(&squared);
    assert!(
        text.contains("exact_error = 1/2*pi^2 - 17584357376/4583103525"),
        "output was:\n{text}"
    );
}

#[test]
fn power_outside_the_family_range_is_rejected() {
    let out = run(&["pi", "--power", "9"]);
    assert_eq!(out.status.code(), Some(2), "clap enforces the 1..=4 range");
}

#[test]
fn unknown_corollary_id_is_rejected() {
    let out = run(&["table", "--corollary", "9.9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("9.9"));
}

#[test]
fn records_can_be_written_to_a_file() {
    let path = std::env::temp_dir().join(format!("aseries-cli-out-{}.jsonl", std::process::id()));
    let path_str = path.to_str().expect("temp path should be UTF-8");
    let out = run(&[
        "verify",
        "--family",
        "thm3.2",
        "--n-range",
        "0..1",
        "--x",
        "1/2",
        "--digits",
        "20",
        "--out",
        path_str,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty(), "records should go to the file only");
    let contents = std::fs::read_to_string(&path).expect("output file should exist");
    assert_eq!(contents.lines().count(), 2);
    std::fs::remove_file(&path).ok();
}
