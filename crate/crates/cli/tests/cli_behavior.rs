//! End-to-end behavior of the `nuclear` binary: exit codes, fail-soft rows,
//! cache handling, float theta.

use std::process::{Command, Output};

use nuclear_cli::report::CompareReport;

fn nuclear(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nuclear"))
        .args(args)
        .env_remove("NUCLEAR_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn temp_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("nuclear-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["count", "--x", "10"][..],              // missing theta
        &["count", "--theta", "0/1", "--x", "5"], // invalid theta
        &["count", "--theta", "1/2"],             // no abscissa
        &["frobnicate"],                          // unknown command
        &["count", "--x", "10", "--theta", "1/2", "--what"],
    ] {
        let out = nuclear(args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn count_stdout_csv() {
    let out = nuclear(&["count", "--x", "10", "--theta", "1/2", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let report = CompareReport::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report.rows.len(), 1);
    assert_eq!(report.rows[0].exact, Some(4));
    assert_eq!(report.rows[0].ambiguous, 0);
    assert!(report.rows[0].s7.is_none());
}

#[test]
fn estimate_beyond_exact_budget_fills_estimates_only() {
    let out = nuclear(&["estimate", "--x", "1e14", "--theta", "1/2", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let report = CompareReport::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report.rows.len(), 1);
    let row = &report.rows[0];
    assert!(row.exact.is_none());
    assert!(row.s7.is_some_and(|v| v > 0.0));
    assert!(row.s8.is_some_and(|v| v > 0.0));
}

#[test]
fn compare_is_fail_soft_without_strict() {
    // 1e14 is beyond every exact budget; the row must survive with empty
    // exact column alongside a good row
    let out = nuclear(&[
        "compare", "--theta", "1/2", "--x", "1e4", "--x", "1e14", "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = CompareReport::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report.rows.len(), 2);
    assert_eq!(report.rows[0].exact, Some(338));
    assert!(report.rows[1].exact.is_none());
    assert!(report.rows[1].s7.is_some());
    assert!(!out.stderr.is_empty(), "fail-soft note goes to stderr");
}

#[test]
fn strict_mode_exits_two_on_row_error() {
    let out = nuclear(&[
        "compare", "--strict", "--theta", "1/2", "--x", "1e14", "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stratified_method_flag() {
    let out = nuclear(&[
        "count",
        "--x",
        "1e6",
        "--theta",
        "2/3",
        "--method",
        "stratified",
        "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = CompareReport::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let sieve = nuclear(&["count", "--x", "1e6", "--theta", "2/3", "--no-timing"]);
    let sieve_report =
        CompareReport::from_csv(&String::from_utf8(sieve.stdout).unwrap()).unwrap();
    assert_eq!(report.rows[0].exact, sieve_report.rows[0].exact);
}

#[test]
fn float_theta_counts_with_ambiguity_column() {
    let out = nuclear(&[
        "count",
        "--x",
        "2000",
        "--theta-float",
        "0.5",
        "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = CompareReport::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let exact = nuclear(&["count", "--x", "2000", "--theta", "1/2", "--no-timing"]);
    let exact_report =
        CompareReport::from_csv(&String::from_utf8(exact.stdout).unwrap()).unwrap();
    // round-to-member keeps the totals equal at theta = 1/2
    assert_eq!(report.rows[0].exact, exact_report.rows[0].exact);
}

#[test]
fn cache_dir_flag_and_env_are_honored() {
    let dir = temp_dir("cache");
    let cache_file = dir.join("primes.bin");

    let out = nuclear(&[
        "saddle",
        "--x",
        "1e6",
        "--theta",
        "1/2",
        "--no-timing",
        "--cache-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(cache_file.exists(), "cache file written");
    let first = std::fs::read(&cache_file).unwrap();

    // env fallback: reuse without rewrite, identical output
    let out2 = Command::new(env!("CARGO_BIN_EXE_nuclear"))
        .args(["saddle", "--x", "1e6", "--theta", "1/2", "--no-timing"])
        .env("NUCLEAR_CACHE_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out2.status.code(), Some(0));
    assert_eq!(out.stdout, out2.stdout);
    assert_eq!(std::fs::read(&cache_file).unwrap(), first);

    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_file_write_error_names_the_path() {
    let out = nuclear(&[
        "count",
        "--x",
        "10",
        "--theta",
        "1/2",
        "--out",
        "/nonexistent-dir/report.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("/nonexistent-dir/report.csv"),
        "stderr: {stderr}"
    );
}

#[test]
fn validate_passes_on_default_grid() {
    let out = nuclear(&["validate", "--theta", "1/2", "--x", "1e4"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.lines().filter(|l| l.starts_with("ok: ")).count() >= 6);
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn json_format_to_file_round_trips() {
    let dir = temp_dir("json");
    let path = dir.join("report.json");
    let out = nuclear(&[
        "compare", "--theta", "1/3", "--theta", "1/2", "--x", "1e4", "--no-timing",
        "--format", "json", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let report = CompareReport::from_json(&text).unwrap();
    assert_eq!(report.rows.len(), 2);
    // sorted by theta then x
    assert_eq!(report.rows[0].theta, "1/3");
    assert_eq!(report.rows[1].theta, "1/2");
    assert_eq!(report.to_json(), text);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_exits_zero() {
    let out = nuclear(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("usage:"));
}
