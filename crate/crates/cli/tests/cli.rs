//! Contract tests for the CLI: CSV shapes, exit codes, diagnostic routing
//! and the sample-to-check round trip.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harris-mo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn eval_emits_expected_value() {
    let out = run(&[
        "eval",
        "--scheme",
        "harris-max",
        "--base",
        "exp",
        "--rate",
        "1",
        "--a",
        "2",
        "--k",
        "2",
        "--x",
        "0.693147",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "x,value");
    let value: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - 0.377_964).abs() < 1e-5, "value = {value}");
}

#[test]
fn eval_mo_reports_survival() {
    let out = run(&[
        "eval", "--scheme", "mo", "--alpha", "2", "--x", "0.6931471805599453",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    let value: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn ar_shape_contract() {
    let out = run(&[
        "ar", "--p", "0.5", "--k", "2", "--paths", "100", "--steps", "50", "--seed", "1",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "path,step,value");
    assert_eq!(lines.len(), 1 + 100 * 51);
    // ordering fixed: path-major, then step
    let first_fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first_fields[0], "0");
    assert_eq!(first_fields[1], "0");
    let last_fields: Vec<&str> = lines.last().unwrap().split(',').collect();
    assert_eq!(last_fields[0], "99");
    assert_eq!(last_fields[1], "50");
}

#[test]
fn ep_shape_contract() {
    let out = run(&[
        "ep", "--t-grid", "0.5,1,2", "--paths", "10", "--seed", "4",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "path,t,T,value");
    assert_eq!(lines.len(), 1 + 10 * 3);
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["eval", "--scheme", "mo", "--alpha", "2", "--x", "1", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_required_parameter_is_usage_error() {
    let out = run(&["eval", "--scheme", "mo", "--x", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--alpha"));
}

#[test]
fn bad_domain_surfaces_module_message_and_flag() {
    let out = run(&[
        "eval", "--scheme", "harris-max", "--rate", "-1", "--a", "2", "--k", "1", "--x", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--rate"), "stderr: {err}");
    assert!(err.contains("must be a positive finite real"), "stderr: {err}");
    assert!(out.stdout.is_empty(), "diagnostics must not reach the data stream");
}

#[test]
fn wrong_orientation_is_domain_error() {
    let out = run(&[
        "sample",
        "--scheme",
        "psi",
        "--psi",
        "semistable",
        "--psi-a",
        "2",
        "--psi-c",
        "0.5",
        "--n",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("c > 1"), "stderr: {err}");
}

#[test]
fn sample_feeds_check_and_passes() {
    let dir = std::env::temp_dir().join("harris-mo-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("sample.csv");
    let csv_arg = csv.to_str().unwrap();
    let scheme = &[
        "--scheme",
        "harris-max",
        "--base",
        "exp",
        "--rate",
        "1",
        "--a",
        "2",
        "--k",
        "2",
    ];
    let mut sample_args = vec!["sample"];
    sample_args.extend_from_slice(scheme);
    sample_args.extend_from_slice(&["--n", "20000", "--seed", "11", "--output", csv_arg]);
    let out = run(&sample_args);
    assert!(out.status.success());

    let mut check_args = vec!["check", "--ks", "--input", csv_arg];
    check_args.extend_from_slice(scheme);
    let out = run(&check_args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "statistic,critical,pass");
    assert!(lines[1].ends_with("true"));

    // the same sample against a grossly different law fails with exit 4
    let out = run(&[
        "check", "--ks", "--input", csv_arg, "--scheme", "base", "--base", "uniform", "--lower",
        "0", "--upper", "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let lines = stdout_lines(&out);
    assert!(lines[1].ends_with("false"));
}

#[test]
fn check_two_sample_mode() {
    let dir = std::env::temp_dir().join("harris-mo-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("two_a.csv"), dir.join("two_b.csv"));
    for (path, seed) in [(&a, "21"), (&b, "22")] {
        let out = run(&[
            "sample", "--scheme", "mo", "--alpha", "2", "--n", "5000", "--seed", seed,
            "--output", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let out = run(&[
        "check",
        "--ks",
        "--input",
        a.to_str().unwrap(),
        "--input2",
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
}

#[test]
fn emit_cmdline_goes_to_diagnostic_stream() {
    let out = run(&[
        "eval", "--emit-cmdline", "--scheme", "mo", "--alpha", "2", "--x", "1",
    ]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("# "), "stderr: {err}");
    assert!(err.contains("--alpha 2"));
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "x,value");
}

#[test]
fn harris_scheme_is_sample_only() {
    let out = run(&["eval", "--scheme", "harris", "--a", "2", "--x", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sample", "--scheme", "harris", "--a", "2", "--k", "2", "--n", "5", "--seed", "1"]);
    assert!(out.status.success());
    for line in &stdout_lines(&out)[1..] {
        let v: u64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!((v - 1) % 2, 0);
    }
}
