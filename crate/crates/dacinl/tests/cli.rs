//! End-to-end checks of the command-line interface: exit codes, flag
//! validation, output round trips, and seed handling.

use std::process::{Command, Output};

fn dacinl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dacinl"))
        .args(args)
        .env_remove("DACINL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn help_exits_zero() {
    let out = dacinl(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("simulate"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = dacinl(&["simulate", "--bits", "8", "--arch", "binary", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn segmented_without_segmentation_is_a_usage_error() {
    let out = dacinl(&["simulate", "--bits", "10", "--arch", "segmented"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--segmentation"));
}

#[test]
fn binary_cdf_is_rejected_with_a_pointer_to_mc() {
    let out = dacinl(&["analytic", "--law", "binary", "--what", "cdf", "--x", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("no closed-form CDF"), "stderr: {err}");
}

#[test]
fn quad_density_above_order_five_is_rejected() {
    let out = dacinl(&["density", "--m", "9", "--mode", "quad"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--mode mc"));
}

#[test]
fn non_positive_threshold_is_rejected() {
    let out = dacinl(&[
        "yield",
        "--bits",
        "10",
        "--arch",
        "thermo",
        "--threshold-lsb",
        "-0.5",
        "--method",
        "analytic",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--threshold-lsb"));
}

#[test]
fn analytic_means_print_twelve_significant_digits() {
    let out = dacinl(&["analytic", "--law", "thermo", "--what", "mean"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("mean_X,8.68731160636e-1"), "{}", stdout(&out));

    // default tolerance guarantees 1e-8; a tighter one pins more digits
    let out = dacinl(&["analytic", "--law", "binary", "--what", "mean"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("mean_M,8.3979227"), "{}", stdout(&out));
    let out = dacinl(&["analytic", "--law", "binary", "--what", "mean", "--tol", "1e-13"]);
    assert!(stdout(&out).contains("mean_M,8.39792281421e-1"), "{}", stdout(&out));

    let out = dacinl(&["analytic", "--law", "binary", "--what", "var"]);
    assert!(stdout(&out).contains("var_M,8.00660196967e-2"), "{}", stdout(&out));
    let out = dacinl(&["analytic", "--law", "thermo", "--what", "var"]);
    assert!(stdout(&out).contains("var_X,6.77732039639e-2"), "{}", stdout(&out));
}

#[test]
fn analytic_cdf_and_quantile_round_trip() {
    let out = dacinl(&["analytic", "--law", "thermo", "--what", "cdf", "--x", "1.0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("cdf_X,7.30000328323e-1"), "{}", stdout(&out));

    let out = dacinl(&["analytic", "--law", "thermo", "--what", "quantile", "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let value: f64 = stdout(&out)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 0.8275735551899).abs() < 1e-6, "median {value}");

    // cdf without --x, quantile without --p
    assert_eq!(
        dacinl(&["analytic", "--law", "thermo", "--what", "cdf"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dacinl(&["analytic", "--law", "thermo", "--what", "quantile"]).status.code(),
        Some(2)
    );
}

#[test]
fn density_quad_m1_starts_at_the_closed_form_value() {
    let out = dacinl(&[
        "density", "--m", "1", "--mode", "quad", "--grid-max", "0.1", "--grid-step", "0.05",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let first_row = text.lines().nth(2).unwrap();
    let f0: f64 = first_row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((f0 - 3.19154).abs() < 1e-4, "f(0) = {f0}");
}

#[test]
fn config_echo_goes_to_stderr_before_results() {
    let out = dacinl(&[
        "simulate",
        "--bits",
        "6",
        "--arch",
        "thermo",
        "--trials",
        "100",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let err = stderr(&out);
    for key in ["# command", "# bits", "# sigma_u", "# trials", "# seed", "# workers"] {
        assert!(err.contains(key), "missing {key} in config echo:\n{err}");
    }
    assert!(stdout(&out).starts_with("stat,value\n"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "simulate", "--bits", "8", "--arch", "binary", "--sigma-rel", "0.02", "--trials", "500",
        "--seed", "7",
    ];
    let first = dacinl(&args);
    let second = dacinl(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn seed_env_var_matches_explicit_flag() {
    let base = [
        "simulate", "--bits", "6", "--arch", "thermo", "--trials", "200",
    ];
    let explicit = dacinl(&[&base[..], &["--seed", "123"]].concat());
    let via_env = Command::new(env!("CARGO_BIN_EXE_dacinl"))
        .args(base)
        .env("DACINL_SEED", "123")
        .output()
        .unwrap();
    assert_eq!(explicit.stdout, via_env.stdout);
}

#[test]
fn summary_csv_floats_parse_back_losslessly() {
    let out = dacinl(&[
        "simulate", "--bits", "6", "--arch", "binary", "--trials", "300", "--seed", "11",
    ]);
    let json = dacinl(&[
        "simulate", "--bits", "6", "--arch", "binary", "--trials", "300", "--seed", "11",
        "--output", "json",
    ]);
    let csv_text = stdout(&out);
    let mean_csv: f64 = csv_text
        .lines()
        .find(|l| l.starts_with("mean,"))
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc["schema"], 1);
    let mean_json = doc["result"]["mean"].as_f64().unwrap();
    assert_eq!(mean_csv.to_bits(), mean_json.to_bits());
}

#[test]
fn sample_dump_is_flat_little_endian_f64() {
    let dir = std::env::temp_dir().join("dacinl-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let dump = dir.join("samples.f64le");
    let out = dacinl(&[
        "simulate",
        "--bits",
        "6",
        "--arch",
        "thermo",
        "--trials",
        "50",
        "--seed",
        "5",
        "--dump-samples",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let bytes = std::fs::read(&dump).unwrap();
    assert_eq!(bytes.len(), 50 * 8);
    let mut prev = f64::NEG_INFINITY;
    for chunk in bytes.chunks_exact(8) {
        let v = f64::from_le_bytes(chunk.try_into().unwrap());
        assert!(v.is_finite() && v >= 0.0);
        assert!(v >= prev, "dumped samples are sorted ascending");
        prev = v;
    }
}

#[test]
fn yield_analytic_thermo_matches_the_library() {
    let out = dacinl(&[
        "yield",
        "--bits",
        "14",
        "--sigma-rel",
        "0.01",
        "--arch",
        "thermo",
        "--threshold-lsb",
        "0.5",
        "--method",
        "analytic",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let spec = dacinl::DacSpec::from_relative_matching(14, 1.0, 0.01).unwrap();
    let expected = dacinl::yield_thermometer(0.5, &spec).unwrap();
    assert_eq!(value.to_bits(), expected.to_bits());
}

#[test]
fn yield_analytic_segmented_is_a_usage_error() {
    let out = dacinl(&[
        "yield",
        "--bits",
        "10",
        "--arch",
        "segmented",
        "--segmentation",
        "4",
        "--threshold-lsb",
        "0.5",
        "--method",
        "analytic",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--method mc"));
}

#[test]
fn convergence_commands_produce_plot_ready_csv() {
    let out = dacinl(&[
        "convergence", "--arch", "thermo", "--log2-n-min", "6", "--log2-n-max", "8",
        "--log2-n-fine", "12", "--trials", "20", "--seed", "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("n,observed,bound"));
    assert!(text.contains("fitted_log_log_slope"));

    let out = dacinl(&[
        "convergence", "--arch", "binary", "--bits-min", "6", "--bits-max", "8", "--trials",
        "50", "--seed", "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("bits,mean_abs_diff,exceedance,bound"));
}

#[test]
fn compare_reports_both_architectures() {
    let out = dacinl(&[
        "compare", "--bits", "8", "--arch-a", "thermo", "--arch-b", "binary", "--trials",
        "400", "--seed", "21", "--workers", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("architecture,thermometer,binary"));
    assert!(text.contains("ks_distance"));
}

#[test]
fn out_file_matches_stdout_output() {
    let dir = std::env::temp_dir().join("dacinl-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("summary.csv");
    let to_stdout = dacinl(&[
        "simulate", "--bits", "6", "--arch", "binary", "--trials", "100", "--seed", "13",
    ]);
    let to_file = dacinl(&[
        "simulate", "--bits", "6", "--arch", "binary", "--trials", "100", "--seed", "13",
        "--out-file", path.to_str().unwrap(),
    ]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
}
