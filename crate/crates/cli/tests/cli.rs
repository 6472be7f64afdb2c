//! End-to-end checks of the command-line surface: registry listing, the CSV
//! schema, exit codes, config-file precedence, and byte-identical reruns.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_h2affine"))
}

#[test]
fn list_prints_the_whole_registry() {
    let output = bin().arg("list").output().unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    for name in [
        "lp_identity",
        "stanton_identity",
        "nevanlinna_affine",
        "prop22_bounded",
        "prop24_pairing_decay",
        "prop25_kernel_cyclic",
        "thm31_constants",
        "thm32_eigen_recovery",
        "rem33_polynomial_rank",
        "cor34_case_a",
        "ex35_counterexample",
        "lemma36_decay",
        "thm37_case_ac",
        "thm38_analytic_at_1",
        "thm39_slow_decay",
        "prop310_series",
        "prop41_finite_zero_rank",
        "prop42_zero_orbit",
        "ex43_blaschke",
        "ex44_infinite_zero_eigen",
        "prop45_orthogonal",
        "thm51_cyclic_codim",
        "caradus_pozzi_report",
    ] {
        assert!(stdout.contains(name), "missing {name}");
    }
    assert_eq!(stdout.lines().count(), 23);
}

#[test]
fn unknown_name_is_a_usage_error() {
    let output = bin().args(["run", "not_a_thing"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("unknown experiment"));
}

#[test]
fn invalid_parameter_is_a_usage_error() {
    let output = bin().args(["run", "lp_identity", "--a", "1.5"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn run_writes_the_pinned_csv_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let output = bin()
        .args(["run", "prop41_finite_zero_rank", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "index,value,bound,err_lo,err_hi");
    for line in lines {
        assert_eq!(line.split(',').count(), 5, "bad row: {line}");
    }
    assert!(!text.contains('\r'));
}

#[test]
fn run_emits_valid_json_when_asked() {
    let output = bin()
        .args(["run", "rem33_polynomial_rank", "--format", "json", "--m", "6"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8(output.stdout).unwrap()).unwrap();
    assert_eq!(value["name"], "rem33_polynomial_rank");
    assert!(value["rows"].as_array().map(|r| !r.is_empty()).unwrap_or(false));
}

#[test]
fn config_file_fills_gaps_and_cli_wins() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bench.conf");
    std::fs::write(&config, "m = 3\nseed = 11\nformat = csv\n").unwrap();
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    // m comes from the config here
    let status = bin()
        .args(["run", "lp_identity", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out_a)
        .status()
        .unwrap();
    assert!(status.success());
    let rows_a = std::fs::read_to_string(&out_a).unwrap().lines().count() - 1;
    // config says 3 but the default floor for this experiment is 8 trials
    assert_eq!(rows_a, 8);
    // CLI m overrides the config
    let status = bin()
        .args(["run", "lp_identity", "--config"])
        .arg(&config)
        .arg("--m")
        .arg("12")
        .arg("--out")
        .arg(&out_b)
        .status()
        .unwrap();
    assert!(status.success());
    let rows_b = std::fs::read_to_string(&out_b).unwrap().lines().count() - 1;
    assert_eq!(rows_b, 12);
}

#[test]
fn config_parse_failure_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("broken.conf");
    std::fs::write(&config, "m == 3\n").unwrap();
    let output = bin().args(["run", "lp_identity", "--config"]).arg(&config).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("r1.csv");
    let second = dir.path().join("r2.csv");
    for path in [&first, &second] {
        let status = bin()
            .args(["run", "thm51_cyclic_codim", "--m", "25", "--seed", "5", "--out"])
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
}

#[test]
fn unwritable_output_is_an_io_error() {
    let output = bin()
        .args(["run", "lp_identity", "--m", "8", "--out", "/nonexistent_dir_xyz/report.csv"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
}
