use std::process::{Command, Output};

use ncsec_cli::sweep::parse_csv;

fn ncsec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncsec")).args(args).output().expect("binary runs")
}

fn write_spec(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("spec.toml");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const DT_POINT: &str = r#"
scheme = "DT"
regime = "csi"
methods = ["closed_form"]

[rates]
secrecy_rate = 0.0

[g_d.sweep]
start = 10.0
stop = 20.0
step = 10.0

[g_e]
db = 10.0
"#;

#[test]
fn sweep_writes_csv_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = ncsec(&["sweep", &write_spec(&dir, DT_POINT), "--out", "-"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = parse_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(rows.len(), 2);
    // equal averages: C_s > 0 with probability one half
    assert_eq!(rows[0].value, Some(0.5));
    assert!(rows[1].value.unwrap() < 0.5);
}

#[test]
fn sweep_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = ncsec(&["sweep", &write_spec(&dir, DT_POINT), "--out", csv.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(csv).unwrap().starts_with("# "));
}

#[test]
fn invalid_spec_exits_2_with_field() {
    let dir = tempfile::tempdir().unwrap();
    let body = DT_POINT.replace(r#"["closed_form"]"#, "[]");
    let out = ncsec(&["sweep", &write_spec(&dir, &body)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("kind=invalid_spec") && err.contains("field=methods"), "{err}");
}

#[test]
fn unknown_figure_and_suite_are_usage_errors() {
    assert_eq!(ncsec(&["figure", "fig99"]).status.code(), Some(2));
    assert_eq!(ncsec(&["check", "bogus"]).status.code(), Some(2));
}

#[test]
fn print_config_round_trips_through_sweep_validation() {
    let out = ncsec(&["print-config"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let spec = ncsec_cli::spec::parse(&text).unwrap();
    assert!(spec.validate().is_ok());
}

#[test]
fn oracle_suite_passes() {
    let out = ncsec(&["check", "oracle"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("PASS"));
}
