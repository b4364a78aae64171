use std::fs;
use std::process::{Command, Output};

use jetchern_cli::report::{Report, Status};
use serde_json::Value;

fn jetchern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetchern"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = jetchern(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    (Report::from_json(&text).expect("valid report"), out.status.code().unwrap())
}

fn record<'a>(report: &'a Report, name: &str) -> &'a jetchern_cli::report::Record {
    report
        .records
        .iter()
        .find(|r| r.name == name)
        .unwrap_or_else(|| panic!("missing record {name}"))
}

#[test]
fn plucker_cubic_codegree() {
    let (report, code) = json_report(&["plucker", "--degree", "3"]);
    assert_eq!(code, 0);
    let r = record(&report, "plucker/codegree");
    assert_eq!(r.values["total"], Value::from(12));
    assert_eq!(r.values["dual_curve_part"], Value::from(3));
    assert_eq!(r.values["flex_part"], Value::from(9));
    assert_eq!(record(&report, "plucker/consistency").status, Status::Pass);
}

#[test]
fn classify_picard_one_cites_grassmannian() {
    let (report, code) = json_report(&["classify", "--n", "6", "--defect", "2", "--picard-rank-one"]);
    assert_eq!(code, 0);
    let r = record(&report, "classify/outcome");
    assert_eq!(r.citation, jetchern::anchor::PICARD_ONE_GRASSMANNIAN);
    let outcome = r.values["outcome"].as_str().unwrap();
    assert!(outcome.contains("GrassmannianG14") && outcome.contains("HyperplaneSectionOfG14"));
}

#[test]
fn config_file_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(&path, r#"{"command": "plucker", "degree": 4, "format": "json"}"#).unwrap();
    let out = jetchern(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(report.command.parameters["degree"], Value::from(4));
    assert_eq!(record(&report, "plucker/codegree").values["total"], Value::from(28));

    let out = jetchern(&["--config", path.to_str().unwrap(), "plucker", "--degree", "3"]);
    let report = Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(report.command.parameters["degree"], Value::from(3));
    assert_eq!(record(&report, "plucker/codegree").values["total"], Value::from(12));
}

#[test]
fn unknown_config_key_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(&path, r#"{"command": "plucker", "degree": 3, "colour": "red"}"#).unwrap();
    let out = jetchern(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn key_for_another_command_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(&path, r#"{"command": "plucker", "degree": 3, "m": 2}"#).unwrap();
    let out = jetchern(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_command_and_missing_parameter() {
    assert_eq!(jetchern(&[]).status.code(), Some(2));
    assert_eq!(jetchern(&["plucker"]).status.code(), Some(2));
}

#[test]
fn invariant_violations_exit_with_two() {
    assert_eq!(jetchern(&["hqf", "--n", "4", "--g", "0", "--e", "2", "--b", "1"]).status.code(), Some(2));
    assert_eq!(jetchern(&["hqf", "--n", "4", "--g", "0", "--e", "0", "--b", "1"]).status.code(), Some(2));
    assert_eq!(jetchern(&["scroll", "--m", "0", "--r", "2"]).status.code(), Some(2));
    assert_eq!(jetchern(&["verify-identities", "--n-max", "99"]).status.code(), Some(2));
}

#[test]
fn strict_turns_warning_into_failure() {
    let args = ["hqf", "--n", "5", "--g", "0", "--e", "2", "--b", "1"];
    let (lenient, code) = json_report(&args);
    assert_eq!(code, 0);
    assert!(lenient.records.iter().any(|r| r.warning && r.status == Status::Info));

    let mut strict_args = args.to_vec();
    strict_args.push("--strict");
    let out = jetchern(&strict_args);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hqf/warning"));
}

#[test]
fn fourfold_example_values() {
    let (report, code) = json_report(&["hqf", "--n", "4", "--g", "0", "--e", "3", "--b", "1"]);
    assert_eq!(code, 0);
    let abc = record(&report, "hqf/abc");
    assert_eq!(abc.values["A"], Value::from(4));
    assert_eq!(abc.values["B"], Value::from(16));
    assert_eq!(abc.values["C"], Value::from(-1));
    assert_eq!(record(&report, "hqf/closed-form").values["c_n"], Value::from(4));
    assert_eq!(record(&report, "hqf/recursion").status, Status::Pass);
}

#[test]
fn conormal_curve_in_five_space() {
    let (report, _) = json_report(&["conormal", "--ambient", "5", "--m", "1"]);
    let r = record(&report, "conormal/invariants");
    assert_eq!(r.values["def0"], Value::from(3));
    assert_eq!(r.values["defect"], Value::from(2));
    assert_eq!(r.values["strict_inclusion"], Value::from(true));
}

#[test]
fn json_output_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = |p: &std::path::Path| {
        vec![
            "verify-identities".to_string(),
            "--n-max".into(),
            "5".into(),
            "--m-max".into(),
            "4".into(),
            "--hqf-bound".into(),
            "3".into(),
            "--hqf-g-max".into(),
            "1".into(),
            "--search-bound".into(),
            "50".into(),
            "--format".into(),
            "json".into(),
            "--output".into(),
            p.to_str().unwrap().to_string(),
        ]
    };
    for p in [&a, &b] {
        let argv = args(p);
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        assert_eq!(jetchern(&argv).status.code(), Some(0));
    }
    let first = fs::read(&a).unwrap();
    assert_eq!(first, fs::read(&b).unwrap());
    let text = String::from_utf8(first).unwrap();
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.to_json(), text);
    assert_eq!(report.summary.fail, 0);
    assert!(report.summary.pass > 0);
}

#[test]
fn default_verification_suite_passes() {
    let out = jetchern(&["verify-identities"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("obstruction/defect-n-minus-3"));
    assert!(stdout.contains(" 0 fail,"));
}

#[test]
fn oracle_compare_single_pair() {
    let (report, code) = json_report(&["oracle-compare", "--m", "3", "--r", "2"]);
    assert_eq!(code, 0);
    assert!(report.records.iter().all(|r| r.status != Status::Fail));
}
