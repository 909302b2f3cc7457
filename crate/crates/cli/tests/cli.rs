use std::process::{Command, Output};

use serde_json::Value;

fn faulsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_faulsum"))
        .args(args)
        .env_remove("FAULSUM_DIGITS")
        .env_remove("FAULSUM_TERMS")
        .env_remove("FAULSUM_FORMAT")
        .env_remove("FAULSUM_VARIANT")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = faulsum(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8")
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/output.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

const JSON_CASES: &[&[&str]] = &[
    &["sum", "--m", "1/2", "--x", "20.5", "--a", "1"],
    &["sum", "--m", "3", "--x", "12"],
    &["sum", "--m", "-3/2+2i", "--x", "9", "--variant", "shifted"],
    &["harmonic", "--n", "30"],
    &["logsum", "--x", "17.25", "--variant", "shifted-plus", "--a", "2"],
    &["alt", "--m", "1/2", "--n", "11"],
    &["alt", "--m", "2", "--n", "11"],
    &["zeta", "--s", "2"],
    &["zeta", "--s", "1/2+3i", "--z", "4"],
    &["zeta", "--s", "3", "--z", "20", "--order", "6", "--h", "1/2"],
    &["digamma", "--z", "3+4i"],
    &["digamma", "--z", "40", "--order", "5"],
    &["report", "--m", "0.5", "--n", "10", "--kmax", "6"],
    &["report", "--m", "-1.00000000000000000000000000000000000000000000000000000001", "--n", "10", "--kmax", "2"],
    &["preset", "--id", "zeta2-partial", "--n", "10", "--digits", "30"],
    &["preset", "--id", "balanced-shift", "--m", "5/2", "--n", "15"],
];

#[test]
fn json_output_validates_for_every_subcommand() {
    let v = schema();
    let mut seen = std::collections::BTreeSet::new();
    for case in JSON_CASES {
        let mut args = case.to_vec();
        args.extend(["--format", "json"]);
        let text = stdout(&args);
        let doc: Value = serde_json::from_str(&text).unwrap();
        let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{case:?}: {errors:?}\n{text}");
        seen.insert(doc["command"].as_str().unwrap().to_string());
    }
    assert_eq!(seen.len(), 8);
}

#[test]
fn schema_rejects_malformed_documents() {
    let v = schema();
    let good: Value = serde_json::from_str(&stdout(&["harmonic", "--n", "4", "--format", "json"])).unwrap();
    assert!(v.is_valid(&good));
    let mut bad = good.clone();
    bad["value"]["re"] = Value::String("2.08".into());
    assert!(!v.is_valid(&bad));
    let mut bad = good;
    bad.as_object_mut().unwrap().remove("formula_id");
    assert!(!v.is_valid(&bad));
}

#[test]
fn repeated_invocations_are_byte_identical() {
    for case in JSON_CASES {
        for format in ["text", "csv", "json"] {
            let mut args = case.to_vec();
            args.extend(["--format", format]);
            let a = faulsum(&args);
            let b = faulsum(&args);
            assert_eq!(a.stdout, b.stdout, "{args:?}");
            assert_eq!(a.status.code(), b.status.code());
        }
    }
}

#[test]
fn documented_examples() {
    let text = stdout(&["sum", "--m", "0.5", "--x", "1000.5", "--a", "2", "--digits", "40"]);
    let value = text.lines().next().unwrap();
    assert_eq!(value, "value        2.109745588748073535538527370185230216024e4");

    let text = stdout(&["preset", "--id", "zeta2-partial", "--n", "10", "--digits", "30"]);
    let tail: Vec<&str> = text.lines().skip_while(|l| *l != "coefficients").skip(1).map(str::trim).collect();
    assert_eq!(tail, ["1  1/2", "2  1/3", "3  1/2", "4  6/5"]);

    let csv = stdout(&["report", "--m", "0.5", "--n", "10", "--kmax", "12", "--format", "csv"]);
    let errs: Vec<f64> = csv.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(errs.len(), 12);
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn formatting_conventions() {
    let text = stdout(&["zeta", "--s", "1/2+14i", "--digits", "16"]);
    let value = text.lines().next().unwrap().trim_start_matches("value").trim();
    assert!(value.ends_with('i') && value.contains("e"), "{value}");
    assert!(!text.contains('E'));
    let exact = stdout(&["sum", "--m", "2", "--x", "10"]);
    assert!(exact.contains("exact        385\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(faulsum(&["sum", "--m", "1", "--x", "5", "--digits", "15"]).status.code(), Some(2));
    assert_eq!(faulsum(&["sum", "--m", "1", "--x", "5", "--terms", "4"]).status.code(), Some(2));
    assert_eq!(faulsum(&["sum", "--x", "5"]).status.code(), Some(2));
    assert_eq!(faulsum(&["frobnicate"]).status.code(), Some(2));
    let out = faulsum(&["sum", "--m", "1", "--x", "5", "--variant", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--variant"));
    assert_eq!(faulsum(&["sum", "--m", "1", "--x", "-3"]).status.code(), Some(2));

    let out = faulsum(&["sum", "--m", "-1.0000000000000000000000000000000000000000000000000000000001", "--x", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("power_sum") && msg.contains("harmonic"), "{msg}");
    assert_eq!(faulsum(&["zeta", "--s", "1"]).status.code(), Some(3));
    assert_eq!(faulsum(&["sum", "--m", "1/3", "--x", "50", "--terms", "8", "--shift", "none"]).status.code(), Some(3));
    assert_eq!(faulsum(&["--help"]).status.code(), Some(0));
}

#[test]
fn environment_defaults_yield_to_flags() {
    let run = |env: &[(&str, &str)], args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_faulsum"));
        c.args(args);
        for (k, v) in env {
            c.env(k, v);
        }
        String::from_utf8(c.output().unwrap().stdout).unwrap()
    };
    let from_env = run(&[("FAULSUM_DIGITS", "20"), ("FAULSUM_FORMAT", "csv")], &["harmonic", "--n", "7"]);
    let from_flags = run(&[], &["harmonic", "--n", "7", "--digits", "20", "--format", "csv"]);
    assert_eq!(from_env, from_flags);
    let flag_wins = run(&[("FAULSUM_DIGITS", "20")], &["harmonic", "--n", "7", "--digits", "30", "--format", "csv"]);
    let value = flag_wins.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    assert_eq!(value.split('e').next().unwrap().len(), 31);
}
