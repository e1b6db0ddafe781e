use std::process::{Command, Output};

use serde_json::Value;

fn stanley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stanley")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = stanley(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

const DISJOINT: &str = "[x1*x3, x1*x4, x1*x5, x2*x3, x2*x4, x2*x5]";

#[test]
fn depth_of_a_cyclic_module() {
    let (code, v) = json(&["depth", "--ring", "x,y,z", "--ideal", "[x*y, y*z]"]);
    assert_eq!(code, 0);
    let r = &v["verdicts"]["depth_report"];
    assert_eq!(r["depth"], 1);
    assert_eq!(r["dim"], 2);
    assert_eq!(r["is_cm"], false);
}

#[test]
fn depth_in_characteristic_two() {
    let (code, v) = json(&["depth", "--n", "2", "--char", "2", "--ideal", "[x1^2, x2]"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["depth_report"]["depth"], 0);
    assert_eq!(v["verdicts"]["depth_report"]["field_char"], 2);
}

#[test]
fn check_stanley_on_disjoint_planes() {
    let (code, v) = json(&["check-stanley", "--n", "5", "--ideal", DISJOINT]);
    assert_eq!(code, 0);
    let d = &v["verdicts"];
    assert_eq!(d["depth"], 1);
    assert_eq!(d["sdepth"], 2);
    assert_eq!(d["stanley_ideal"], true);
    assert_eq!(d["verdict"]["valid"], true);
    assert!(d["report"]["sdepth_lb"].as_u64().unwrap() >= 1);
}

#[test]
fn check_stanley_without_exact_search() {
    let (code, v) = json(&["check-stanley", "--n", "5", "--ideal", DISJOINT, "--no-exact"]);
    assert_eq!(code, 0);
    assert!(v["verdicts"].get("sdepth").is_none());
}

#[test]
fn exhausted_budget_reports_null_sdepth() {
    let (code, v) = json(&["check-stanley", "--n", "5", "--ideal", DISJOINT, "--search-cap", "1"]);
    assert_eq!(code, 0, "{v}");
    assert!(v["verdicts"]["sdepth"].is_null());
    assert!(v["verdicts"]["sdepth_unresolved"].is_string());
}

#[test]
fn verify_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = stanley(&[
        "filtrate", "--mode", "clean-cm2", "--ring", "x,y,z", "--ideal", "[x*y]", "--mod-ideal", "[x, z^2]", "--json",
    ]);
    assert!(out.status.success());
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stanley(&["verify", "--certificate", p]).status.code(), Some(0));

    let mut cert: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cert["verdicts"]["verdict"]["clean"], true);
    cert["verdicts"]["verdict"]["fdepth"] = Value::from(3);
    std::fs::write(&path, serde_json::to_vec(&cert).unwrap()).unwrap();
    let (code, v) = json(&["verify", "--certificate", p]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "verify-mismatch");
}

#[test]
fn verify_rejects_unnormalized_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = stanley(&["depth", "--n", "2", "--ideal", "[x1]", "--json"]);
    let mut cert: Value = serde_json::from_slice(&out.stdout).unwrap();
    cert["job"]["ring"]["characteristic"] = Value::from(4);
    std::fs::write(&path, serde_json::to_vec(&cert).unwrap()).unwrap();
    let (code, v) = json(&["verify", "--certificate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "malformed");
}

#[test]
fn corpus_small_sweep() {
    let (code, v) = json(&["corpus", "--seed", "0", "--count", "10", "--n", "3", "--max-degree", "2"]);
    assert_eq!(code, 0);
    let s = &v["verdicts"];
    assert_eq!(s["instances"], 10);
    assert_eq!(s["certified"], 10);
    let hist: Vec<u64> = serde_json::from_value(s["gap_histogram"].clone()).unwrap();
    assert_eq!(hist.iter().sum::<u64>(), 10);
}

#[test]
fn corpus_of_size_zero() {
    let (code, v) = json(&["corpus", "--count", "0", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["certified"], 0);
    assert_eq!(v["verdicts"]["gap_histogram"], Value::Array(vec![]));
}

#[test]
fn corpus_rejects_six_variables() {
    let (code, v) = json(&["corpus", "--count", "1", "--n", "6"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "domain");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["corpus", "--seed", "3", "--count", "20", "--n", "4", "--json"][..],
        &["check-stanley", "--n", "5", "--ideal", DISJOINT, "--json"][..],
        &["primary-dec", "--n", "3", "--ideal", "[x1^2*x2, x2*x3]"][..],
    ] {
        let a = stanley(args);
        let b = stanley(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let (_, plain) = json(&["depth", "--n", "2", "--ideal", "[x1]"]);
    assert!(plain.get("timing_ms").is_none());
    let (_, timed) = json(&["depth", "--n", "2", "--ideal", "[x1]", "--timing"]);
    assert!(timed["timing_ms"].is_number());
}

#[test]
fn error_kinds_and_exit_codes() {
    let cases: [(&[&str], &str, i32); 5] = [
        (&["depth", "--n", "2", "--ideal", "[x1*q]"], "parse", 2),
        (&["depth", "--ring", "x,y", "--ideal", "[x]", "--mod-ideal", "[y]"], "precondition", 3),
        (&["check-stanley", "--n", "6", "--ideal", "[x1*x2]"], "domain", 3),
        (&["decompose", "--method", "two-var", "--n", "3", "--ideal", "[x1]"], "domain", 3),
        (&["filtrate", "--mode", "pretty-clean", "--n", "4", "--ideal", "[x1*x2, x1*x3, x2*x3*x4]"], "", 0),
    ];
    for (args, kind, code) in cases {
        let (got, v) = json(args);
        assert_eq!(got, code, "{args:?}: {v}");
        if code != 0 {
            assert_eq!(v["error"]["kind"], kind, "{args:?}");
        }
    }
}

#[test]
fn polarization_identity_from_the_command_line() {
    let (code, v) = json(&["polarize", "--full", "--n", "3", "--ideal", "[x1^2*x2, x3^3]"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["identity_holds"], true);
    assert_eq!(v["verdicts"]["added_vars"], 3);

    let (code, v) = json(&["polarize", "--n", "3", "--ideal", "[x1^2*x2, x2^2*x3]"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["inequality_holds"], true);
}

#[test]
fn two_variable_formula_command() {
    let (code, v) = json(&["decompose", "--method", "two-var", "--ring", "x,y", "--ideal", "[x^3, x*y, y^2]"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["verdict"]["valid"], true);
    assert_eq!(v["verdicts"]["verdict"]["sdepth"], 1);
}

#[test]
fn text_output_names_the_depth() {
    let out = stanley(&["depth", "--ring", "x,y,z", "--ideal", "[x*y, y*z]"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("depth 1\n"), "{text}");
}

#[test]
fn golden_examples_all_pass() {
    let (code, v) = json(&["golden"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["verdicts"]["passed"], v["verdicts"]["total"]);
    assert!(v["verdicts"]["total"].as_u64().unwrap() >= 25);
}

#[test]
fn clean_mode_picks_a_construction() {
    let (code, v) = json(&["filtrate", "--mode", "clean", "--n", "3", "--ideal", "[x1*x2]", "--mod-ideal", "[x1*x2, x1*x3, x3^2]"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["construction"], "clean-cm2");
    assert_eq!(v["verdicts"]["verdict"]["clean"], true);

    let (code, v) = json(&["filtrate", "--mode", "clean", "--n", "3", "--ideal", "[x1^2, x2]"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["construction"], "clean-dim1");

    // mixed dimensions, not CM: S/(x1x2, x1x3) = S/((x1) ∩ (x2,x3)) is clean by search
    let (code, v) = json(&["filtrate", "--mode", "clean", "--n", "3", "--ideal", "[x1*x2, x1*x3]"]);
    assert_eq!(code, 0);
    assert!(v["verdicts"].get("construction").is_none());
    assert_eq!(v["verdicts"]["verdict"]["clean"], true);
}
