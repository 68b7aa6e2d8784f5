use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn catalog_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog")
}

fn run(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["toric"];
    argv.extend_from_slice(args);
    let out = toric_cli::run(argv);
    let v = serde_json::from_str(&out.stdout).expect("stdout is one JSON document");
    (out.code, v)
}

fn exe(args: &[&str], env: &[(&str, &str)]) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_toric"));
    cmd.args(args).env_remove("TORIC_BOX_RADIUS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn fan_props_on_p2() {
    let (code, v) = run(&["fan-props", "--fan", &fixture("p2.json")]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"complete": true, "full": true, "simplicial": true}));
}

#[test]
fn broken_fan_exits_3() {
    let (code, v) = run(&["fan-validate", "--fan", &fixture("broken.json")]);
    assert_eq!(code, 3);
    assert_eq!(v["error"], "INVALID_FAN");
    assert!(v["detail"].is_string());
}

#[test]
fn sgcheck_on_p2() {
    let (code, v) = run(&[
        "sgcheck",
        "--fan",
        &fixture("p2.json"),
        "--module",
        &fixture("S.json"),
        "--degrees",
        "-4..4",
        "--base",
        "QQ",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 9);
}

#[test]
fn sgcheck_quotients_over_z() {
    for m in ["S_minus3.json", "S_mod_I2.json", "S_mod_Q.json"] {
        let (code, v) = run(&[
            "sgcheck",
            "--fan",
            &fixture("p2.json"),
            "--module",
            &fixture(m),
            "--degrees",
            "-4..4",
            "--base",
            "ZZ",
        ]);
        assert_eq!((code, &v["all_pass"]), (0, &json!(true)), "{m}");
    }
}

#[test]
fn p1_h1_of_minus_two() {
    let (code, v) = run(&[
        "cohomology",
        "--fan",
        &fixture("p1.json"),
        "--module",
        &fixture("S.json"),
        "--degree-divisor",
        "-2,0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["H"][1]["rank"], 1);
    assert_eq!(v["H"][0]["rank"], 0);
}

#[test]
fn prime_field_base() {
    let args = |base: &'static str| {
        vec![
            "cohomology".to_string(),
            "--fan".into(),
            fixture("p2.json"),
            "--module".into(),
            fixture("S.json"),
            "--degree-divisor".into(),
            "2,0,0".into(),
            "--base".into(),
            base.into(),
        ]
    };
    let mut a = vec!["toric".to_string()];
    a.extend(args("Fp"));
    a.extend(["--prime".to_string(), "7".to_string()]);
    let out = toric_cli::run(a);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["H"][0]["rank"], 6);
    assert_eq!(v["base"], "F7");

    let mut a = vec!["toric".to_string()];
    a.extend(args("F4"));
    assert_eq!(toric_cli::run(a).code, 2);
}

#[test]
fn output_round_trips_and_is_deterministic() {
    let p2 = fixture("p2.json");
    let s = fixture("S.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["fan-validate", "--fan", &p2],
        vec!["cox-grading", "--fan", &p2],
        vec!["cox-irrelevant", "--fan", &p2],
        vec!["chart", "--fan", &p2, "--rays", "0,1"],
        vec!["pic", "--fan", &p2],
        vec!["scheme-report", "--fan", &p2, "--ring", "ZZ"],
        vec!["localcoh", "--fan", &p2, "--module", &s, "--degree", "-3"],
    ];
    for args in cases {
        let mut argv = vec!["toric"];
        argv.extend_from_slice(&args);
        let a = toric_cli::run(argv.clone());
        let b = toric_cli::run(argv);
        assert_eq!(a.code, 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout);
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(toric_cli::json::render(&v), a.stdout);
    }
}

#[test]
fn input_errors_exit_2() {
    let p2 = fixture("p2.json");
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["fan-props", "--fan", &p2, "--colour", "red"]).0, 2);
    assert_eq!(run(&["fan-props", "--fan", "/no/such/file.json"]).0, 2);
    let (code, v) = run(&["fan-props", "--fan", "{\"ambient_rank\": 2, \"rays\": [[0,0]], \"maximal_cones\": [[0]]}"]);
    assert_eq!((code, v["error"].as_str()), (2, Some("INVALID_INPUT")));
    let (code, _) = run(&["fan-props", "--fan", "{\"ambient_rank\": 2, \"shape\": 1, \"maximal_cones\": []}"]);
    assert_eq!(code, 2);
}

#[test]
fn preconditions_exit_3() {
    let s = fixture("S.json");
    let (code, v) = run(&[
        "cohomology",
        "--fan",
        &fixture("single_ray.json"),
        "--module",
        &s,
        "--degree",
        "",
    ]);
    assert_eq!((code, v["error"].as_str()), (3, Some("NOT_FULL")));

    let (code, v) = run(&["cox-irrelevant", "--fan", &fixture("p2.json"), "--subgroup", "0"]);
    assert_eq!((code, v["error"].as_str()), (3, Some("NOT_BIG")));

    // the degree-zero piece of the orthant is the whole polynomial ring
    let (code, v) = run(&[
        "cohomology",
        "--fan",
        &fixture("orthant.json"),
        "--module",
        &s,
        "--degree",
        "",
    ]);
    assert_eq!((code, v["error"].as_str()), (3, Some("BOX_UNSTABLE")));
}

#[test]
fn degree_outside_subgroup_exits_2() {
    let (code, v) = run(&[
        "cohomology",
        "--fan",
        &fixture("p2.json"),
        "--module",
        &fixture("S.json"),
        "--subgroup",
        "3",
        "--degree-divisor",
        "1,0,0",
    ]);
    assert_eq!((code, v["error"].as_str()), (2, Some("DEGREE_NOT_IN_B")));
}

#[test]
fn subgroup_report() {
    let (code, v) = run(&["cox-subgroup", "--fan", &fixture("p2.json"), "--gens", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["big"], true);
    assert_eq!(v["small"], true);
    assert_eq!(v["restriction_exponent"], 3);
    let (_, v) = run(&["cox-subgroup", "--fan", &fixture("a1.json"), "--gens", "1"]);
    assert_eq!((&v["big"], &v["small"]), (&json!(true), &json!(false)));
}

#[test]
fn saturate_default_uses_irrelevant_ideal() {
    let (code, v) = run(&[
        "saturate",
        "--fan",
        &fixture("p2.json"),
        "--ideal",
        "[[2,0,0],[1,1,0],[1,0,1]]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["saturation"], json!([[1, 0, 0]]));
    assert_eq!(v["already_saturated"], false);
}

#[test]
fn scheme_report_with_ring_object() {
    let ring = r#"{"reduced": true, "noetherian": true, "dim": 0, "equidimensional": true}"#;
    let (code, v) = run(&["scheme-report", "--fan", &fixture("orthant.json"), "--ring", ring]);
    assert_eq!(code, 0);
    assert_eq!(v["proper"], false);
    assert_eq!(v["reduced"], true);
    assert_eq!(v["dim_lower"], 2);
    assert_eq!(v["irreducible"], "unknown");
}

#[test]
fn huge_integers_use_bigint_strings() {
    let fan = r#"{"ambient_rank": 2, "rays": [[1, {"format": "bigint-string", "value": "100000000000000000000"}]], "maximal_cones": [[0]]}"#;
    let (code, v) = run(&["fan-validate", "--fan", fan]);
    assert_eq!(code, 0);
    assert_eq!(
        v["fan"]["rays"][0][1],
        json!({"format": "bigint-string", "value": "100000000000000000000"})
    );
}

#[test]
fn out_flag_is_the_only_writer() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let p2 = fixture("p2.json");
    let out = toric_cli::run(["toric", "fan-props", "--fan", &p2]);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    let written = toric_cli::run([
        "toric",
        "fan-props",
        "--fan",
        &p2,
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(written.stdout, out.stdout);
    assert_eq!(fs::read_to_string(&target).unwrap(), out.stdout);
}

#[test]
fn box_radius_from_environment() {
    let args = [
        "cohomology",
        "--fan",
        &fixture("p2.json"),
        "--module",
        &fixture("S.json"),
        "--degree-divisor",
        "1,0,0",
    ];
    let (code, stdout) = exe(&args, &[("TORIC_BOX_RADIUS", "9")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["box_radius"], 9);
    assert_eq!(v["H"][0]["rank"], 3);
    let (code, _) = exe(&args, &[("TORIC_BOX_RADIUS", "nine")]);
    assert_eq!(code, 2);
}

#[test]
fn binary_exit_codes() {
    assert_eq!(exe(&["fan-props", "--fan", &fixture("p2.json")], &[]).0, 0);
    assert_eq!(exe(&["fan-validate", "--fan", &fixture("broken.json")], &[]).0, 3);
    assert_eq!(exe(&["nope"], &[]).0, 2);
    assert_eq!(exe(&["--help"], &[]).0, 0);
}

#[test]
fn catalog_runs_clean() {
    let (code, v) = run(&["catalog-run"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["all_pass"], true);
    let (code, from_dir) = run(&["catalog-run", "--dir", catalog_dir().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(from_dir, v);
}

#[test]
fn empty_catalog_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let (code, v) = run(&["catalog-run", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!((code, v["error"].as_str()), (2, Some("INVALID_INPUT")));
}

#[test]
fn corrupted_expectation_reports_a_diff() {
    let dir = tempfile::tempdir().unwrap();
    let mut entry: Value =
        serde_json::from_str(&fs::read_to_string(catalog_dir().join("p2.json")).unwrap()).unwrap();
    entry["expect"]["picard_index"] = json!(5);
    fs::write(dir.path().join("p2.json"), entry.to_string()).unwrap();
    let (code, v) = run(&["catalog-run", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["all_pass"], false);
    assert_eq!(v["failed"], 1);
    let failure = &v["entries"][0]["failures"][0];
    assert_eq!(failure["key"], "picard_index");
    assert_eq!(failure["expected"], 5);
    assert_eq!(failure["actual"], 1);
}
