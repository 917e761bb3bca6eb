use std::path::PathBuf;
use std::process::{Command, Output};

use coincidence::format::parse_matrix;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn csl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csl"))
        .args(args)
        .output()
        .expect("run csl")
}

fn pair(cmd: &str, lattice: &str, matrix: &str) -> Output {
    csl(&[cmd, "--lattice", &fixture(lattice), "--matrix", &fixture(matrix)])
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn check_accepts_the_rhombic_rotation() {
    let out = pair("check", "rhombic_lattice.json", "rhombic_rotation.json");
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["sigma"], "21");
    assert_eq!(doc["csg_member"], true);
    assert_eq!(doc["oc_member"], true);
    assert_eq!(doc["M"]["rows"][0][0], "-9/7");
}

#[test]
fn check_of_identity_has_index_one() {
    let out = pair("check", "rhombic_lattice.json", "identity.json");
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["sigma"], "1");
}

#[test]
fn check_rejects_an_irrational_rotation_with_a_witness() {
    let out = pair("check", "identity.json", "rotation_45.json");
    assert_eq!(code(&out), 1);
    let doc = json(&out);
    assert_eq!(doc["csg_member"], false);
    assert_eq!(doc["orthogonal"], true);
    assert_eq!(doc["sigma"], Value::Null);
    assert_eq!(doc["irrational_entry"]["row"], "1");
    assert_eq!(doc["irrational_entry"]["value"], "0+1/2*sqrt(2)");
}

#[test]
fn check_separates_coincidence_symmetry_from_isometry() {
    let out = pair("check", "identity.json", "shear.json");
    assert_eq!(code(&out), 1);
    let doc = json(&out);
    assert_eq!(doc["csg_member"], true);
    assert_eq!(doc["oc_member"], false);
}

#[test]
fn index_reports_sigma() {
    let out = pair("index", "identity.json", "rotation_3_4_5.json");
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["sigma"], "5");
    let out = pair("index", "identity.json", "shear.json");
    assert_eq!(json(&out)["sigma"], "2");
}

#[test]
fn decompose_factors_the_rhombic_rotation() {
    let out = pair("decompose", "rhombic_lattice.json", "rhombic_rotation.json");
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["count"], "2");
    assert_eq!(doc["verified"], true);
    assert_eq!(doc["vectors"], serde_json::json!([["-4", "1"], ["2", "-3"]]));
    assert_eq!(doc["steps"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_of_identity_is_empty() {
    let out = pair("decompose", "rhombic_lattice.json", "identity.json");
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["count"], "0");
    assert_eq!(doc["vectors"], serde_json::json!([]));
}

#[test]
fn decompose_refuses_a_non_reflective_lattice() {
    let out = pair("decompose", "sqrt2_lattice.json", "identity.json");
    assert_eq!(code(&out), 1);
    let doc = json(&out);
    assert_eq!(doc["reflective"], false);
    assert_eq!(doc["witness"]["ratio"], "0+1/2*sqrt(2)");
}

#[test]
fn decompose_refuses_a_non_coincidence_map() {
    let out = pair("decompose", "identity.json", "rotation_45.json");
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["coincidence_isometry"], false);
}

#[test]
fn classify2d_covers_the_cases() {
    let out = csl(&["classify2d", "--a", "1", "--b2", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["case"], "1");

    let out = csl(&["classify2d", "--a", "1", "--b2", "0+1*sqrt(2)", "--d", "2"]);
    let doc = json(&out);
    assert_eq!(doc["case"], "2");
    assert_eq!(
        doc["generators"][0]["rows"],
        serde_json::json!([["-1", "-2"], ["0", "1"]])
    );

    let out = csl(&["classify2d", "--a", "0+1*sqrt(2)", "--b2", "0+1*sqrt(3)", "--d", "2"]);
    assert_eq!(code(&out), 2, "elements outside Q(sqrt(2)) are input errors");

    let out = csl(&["classify2d", "--a", "0+1*sqrt(2)", "--b2", "0+3*sqrt(2)", "--d", "2"]);
    let doc = json(&out);
    assert_eq!(doc["case"], "4");
    assert!(doc["group"].as_str().unwrap().contains("OC(L) = {±I}"));
}

#[test]
fn classify2d_spot_check_agrees_on_a_generic_lattice() {
    let out = csl(&[
        "classify2d",
        "--a",
        "1",
        "--b2",
        "2",
        "--spot-check",
        "40",
        "--seed",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["spot_check"]["consistent"], true);
    assert_eq!(doc["spot_check"]["trials"], "40");
}

#[test]
fn classify2d_rejects_non_positive_parameters() {
    let out = csl(&["classify2d", "--a", "0", "--b2", "1"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn census_starts_the_escape_chain() {
    let out = csl(&["census", "--rounds", "1"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let row = &doc["rounds"][0];
    assert_eq!(row["y"], "2");
    assert_eq!(row["new_prime"], "5");
    assert_eq!(row["budget"], serde_json::json!([]));

    let out = csl(&["census", "--rounds", "3", "--sequential"]);
    let doc = json(&out);
    let ys: Vec<&str> = doc["rounds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["y"].as_str().unwrap())
        .collect();
    assert_eq!(ys, ["2", "4", "5"]);
}

#[test]
fn census_rejects_zero_rounds() {
    assert_eq!(code(&csl(&["census", "--rounds", "0"])), 2);
}

#[test]
fn structured_matrices_reparse_exactly() {
    let out = pair("decompose", "rhombic_lattice.json", "rhombic_rotation.json");
    let doc = json(&out);
    let product = parse_matrix(&doc["product"].to_string()).unwrap();
    let original = parse_matrix(&std::fs::read_to_string(fixture("rhombic_rotation.json")).unwrap()).unwrap();
    assert_eq!(product, original);
}

#[test]
fn human_output_carries_the_same_content() {
    let args = |mode: &'static str| {
        vec![
            "--output".to_string(),
            mode.to_string(),
            "check".to_string(),
            "--lattice".to_string(),
            fixture("rhombic_lattice.json"),
            "--matrix".to_string(),
            fixture("rhombic_rotation.json"),
        ]
    };
    let run = |mode| {
        let a = args(mode);
        csl(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let structured = run("structured");
    let human = run("human");
    assert_eq!(code(&structured), code(&human));
    let text = String::from_utf8(human.stdout).unwrap();
    for line in [
        "sigma: 21",
        "oc member: yes",
        "M: [[-9/7, -4/7], [4/7, -11/21]]",
        "intersection basis: [[3, 0], [1, 7]]",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
    let doc = json(&structured);
    assert_eq!(text.lines().count(), doc.as_object().unwrap().len());
}

#[test]
fn parallel_and_sequential_output_agree() {
    let par = csl(&["classify2d", "--a", "1", "--b2", "2", "--spot-check", "30"]);
    let seq = csl(&[
        "--sequential",
        "classify2d",
        "--a",
        "1",
        "--b2",
        "2",
        "--spot-check",
        "30",
    ]);
    assert_eq!(par.stdout, seq.stdout);
}

#[test]
fn parse_errors_report_a_position() {
    let out = pair("check", "rhombic_lattice.json", "malformed_scalar.json");
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("rows[1][1]") && err.contains("offset"), "{err}");

    let out = pair("check", "truncated.json", "identity.json");
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
}

#[test]
fn missing_files_are_input_errors() {
    let out = csl(&[
        "index",
        "--lattice",
        "/nonexistent.json",
        "--matrix",
        "/nonexistent.json",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("cannot read"));
}
