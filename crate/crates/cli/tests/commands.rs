use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use toric_chern_cli::{cmd_bundle, cmd_chern, cmd_cohomology, cmd_compare, cmd_equivariant, cmd_twist, cmd_validate, Format};

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).expect("machine output is JSON")
}

fn number(v: &Value, label: &str) -> i64 {
    v.as_array()
        .unwrap()
        .iter()
        .find(|n| n["label"] == label)
        .and_then(|n| n["value"].as_i64())
        .unwrap_or_else(|| panic!("no {label}"))
}

#[test]
fn compare_hirzebruch_one() {
    let out = cmd_compare(&data("p1.json"), &data("p1.json"), &data("phi-hirzebruch-1.json"), Format::Machine);
    assert_eq!(out.code, 0);
    let v = json(&out.text);
    assert_eq!(v["equal"], true);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(number(&v["intrinsic_numbers"], "c1^2"), 8);
    assert_eq!(number(&v["intrinsic_numbers"], "c2"), 4);
    let human = cmd_compare(&data("p1.json"), &data("p1.json"), &data("phi-hirzebruch-1.json"), Format::Human);
    assert!(human.text.contains("verdict: equal"));
}

#[test]
fn validate_incomplete_line() {
    let out = cmd_validate(&data("p1-incomplete.json"), Format::Machine);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out.text)["complete"], false);
    assert_eq!(cmd_validate(&data("p1.json"), Format::Human).code, 0);
}

#[test]
fn malformed_fans_give_field_diagnostics() {
    let out = cmd_validate(r#"{"dim": 2, "rays": [[1, 0], [0]], "max_cones": [[0, 1]]}"#, Format::Human);
    assert_eq!(out.code, 1);
    assert!(out.text.contains("rays[1]"), "{}", out.text);
    let out = cmd_validate("{\"dim\": 1,\n \"rays\": [[1]] ,\n \"max_cones\": [[0]], }", Format::Human);
    assert_eq!(out.code, 1);
    assert!(out.text.contains("line"), "{}", out.text);
    let out = cmd_validate(r#"{"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [5]]}"#, Format::Human);
    assert_eq!(out.code, 1);
    assert!(out.text.contains("max_cones[1]"), "{}", out.text);
}

#[test]
fn chern_hexagon() {
    let out = cmd_chern(&data("hexagon.json"), Format::Machine);
    assert_eq!(out.code, 0);
    let v = json(&out.text);
    assert_eq!(number(&v["chern_numbers"], "c1^2"), 6);
    assert_eq!(number(&v["chern_numbers"], "c2"), 6);
    assert_eq!(v["gauss_bonnet"], true);
}

#[test]
fn chern_on_incomplete_fan_is_a_validation_error() {
    assert_eq!(cmd_chern(&data("p1-incomplete.json"), Format::Human).code, 1);
}

#[test]
fn cohomology_p2() {
    let out = cmd_cohomology(&data("p2.json"), Format::Machine);
    assert_eq!(out.code, 0);
    let v = json(&out.text);
    assert_eq!(v["betti"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["h_vector"], serde_json::json!([1, 1, 1]));
}

#[test]
fn twist_output_is_a_fan_file() {
    let out = cmd_twist(&data("p1.json"), &data("p1.json"), &data("phi-hirzebruch-1.json"), Format::Human);
    assert_eq!(out.code, 0);
    let v = cmd_validate(&out.text, Format::Machine);
    assert_eq!(v.code, 0);
    assert_eq!(json(&v.text)["smooth"], true);
}

#[test]
fn wrong_phi_arity_is_rejected() {
    let out = cmd_compare(&data("p1.json"), &data("p2.json"), &data("phi-hirzebruch-1.json"), Format::Human);
    assert_eq!(out.code, 1, "{}", out.text);
}

#[test]
fn equivariant_quasitoric_square() {
    let out = cmd_equivariant(&data("pair-quasitoric-square.json"), None, Format::Machine);
    assert_eq!(out.code, 0, "{}", out.text);
    let v = json(&out.text);
    assert_eq!(v["masuda"]["all_pass"], true);
    assert_eq!(v["gkm_consistent"], true);
    assert_eq!(v["forget_matches_ordinary"], true);
    assert_eq!(cmd_equivariant(&data("pair-quasitoric-square.json"), Some(3), Format::Human).code, 1);
    assert_eq!(cmd_equivariant(&data("pair-quasitoric-square.json"), Some(2), Format::Human).code, 0);
}

#[test]
fn bundle_over_presented_p2_matches_twisted_fan() {
    let out = cmd_bundle(&data("base-p2.json"), &data("lambda-h.json"), &data("p1.json"), Format::Machine);
    assert_eq!(out.code, 0, "{}", out.text);
    let v = json(&out.text);
    // Blow-up of P^3 at a point.
    assert_eq!(number(&v["chern_numbers"], "c1^3"), 56);
    assert_eq!(number(&v["chern_numbers"], "c1*c2"), 24);
    assert_eq!(number(&v["chern_numbers"], "c3"), 6);
}

#[test]
fn bundle_over_grassmannian() {
    let out = cmd_bundle(&data("base-grassmannian-2-4.json"), &data("lambda-s1.json"), &data("p1.json"), Format::Machine);
    assert_eq!(out.code, 0, "{}", out.text);
    let v = json(&out.text);
    assert_eq!(v["euler_characteristic"], 12);
    assert_eq!(v["ranks"], serde_json::json!([1, 2, 3, 3, 2, 1]));
}

#[test]
fn bad_presentation_is_rejected() {
    let broken = data("base-p2.json").replace("\"h^3\"", "\"h^4\"");
    let out = cmd_bundle(&broken, &data("lambda-h.json"), &data("p1.json"), Format::Human);
    assert_eq!(out.code, 1, "{}", out.text);
}

#[test]
fn output_is_deterministic() {
    let a = cmd_compare(&data("p2.json"), &data("p2.json"), &data("phi-p2-over-p2.json"), Format::Machine);
    let b = cmd_compare(&data("p2.json"), &data("p2.json"), &data("phi-p2-over-p2.json"), Format::Machine);
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes_and_output_flag() {
    let bin = env!("CARGO_BIN_EXE_toric-chern");
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let status = Command::new(bin).arg("validate").arg(root.join("p1-incomplete.json")).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    let status = Command::new(bin).arg("validate").arg(root.join("missing.json")).output().unwrap();
    assert_eq!(status.status.code(), Some(1));

    let dir = std::env::temp_dir().join(format!("toric-chern-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let status = Command::new(bin)
        .args(["--format", "machine", "--output"])
        .arg(&report)
        .arg("compare")
        .arg(root.join("p1.json"))
        .arg(root.join("p1.json"))
        .arg(root.join("phi-hirzebruch-1.json"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert_eq!(json(&std::fs::read_to_string(&report).unwrap())["equal"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corpus_command_passes_and_exports() {
    let bin = env!("CARGO_BIN_EXE_toric-chern");
    let dir = std::env::temp_dir().join(format!("toric-chern-corpus-{}", std::process::id()));
    let out = Command::new(bin).args(["corpus", "--export"]).arg(&dir).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 7);
    assert!(dir.join("fan-hexagon.json").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn untwisted_bundle_over_grassmannian_is_a_product() {
    let out = cmd_bundle(&data("base-grassmannian-2-4.json"), r#"{"classes": ["0"]}"#, &data("p1.json"), Format::Machine);
    assert_eq!(out.code, 0, "{}", out.text);
    let v = json(&out.text);
    // c1 = 4 s1 + 2 p, and the integral of s1^4 is 2.
    assert_eq!(number(&v["chern_numbers"], "c1^5"), 5120);
    assert_eq!(number(&v["chern_numbers"], "c5"), 12);
}
