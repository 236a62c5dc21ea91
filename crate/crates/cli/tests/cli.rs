use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ci-kernel"))
        .args(args)
        .env_remove("CI_KERNEL_SLOW")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

fn stderr(args: &[&str]) -> String {
    String::from_utf8(run(args).stderr).unwrap()
}

#[test]
fn catalog_run_gaussoid_binary_verifies() {
    let (c, v) = json(&["catalog-run", "gaussoid-binary"]);
    assert_eq!(c, 0);
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["intersection_equal"], true);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
}

#[test]
fn printed_four_cycle_claim_fails_cleanly() {
    let (c, v) = json(&["catalog-run", "four-cycle-binary-printed"]);
    assert_eq!(c, 1);
    assert_eq!(v["verdict"], "failed");
}

#[test]
fn catalog_run_all_meets_expectations() {
    let (c, v) = json(&["catalog-run", "--all", "--workers", "2", "--no-timings"]);
    assert_eq!(c, 0);
    assert_eq!(v["all_as_expected"], true);
    let names: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["claim"].as_str().unwrap()).collect();
    assert_eq!(names[0], "gaussoid-binary");
    assert!(v["skipped"].as_array().unwrap().iter().any(|s| s == "four-cycle-general-23"));
}

#[test]
fn slow_claims_need_the_flag() {
    assert_eq!(code(&["catalog-run", "intersection-axiom-223"]), 2);
    assert_eq!(code(&["catalog-run", "intersection-axiom-223", "--slow"]), 0);
}

#[test]
fn catalog_list_is_complete() {
    let (c, v) = json(&["catalog-list"]);
    assert_eq!(c, 0);
    assert_eq!(v.as_array().unwrap().len(), 12);
}

#[test]
fn tsep_finds_the_figure_certificate() {
    let (c, v) = json(&["tsep", "--graph", &fixture("fig1.json"), "--A", "1,2", "--B", "3,4"]);
    assert_eq!(c, 0);
    assert_eq!(v["certificate"]["C_A"], serde_json::json!([]));
    assert_eq!(v["certificate"]["C_B"], serde_json::json!([3]));
    assert_eq!(v["minor_vanishes"], true);
    // no certificate for a generic pair
    assert_eq!(code(&["tsep", "--graph", &fixture("fig1.json"), "--A", "1,2", "--B", "2,4"]), 1);
}

#[test]
fn cyclic_mixed_graph_is_rejected() {
    assert_eq!(code(&["tsep", "--graph", &fixture("cyclic.json"), "--A", "1", "--B", "2"]), 2);
}

#[test]
fn trek_rule_matches_matrix_formula() {
    let (c, v) = json(&["trek-sigma", "--graph", &fixture("fig1.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["matches_matrix_formula"], true);
    let (_, v) = json(&["trek-sigma", "--graph", &fixture("fig1.json"), "--pair", "1,4"]);
    assert_eq!(v["treks"].as_array().unwrap().len(), 2);
}

#[test]
fn membership_exit_codes() {
    assert_eq!(code(&["member", "--ring", "x, y", "--ideal", "<x, y>", "--poly", "1"]), 1);
    assert_eq!(code(&["member", "--ring", "x, y", "--ideal", "<x, y>", "--poly", "x*y + y^2"]), 0);
    assert_eq!(code(&["member", "--problem", &fixture("problem.json")]), 0);
    let radical = ["member", "--ring", "x, y", "--ideal", "<x^2, x*y>", "--poly", "x"];
    assert_eq!(code(&radical), 1);
    let mut with = radical.to_vec();
    with.push("--radical");
    assert_eq!(code(&with), 0);
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["gb", "--ring", "x"]), 2);
    assert_eq!(code(&["gb", "--ring", "x", "--ideal", "<x>", "--order", "weird"]), 2);
    assert_eq!(code(&["gb", "--problem", "/nonexistent/problem.json"]), 2);
    assert_eq!(code(&["catalog-run", "no-such-claim"]), 2);
}

#[test]
fn parse_errors_are_located() {
    let e = stderr(&["gb", "--ring", "x, y", "--ideal", "<x + * y>"]);
    assert!(e.contains("position 5"), "{e}");
    assert!(e.contains("\n       ^"), "{e}");
    let e = stderr(&["gb", "--problem", &fixture("broken.json")]);
    assert!(e.contains("broken.json:4:"), "{e}");
}

#[test]
fn discrete_model_file_gives_eight_variables() {
    let (c, v) = json(&["ci-ideal", "--model", &fixture("model222.json"), "--stmt", r#"{"A":[1],"B":[3],"C":[2]}"#]);
    assert_eq!(c, 0);
    assert_eq!(v["ring"]["variables"].as_array().unwrap().len(), 8);
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn gaussian_ci_and_alternative_generators() {
    let (c, v) = json(&["gauss-ci", "--m", "3", "--stmt", r#"[{"A":[1],"B":[3],"C":[2]},{"A":[1],"B":[3]}]"#, "--gb"]);
    assert_eq!(c, 0);
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
    assert_eq!(v["groebner_basis"], serde_json::json!(["s_1_2*s_2_3", "s_1_3"]));
    let (_, v) = json(&["gauss-ci", "--m", "4", "--stmt", r#"{"A":[1,2],"B":[3,4],"C":[]}"#, "--alt"]);
    assert_eq!(v["alternative"]["equal"], true);
}

#[test]
fn ideal_operations() {
    let (_, v) = json(&["intersect", "--ring", "x, y", "--ideal", "<x>", "--ideal", "<y>"]);
    assert_eq!(v["groebner_basis"], serde_json::json!(["x*y"]));
    let (_, v) = json(&["eliminate", "--problem", &fixture("problem.json"), "--vars", "x"]);
    assert_eq!(v["ring"]["variables"], serde_json::json!(["y", "z"]));
    assert_eq!(v["groebner_basis"], serde_json::json!(["y^3 - z^2"]));
    let (_, v) = json(&["saturate", "--ring", "x, y", "--ideal", "<x^2*y, x*y^2>", "--poly", "x"]);
    assert_eq!(v["groebner_basis"], serde_json::json!(["y"]));
}

#[test]
fn toric_outputs() {
    let (c, v) = json(&["toric", "--matrix", "[[3,2,1,0],[0,1,2,3]]"]);
    assert_eq!(c, 0);
    // twisted cubic
    assert_eq!(v["groebner_basis"].as_array().unwrap().len(), 3);
    let out = run(&["toric", "--graph", r#"{"vertices":3,"edges":[[1,2],[2,3]]}"#, "--csv"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 8);
    assert!(csv.lines().all(|l| l.split(',').count() == 8));
}

#[test]
fn verify_distinguishes_equality_from_radical_containment() {
    let (c, v) = json(&["verify", "--claim", &fixture("embedded_claim.json")]);
    assert_eq!(c, 1);
    assert_eq!(v["intersection_equal"], false);
    assert_eq!(v["radical_contained"], true);
    let claim = r#"{"name":"e","ring":"x, y","target":"<x^2, x*y>","components":[{"name":"P","ideal":"<x>"}],"expectation":"containment-only"}"#;
    let (c, v) = json(&["verify", "--claim", claim]);
    assert_eq!(c, 0);
    assert_eq!(v["verdict"], "verified");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--json", "--no-timings", "catalog-run", "contraction-binary"],
        vec!["--json", "ci-ideal", "--model", r#"{"type":"discrete","sizes":[2,3,2]}"#, "--stmt", r#"{"A":[1],"B":[3]}"#, "--gb"],
        vec!["--json", "--no-timings", "catalog-run", "--all", "--workers", "3"],
    ] {
        let a = run(&args).stdout;
        let b = run(&args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
    let (_, v) = json(&["--no-timings", "catalog-run", "embedded-minimal-prime"]);
    assert!(v.get("millis").is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // f*g is always a member of <g>; f*g + 1 never is unless <g> is the unit ideal
    #[test]
    fn exit_code_contract_for_membership(a in 1u32..4, b in 0u32..3, c in -3i32..4) {
        let g = format!("x^{a}*y + ({c})");
        let f = format!("(x + y^{b}) * ({g})");
        prop_assert_eq!(code(&["member", "--ring", "x, y", "--ideal", &format!("<{g}>"), "--poly", &f]), 0);
        let shifted = format!("{f} + x");
        prop_assert_eq!(code(&["member", "--ring", "x, y", "--ideal", &format!("<{g}>"), "--poly", &shifted]), 1);
    }
}
