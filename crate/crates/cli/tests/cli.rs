use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn hypred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypred")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn fixture_arg(name: &str) -> String {
    fixture(name).display().to_string()
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn invariants_of_gm21_surface() {
    let out = hypred(&["invariants", "GM21_F"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = &v["result"]["computed"];
    assert_eq!((c["chi_o"].as_i64(), c["euler"].as_i64(), c["k2"].as_i64()), (Some(7), Some(68), Some(16)));
    assert_eq!(v["result"]["expected"]["k2"], 16);
    assert_eq!(v["result"]["matches"], true);
    assert_eq!(v["tool"], "hypred");
    assert_eq!(v["seed"], 1);
    assert_eq!(v["prime"], 10007);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn invariants_of_c4_surface() {
    let v = json(&hypred(&["invariants", "C4_R62_F"]));
    assert_eq!(v["result"]["computed"]["chi_o"], 6);
}

#[test]
fn unknown_scene_is_a_usage_error() {
    let out = hypred(&["invariants", "bogus"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown scene"));
}

#[test]
fn small_and_composite_primes_are_rejected() {
    for p in ["3", "2", "10005", "4611686018427387904"] {
        let out = hypred(&["--prime", p, "verify-all"]);
        assert_eq!(out.status.code(), Some(64), "prime {p}");
    }
    let out = hypred(&["verify-all", "--primes", "10007,9"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(hypred(&["--help"]).status.code(), Some(0));
    assert_eq!(hypred(&["--version"]).status.code(), Some(0));
    assert_eq!(hypred(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(hypred(&["nodes"]).status.code(), Some(64));
}

#[test]
fn reduce_fixture_along_o1_gives_the_plane_form() {
    let out = hypred(&["reduce", "--form", &fixture_arg("y_c4_r62.json"), "--direction", "e5"]);
    assert_eq!(out.status.code(), Some(0));
    let expected: Value = serde_json::from_str(&std::fs::read_to_string(fixture("c4_with_plane.json")).unwrap()).unwrap();
    assert_eq!(json(&out), expected);
}

#[test]
fn fixture_stores_the_half_entry_as_a_residue() {
    let y: Value = serde_json::from_str(&std::fs::read_to_string(fixture("y_c4_r62.json")).unwrap()).unwrap();
    assert_eq!(y["entries"][0][4], "5003*x3");
    assert_eq!(y["field"]["p"], 10007);
}

#[test]
fn generate_reproduces_the_fixture() {
    let out = hypred(&["generate", "--family", "Y_C4_R62"]);
    let y: Value = serde_json::from_str(&std::fs::read_to_string(fixture("y_c4_r62.json")).unwrap()).unwrap();
    assert_eq!(json(&out), y);
}

#[test]
fn malformed_form_is_a_parse_error() {
    let path = tmp("malformed.json");
    std::fs::write(&path, "{ \"base\": ").unwrap();
    let out = hypred(&["discriminant", "--form", &path.display().to_string()]);
    assert_eq!(out.status.code(), Some(65));
    let path = tmp("bad_poly.json");
    let mut y: Value = serde_json::from_str(&std::fs::read_to_string(fixture("y_c4_r62.json")).unwrap()).unwrap();
    y["entries"][1][1] = Value::String("x0 +* x1".into());
    std::fs::write(&path, y.to_string()).unwrap();
    let out = hypred(&["discriminant", "--form", &path.display().to_string()]);
    assert_eq!(out.status.code(), Some(65));
    let out = hypred(&["nodes", "--form", "/nonexistent/form.json"]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn rational_forms_have_discriminants_but_no_node_counts() {
    let path = tmp("rational_plane.json");
    let mut q: Value = serde_json::from_str(&std::fs::read_to_string(fixture("c4_with_plane.json")).unwrap()).unwrap();
    q["field"] = Value::String("Q".into());
    std::fs::write(&path, q.to_string()).unwrap();
    let arg = path.display().to_string();
    let out = hypred(&["discriminant", "--form", &arg]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["discriminant"]["degree"], 5);
    assert_eq!(hypred(&["nodes", "--form", &arg]).status.code(), Some(2));
}

#[test]
fn discriminant_output_is_deterministic() {
    let a = hypred(&["discriminant", "--family", "GM21", "--seed", "2"]);
    let b = hypred(&["discriminant", "--family", "GM21", "--seed", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["result"]["discriminant"]["degree"], 4);
}

#[test]
fn nodes_of_c4_family() {
    let out = hypred(&["nodes", "--family", "C4", "--seed", "3", "--prime", "31991"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["report"]["total"], 16);
    assert_eq!(v["result"]["report"]["reduced"], true);
    assert_eq!(v["result"]["pass"], true);
    assert_eq!(v["prime"], 31991);
    assert_eq!(v["seed"], 3);
}

#[test]
fn nodes_of_a_form_file() {
    let out = hypred(&["nodes", "--form", &fixture_arg("y_c4_r62.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["report"]["total"], 16);
}

#[test]
fn demo_pairs() {
    let v = json(&hypred(&["demo-pair", "c4-r62", "--seed", "1"]));
    assert_eq!(v["result"]["invariance"]["pass"], true);
    assert_eq!(v["result"]["nodes"]["report"]["total"], 16);
    let v = json(&hypred(&["demo-pair", "gm21-k335", "--seed", "1"]));
    assert_eq!(v["result"]["nodes"]["report"]["total"], 20);
    assert_eq!(v["result"]["invariance"]["divisor_identified_as"], "l1 = 0");
    let v = json(&hypred(&["demo-pair", "gm20-k331", "--seed", "1"]));
    assert_eq!(v["result"]["invariance"]["pass"], true);
    assert_eq!(v["result"]["discriminant"]["degree"], 6);
    assert_eq!(hypred(&["demo-pair", "nope"]).status.code(), Some(64));
}

#[test]
fn text_format_renders_the_same_fields() {
    let out = hypred(&["--format", "text", "invariants", "GM20_F"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tool: hypred"));
    assert!(text.contains("  scene: GM20_F"));
    assert!(text.contains("k2: 48"));
}

#[test]
fn out_flag_writes_a_file() {
    let path = tmp("report.json");
    let out = hypred(&["invariants", "K3_35_F", "--out", &path.display().to_string()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["computed"]["euler"], 68);
}

#[test]
fn verify_all_reports_every_item_and_fails_on_xiao() {
    let out = hypred(&["verify-all"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let items = v["result"]["items"].as_array().unwrap();
    let ids: Vec<&str> = items.iter().map(|i| i["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(items.len(), 7);
    for item in items {
        let failed: Vec<&str> = item["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["pass"] == false)
            .map(|c| c["name"].as_str().unwrap())
            .collect();
        assert!(failed.iter().all(|n| n.contains("Xiao")), "{failed:?}");
    }
    assert_eq!(v["primes"], serde_json::json!([10007, 31991]));
}
