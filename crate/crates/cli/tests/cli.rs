use std::fs;

use assert_cmd::Command;
use serde_json::Value;

fn susyw() -> Command {
    let mut c = Command::cargo_bin("susyw").unwrap();
    c.env_remove("SUSYW_FLOOR");
    c
}

fn stdout(args: &[&str]) -> String {
    let out = susyw().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn generate_gl21_text_golden() {
    let out = stdout(&["generate", "--family", "gl", "--variant", "n+1", "--n", "1"]);
    assert_eq!(out, golden("gl_n+1_1.txt"));
}

#[test]
fn generate_osp22_text_golden() {
    let out = stdout(&["generate", "--family", "osp", "--variant", "2n|2n", "--n", "1"]);
    assert_eq!(out, golden("osp_2n_2n_1.txt"));
}

#[test]
fn generate_sl12_json_golden() {
    let out = stdout(&["generate", "--family", "sl", "--variant", "n-1", "--n", "2", "--format", "json"]);
    assert_eq!(out, golden("sl_n-1_2.json"));
}

#[test]
fn gl21_minimal_set_has_three_generators() {
    let doc = json(&["generate", "--family", "gl", "--variant", "n+1", "--n", "1", "--format", "json"]);
    let gens = doc["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 3);
    assert_eq!(gens[0]["delta"], "1/2");
    assert_eq!(doc["algebra"], "gl(2|1)");
}

#[test]
fn osp22_minimal_set_labels() {
    let doc = json(&["generate", "--family", "osp", "--variant", "2n|2n", "--n", "1", "--format", "json"]);
    let labels: Vec<&str> = doc["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["w3", "wt2"]);
}

#[test]
fn sl21_has_two_generators() {
    let doc = json(&["generate", "--family", "sl", "--variant", "n+1", "--n", "1", "--format", "json"]);
    assert_eq!(doc["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn all_flag_lists_every_coefficient() {
    let doc = json(&["generate", "--family", "osp", "--variant", "2n+1|2n", "--n", "1", "--format", "json", "--all"]);
    let labels: Vec<&str> = doc["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["w1", "w2", "w3", "w4", "w5"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["generate", "--family", "osp", "--variant", "2n+2|2n", "--n", "1", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["verify", "--family", "gl", "--variant", "n-1", "--n", "2"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("susyw-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let args = ["generate", "--family", "gl", "--variant", "n+1", "--n", "1", "--format", "json"];
    susyw()
        .args(args)
        .args(["--output", path.to_str().unwrap()])
        .assert()
        .success()
        .stdout("");
    assert_eq!(fs::read_to_string(&path).unwrap(), stdout(&args));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_json_round_trips_through_the_library() {
    let text = stdout(&["verify", "--family", "osp", "--variant", "2n-1|2n", "--n", "1", "--format", "json"]);
    let doc: susyw::wgen::Document = serde_json::from_str(&text).unwrap();
    assert!(doc.verification.as_ref().unwrap().passed);
    let (basis, level, gens) = susyw::wgen::from_document(&doc).unwrap();
    assert_eq!(level, susyw::rational::parse("1").unwrap());
    assert!(susyw::wgen::verify_membership(&basis, &level, &gens.iter().collect::<Vec<_>>()).is_empty());
    let again = serde_json::to_value(&doc).unwrap();
    assert_eq!(again, serde_json::from_str::<Value>(&text).unwrap());
}

#[test]
fn verify_reports_every_check_passing() {
    let out = stdout(&["verify", "--family", "osp", "--variant", "2n|2n", "--n", "1"]);
    assert!(out.contains("PASS  membership"));
    assert!(out.contains("PASS  negative part equals a D^-1 a down to D^-8"));
    assert!(out.ends_with("result: pass\n"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn level_two_still_verifies() {
    let out = stdout(&["verify", "--family", "gl", "--variant", "n+1", "--n", "1", "--k", "2"]);
    assert!(out.ends_with("result: pass\n"));
    assert!(!out.contains("FAIL"));
    let gen = stdout(&["generate", "--family", "gl", "--variant", "n+1", "--n", "1", "--k", "2"]);
    assert!(gen.starts_with("gl(2|1) (n = 1, k = 2)"));
}

#[test]
fn axioms_and_weights_pass() {
    let out = stdout(&["check-axioms", "--family", "osp", "--variant", "2n+1|2n", "--n", "1"]);
    assert!(out.contains("PASS  skewsymmetry"));
    assert!(out.contains("PASS  Jacobi identity"));
    let doc = json(&["weights", "--family", "osp", "--variant", "2n+2|2n", "--n", "1", "--format", "json"]);
    assert_eq!(doc["verification"]["passed"], true);
    let names: Vec<&str> = doc["verification"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"wt3 expected delta 3/2"));
}

#[test]
fn identities_include_dimensions_and_constant_term() {
    let out = stdout(&["identities", "--family", "osp", "--variant", "2n|2n", "--n", "1"]);
    assert!(out.contains("PASS  B_c constant term is (-1)^n a_c"));
    assert!(out.contains("PASS  dimension formula"));
    assert!(out.ends_with("result: pass\n"));
}

#[test]
fn usage_errors_exit_2() {
    susyw().args(["generate", "--family", "gl", "--variant", "n+1", "--n", "0"]).assert().code(2);
    susyw().args(["generate", "--family", "gl", "--variant", "2n|2n", "--n", "1"]).assert().code(2);
    susyw().args(["generate", "--family", "osp", "--variant", "2n|2n", "--n", "1", "--floor", "3"]).assert().code(2);
    susyw().args(["generate", "--family", "gl", "--variant", "n+1", "--n", "1", "--k", "0"]).assert().code(2);
    susyw().args(["generate", "--family", "spin"]).assert().code(2);
}

#[test]
fn exhausted_floor_exits_4() {
    susyw()
        .args(["generate", "--family", "osp", "--variant", "2n|2n", "--n", "1", "--floor", "0"])
        .assert()
        .code(4);
    susyw()
        .env("SUSYW_FLOOR", "0")
        .args(["verify", "--family", "osp", "--variant", "2n+2|2n", "--n", "1"])
        .assert()
        .code(4);
}

#[test]
fn floor_env_var_sets_the_default() {
    let out = {
        let o = susyw()
            .env("SUSYW_FLOOR", "-5")
            .args(["verify", "--family", "osp", "--variant", "2n|2n", "--n", "1"])
            .assert()
            .success()
            .get_output()
            .stdout
            .clone();
        String::from_utf8(o).unwrap()
    };
    assert!(out.contains("down to D^-5"));
}
