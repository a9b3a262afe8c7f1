//! End-to-end tests of the command-line interface: commands, exit codes,
//! golden outputs, and schema validation of the JSON forms.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concordance"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn schema_validator(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, value: &serde_json::Value, what: &str) {
    let errors: Vec<String> = validator
        .iter_errors(value)
        .map(|e| format!("{e}"))
        .collect();
    assert!(errors.is_empty(), "{what} fails its schema: {errors:?}");
}

#[test]
fn staircase_command_text_and_json() {
    let out = run(&["staircase", "4", "9"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("staircase: [1,3,1,3,2,2,2,2,3,1,3,1]"), "{text}");
    assert!(text.contains("genus: 12"), "{text}");
    assert!(text.contains("alexander exponents: [0,1,4,5,8,10,12,14,16,19,20,23,24]"));

    let out = run(&["staircase", "4", "9", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["staircase"], serde_json::json!([1, 3, 1, 3, 2, 2, 2, 2, 3, 1, 3, 1]));
    assert_eq!(doc["a_tuple"], doc["staircase"]);
    assert_eq!(doc["conductor"], serde_json::json!(24));

    let out = run(&["staircase", "1", "5", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["staircase"], serde_json::json!([]));
    assert_eq!(doc["a_tuple"], serde_json::Value::Null);
}

#[test]
fn staircase_command_rejects_bad_pairs() {
    let out = run(&["staircase", "4", "6"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("gcd(4,6)"));
    assert_eq!(code(&run(&["staircase", "9", "4"])), 2);
}

#[test]
fn semigroup_command_tabulates_membership() {
    let out = run(&["semigroup", "4", "9", "--limit", "13"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("<4,9>: conductor=24 genus=12 frobenius=23"));
    assert!(text.contains("\n0 member\n"));
    assert!(text.contains("\n1 gap\n"));
    assert!(text.contains("\n13 member\n"));
    assert_eq!(text.lines().count(), 15);
}

#[test]
fn upsilon_command_eval_and_formats() {
    let out = run(&["upsilon", "T(2,3)", "--eval", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "-1");

    let out = run(&["upsilon", "T(2,3)", "--eval", "0"]);
    assert_eq!(stdout(&out).trim(), "0");

    let out = run(&["upsilon", "T(3,4)", "--eval", "1/2"]);
    assert_eq!(stdout(&out).trim(), "-3/2");

    let out = run(&["upsilon", "zero", "--eval", "7/5"]);
    assert_eq!(code(&out), 2); // parse error

    let out = run(&["upsilon", "T(2,3) - T(2,3)", "--eval", "7/5"]);
    assert_eq!(stdout(&out).trim(), "0");

    let out = run(&["upsilon", "T(2,3)", "--eval", "5/2"]);
    assert_eq!(code(&out), 2); // outside [0,2]

    let out = run(&["upsilon", "T(2,3)", "--csv"]);
    assert_eq!(stdout(&out), "t,value\n0,0\n1,-1\n2,0\n");

    let out = run(&["upsilon", "T(2,3)"]);
    assert!(stdout(&out).contains("Upsilon(T(2,3)): (0,0) (1,-1) (2,0)"));
}

#[test]
fn upsilon_json_matches_the_shipped_schema() {
    let validator = schema_validator("plfunction.schema.json");
    for expr in ["T(2,3)", "T(4,9) - 2*T(4,5)", "T(9,13) - T(4,9) - T(9,10)"] {
        let out = run(&["upsilon", expr, "--json"]);
        assert_eq!(code(&out), 0);
        let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_valid(&validator, &doc, expr);
    }
}

#[test]
fn upsilon_svg_writes_a_plot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.svg");
    let out = run(&["upsilon", "T(3,4)", "--svg", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("viewBox=\"0 0 800 400\""));
    assert!(svg.contains("<polyline"));
}

#[test]
fn vanish_exit_codes() {
    let out = run(&["vanish", "T(9,13)-T(4,9)-T(9,10)"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(&["vanish", "T(2,3)"]);
    assert_eq!(code(&out), 1);
    let out = run(&["vanish", "T(2,3) +"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn recursion_command() {
    let out = run(&["recursion", "9", "4", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("true"));
    let out = run(&["recursion", "4", "1", "2"]);
    assert_eq!(code(&out), 0);
    let out = run(&["recursion", "4", "2", "1"]);
    assert_eq!(code(&out), 2); // not coprime
}

#[test]
fn certify_matches_golden_and_verifies() {
    let out = run(&["certify", "4", "9", "1"]);
    assert_eq!(code(&out), 0);
    let golden = include_str!("golden/certify_4_9_1.json");
    assert_eq!(stdout(&out), golden, "certify output drifted from the golden file");

    let validator = schema_validator("certificate.schema.json");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid(&validator, &doc["lower_bound"], "lower bound certificate");
    assert_valid(&validator, &doc["upper_bound"], "upper bound certificate");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    std::fs::write(&path, stdout(&out)).unwrap();
    let out = run(&["--verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("2 certificate(s) valid"));
}

#[test]
fn certify_rejects_bad_parameters() {
    assert_eq!(code(&run(&["certify", "4", "9", "0"])), 2);
    assert_eq!(code(&run(&["certify", "3", "7", "1"])), 2);
    assert_eq!(code(&run(&["certify", "4", "7", "1"])), 2);
}

#[test]
fn verify_rejects_corruption_with_exit_3() {
    let out = run(&["certify", "4", "9", "1"]);
    let mut doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    doc["lower_bound"]["goal"]["k"] = serde_json::json!(2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = run(&["--verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);

    let path = dir.path().join("not_json.json");
    std::fs::write(&path, "{").unwrap();
    assert_eq!(code(&run(&["--verify", path.to_str().unwrap()])), 3);

    assert_eq!(code(&run(&["--verify", "/nonexistent/cert.json"])), 2);
}

#[test]
fn family_matches_golden_members_and_verifies() {
    let out = run(&["family", "--count", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let golden: serde_json::Value =
        serde_json::from_str(include_str!("golden/family_members_3.json")).unwrap();
    assert_eq!(doc["members"], golden);

    let validator = schema_validator("certificate.schema.json");
    assert_valid(&validator, &doc["certificate"], "family certificate");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("family.json");
    std::fs::write(&path, stdout(&out)).unwrap();
    assert_eq!(code(&run(&["--verify", path.to_str().unwrap()])), 0);

    // A family document whose member list disagrees with the goal fails.
    let mut tampered = doc.clone();
    tampered["members"][0]["p"] = serde_json::json!(5);
    std::fs::write(&path, serde_json::to_string(&tampered).unwrap()).unwrap();
    assert_eq!(code(&run(&["--verify", path.to_str().unwrap()])), 3);
}

#[test]
fn family_edge_cases() {
    let out = run(&["family", "--count", "0"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["members"], serde_json::json!([]));
    let out = run(&["family", "--count", "1", "--rule", "fibonacci"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_subcommand_is_bad_input() {
    let out = run(&[]);
    assert_eq!(code(&out), 2);
}
