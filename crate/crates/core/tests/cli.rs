//! End-to-end runs of the `gwistor` binary. JSON output is checked against the
//! schemas shipped in `docs/`.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gwistor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwistor"))
        .args(args)
        .env_remove("GWISTOR_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("docs").join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn validated(schema_name: &str, text: &str) -> Value {
    let v: Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let s = schema(schema_name);
    let errors: Vec<String> = s.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
    v
}

fn json_run(schema_name: &str, args: &[&str]) -> Value {
    let o = gwistor(args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    validated(schema_name, &stdout(&o))
}

#[test]
fn classify_examples() {
    let v = json_run("classify.schema.json", &["classify", "--coeffs", "-1,0,1,0,1", "--format", "json"]);
    assert_eq!(v["stable"], true);
    assert_eq!(v["sasaki_compatible"], true);
    assert_eq!(v["metric"][3][3], "1");

    let v = json_run("classify.schema.json", &["classify", "--coeffs", "1,0,1,0,1", "--format", "json"]);
    assert_eq!(v["stable"], false);
    assert_eq!(v["h"], "-1");

    let v = json_run("classify.schema.json", &["classify", "--coeffs", "-1,1/2,1,0,1", "--format", "json"]);
    assert_eq!((v["stable"].clone(), v["z"].clone(), v["sasaki_compatible"].clone()), (true.into(), "1/2".into(), false.into()));
}

#[test]
fn hodge_examples() {
    let v = json_run("hodge.schema.json", &["hodge", "--coeffs", "-1,0,1,0,1", "--form", "alpha1", "--format", "json"]);
    let want = json_run("hodge.schema.json", &["hodge", "--coeffs", "-1,0,1,0,1", "--form", "-theta^alpha2", "--format", "json"]);
    assert_eq!(v["star"], want["form"]);

    let star_theta = stdout(&gwistor(&["hodge", "--coeffs", "-1,0,1,0,1", "--form", "e0"]));
    let cube = stdout(&gwistor(&["hodge", "--coeffs", "-1,0,1,0,1", "--form", "1/6*dtheta^dtheta^dtheta", "--format", "json"]));
    let cube: Value = serde_json::from_str(&cube).unwrap();
    assert_eq!(star_theta.trim(), "e123456");
    assert_eq!(cube["form"]["terms"][0]["index"], serde_json::json!([1, 2, 3, 4, 5, 6]));

    let sym = stdout(&gwistor(&["hodge", "--symbolic", "--form", "theta^dtheta", "--convention", "block"]));
    assert_eq!(sym.trim(), "-h^(1/3)*f4^(-1)*e1245 - h^(1/3)*f4^(-1)*e1346 - h^(1/3)*f4^(-1)*e2356");
    let v = json_run("hodge.schema.json", &["hodge", "--symbolic", "--form", "alpha", "--format", "json"]);
    assert_eq!(v["convention"], "induced");
    assert_eq!(code(&gwistor(&["hodge", "--coeffs", "-1,0,1,0,1", "--form", "alpha", "--format", "latex"])), 0);
}

#[test]
fn derive_examples() {
    let v = json_run(
        "derive.schema.json",
        &["derive", "--coeffs", "-1,0,1,0,1", "--curvature", "generic", "--star", "--format", "json"],
    );
    assert_eq!(v["report"]["cocalibrated"], "requires_einstein");
    assert_eq!(v["dependence"]["theta_r_alpha1"], "-1");
    assert_eq!(v["dependence"]["theta_r_alpha"], "0");

    let plus = "-sqrt(2)/2,-sqrt(2)/2,sqrt(2)/2,sqrt(2)/2,sqrt(3/2)";
    let v = json_run("derive.schema.json", &["derive", "--coeffs", plus, "--curvature", "constant:1", "--format", "json"]);
    assert_eq!(v["report"]["nearly_parallel_c"], "2^(1/2)*3^(1/2)");

    let v = json_run("derive.schema.json", &["derive", "--coeffs", "0,-1,0,1,1", "--curvature", "constant:-2", "--format", "json"]);
    assert_eq!(v["report"]["w3_scalar"], "0");
    let v = json_run("derive.schema.json", &["derive", "--form", "alpha3", "--format", "json"]);
    assert!(v["report"].is_null());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&gwistor(&["classify", "--coeffs", "1,x,0,0,1"])), 2);
    assert_eq!(code(&gwistor(&["classify"])), 2);
    assert_eq!(code(&gwistor(&["hodge", "--coeffs", "1,0,1,0,1", "--form", "alpha"])), 3);
    assert_eq!(code(&gwistor(&["hodge", "--coeffs", "-1,0,1,0,1", "--form", "alpha^"])), 2);
    assert_eq!(code(&gwistor(&["derive", "--coeffs", "1,0,1,0,1"])), 3);
    assert_eq!(code(&gwistor(&["derive", "--form", "e1+e2"])), 4);
    assert_eq!(code(&gwistor(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&gwistor(&["frobnicate"])), 2);
}

#[test]
fn structure_suite_passes_and_is_deterministic() {
    let a = gwistor(&["verify", "--suite", "bse1", "--format", "json"]);
    let b = gwistor(&["verify", "--suite", "bse1", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = validated("verdicts.schema.json", &stdout(&a));
    assert_eq!(v[0]["name"], "bse1");
    assert_eq!(v[0]["certificate"].as_array().unwrap().len(), 14);
}

#[test]
fn seed_is_recorded_and_env_overrides_flag() {
    let o = gwistor(&["verify", "--suite", "hodge", "--seed", "7", "--format", "json"]);
    let v = validated("verdicts.schema.json", &stdout(&o));
    assert_eq!(v[0]["seed"], 7);
    let o = Command::new(env!("CARGO_BIN_EXE_gwistor"))
        .args(["verify", "--suite", "bse1", "--seed", "7", "--format", "json"])
        .env("GWISTOR_SEED", "11")
        .output()
        .unwrap();
    let v = validated("verdicts.schema.json", &stdout(&o));
    assert_eq!(v[0]["seed"], 11);
}

/// The full run writes a valid report whose exit status agrees with its
/// verdicts, and `report` reproduces the table from the file.
#[test]
fn verify_all_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let p = path.to_str().unwrap();
    let o = gwistor(&["verify", "--suite", "all", "--json", p, "--seed", "7"]);
    let text = std::fs::read_to_string(&path).expect("report written");
    let v = validated("verdicts.schema.json", &text);
    let verdicts = v.as_array().unwrap();
    assert_eq!(verdicts.len(), 11);
    assert!(verdicts.iter().all(|x| x["seed"] == 7));
    let all = verdicts.iter().all(|x| x["passed"] == true);
    assert_eq!(code(&o), if all { 0 } else { 1 });

    let r = gwistor(&["report", "--input", p]);
    assert_eq!(code(&r), code(&o));
    assert_eq!(r.stdout, o.stdout);
    let r = gwistor(&["report", "--input", p, "--format", "json"]);
    validated("verdicts.schema.json", &stdout(&r));
}
