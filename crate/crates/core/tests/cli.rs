use mcg_fixpoint::cli::run;
use serde_json::{json, Value};
use std::process::Command;

fn call(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mcgfix").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let value = serde_json::from_str(&text).unwrap_or(Value::Null);
    (code, value, String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> Value {
    let (code, v, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    v
}

const TRANSLATION: &str = r#"{"space":{"kind":"siegel","genus":2},"isometry":{"kind":"symplectic","entries":[[2,0,0,0],[0,3,0,0],[0,0,0.5,0],[0,0,0,0.3333333333333333]]}}"#;

#[test]
fn classify_and_distance() {
    let v = ok(&["classify", "--json", r#"{"entries":[[1,1],[0,1]]}"#]);
    assert_eq!(v["kind"], "NeutralParabolic");
    let v = ok(&["classify", "--json", r#"{"entries":[[2,1],[1,1]]}"#]);
    assert_eq!(v["kind"], "Hyperbolic");
    assert_eq!(v["characteristic_polynomial"], "x^2 - 3x + 1");

    let v = ok(&[
        "distance",
        "--json",
        r#"{"space":{"kind":"euclid","dim":2},"p":{"kind":"euclid","coords":[0,0]},"q":{"kind":"euclid","coords":[3,4]},"t":0.5}"#,
    ]);
    assert_eq!(v["distance"], json!(5.0));
    assert_eq!(v["point"]["coords"], json!([1.5, 2.0]));
    let v = ok(&[
        "distance",
        "--json",
        r#"{"space":{"kind":"siegel","genus":1},"p":{"kind":"siegel","re":[[0]],"im":[[1]]},"q":{"kind":"siegel","re":[[0]],"im":[[4]]}}"#,
    ]);
    assert!((v["distance"].as_f64().unwrap() - 4f64.ln()).abs() < 1e-11);
}

#[test]
fn translation_length_reports_displacement() {
    let input = r#"{"space":{"kind":"siegel","genus":1},"isometry":{"kind":"symplectic","entries":[[2,0],[0,0.5]]},"point":{"kind":"siegel","re":[[0]],"im":[[1]]}}"#;
    let v = ok(&["translation-length", "--json", input]);
    assert!((v["estimate"].as_f64().unwrap() - 2.0 * 2f64.ln()).abs() < 1e-4);
    assert!((v["displacement"].as_f64().unwrap() - 2.0 * 2f64.ln()).abs() < 1e-11);
}

#[test]
fn seeded_runs_are_deterministic() {
    let a = ok(&["--seed", "7", "translation-length", "--json", TRANSLATION]);
    let b = ok(&["translation-length", "--json", TRANSLATION, "--seed", "7"]);
    assert_eq!(a, b);
    let exact = 2.0 * (2f64.ln().powi(2) + 3f64.ln().powi(2)).sqrt();
    assert!((a["estimate"].as_f64().unwrap() - exact).abs() < 1e-4);
}

#[test]
fn seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_mcgfix");
    let from_env = Command::new(bin).args(["translation-length", "--json", TRANSLATION]).env("MCGFIX_SEED", "9").output().unwrap();
    let from_flag = Command::new(bin)
        .args(["--seed", "9", "translation-length", "--json", TRANSLATION])
        .env_remove("MCGFIX_SEED")
        .output()
        .unwrap();
    assert!(from_env.status.success());
    assert_eq!(from_env.stdout, from_flag.stdout);
    let bad = Command::new(bin).args(["lickorish", "--genus", "3"]).env("MCGFIX_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn surface_commands() {
    let v = ok(&["lickorish", "--genus", "3"]);
    assert_eq!(v["curves"].as_array().unwrap().len(), 8);
    let v = ok(&["neighborhood", "--genus", "3", "--curves", "a1,b1"]);
    assert_eq!(v["connected"], true);
    assert_eq!((v["genus"].as_u64(), v["boundary"].as_u64()), (Some(1), Some(1)));
    let v = ok(&["neighborhood", "--genus", "3", "--curves", "a1,c1"]);
    assert_eq!(v["connected"], false);
    let v = ok(&["verify-prop52", "--genus", "3"]);
    assert_eq!(v["violations"], json!([]));
    let v = ok(&["witness-copies", "--genus", "3", "--type-genus", "1", "--boundary", "1", "--count", "2"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["pieces"].as_array().unwrap().len(), 2);
    let v = ok(&["twist-matrix", "--genus", "2", "--curve", "a1"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
    let v = ok(&["check-relations", "--genus", "3"]);
    assert_eq!(v["all_hold"], true);
}

#[test]
fn derive_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let v = ok(&["derive", "--genus", "4", "--dim", "3", "--out", p]);
    assert_eq!(v["conclusion"]["fixes_point"], true);
    let v = ok(&["verify", p]);
    assert_eq!(v["valid"], true);

    let mut cert: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    cert["context"]["d"] = json!(5);
    std::fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
    let (code, v, _) = call(&["verify", p]);
    assert_eq!(code, 1);
    assert_eq!(v["valid"], false);
    assert!(v["failure"]["field"].is_string());

    let (code, v, _) = call(&["verify", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "io");
}

#[test]
fn derive_prints_certificate_without_out() {
    let v = ok(&["derive", "--genus", "3", "--dim", "2"]);
    assert_eq!(v["v"], 1);
    assert_eq!(v["context"]["hypothesis"], "no_non_neutral_parabolics");
    let again = ok(&["derive", "--genus", "3", "--dim", "2"]);
    assert_eq!(v, again);
}

#[test]
fn structured_errors() {
    let (code, v, err) = call(&["derive", "--genus", "3", "--dim", "3"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "derivation");
    assert_eq!(v["error"]["details"]["outside_hypothesis"], true);
    assert!(err.starts_with("error:"));

    let (code, v, _) = call(&["lickorish", "--genus", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "surface");
    let (code, v, _) = call(&["classify", "--json", r#"{"entries":[[2,0],[0,1]]}"#]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "geometry");
    let (code, v, _) = call(&["classify", "--json", "{"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "invalid_input");
    let (code, v, _) = call(&["neighborhood", "--genus", "3", "--curves", "z9"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "surface");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["bogus"]).0, 2);
    assert_eq!(call(&["derive", "--genus", "3"]).0, 2);
    assert_eq!(call(&["classify", "a.json", "--json", "{}"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn helly_commands_read_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("polys.json");
    let input = json!({
        "dim": 2,
        "polytopes": [
            [{"normal": [1.0, 0.0], "offset": 1.0}, {"normal": [-1.0, 0.0], "offset": 0.0},
             {"normal": [0.0, 1.0], "offset": 1.0}, {"normal": [0.0, -1.0], "offset": 0.0}],
            [{"normal": [1.0, 0.0], "offset": 2.0}, {"normal": [-1.0, 0.0], "offset": -0.5},
             {"normal": [0.0, 1.0], "offset": 2.0}, {"normal": [0.0, -1.0], "offset": -0.5}]
        ]
    });
    std::fs::write(&path, input.to_string()).unwrap();
    let v = ok(&["helly-euclid", path.to_str().unwrap()]);
    assert_eq!(v["holds"], true);

    let tree = json!({
        "tree": {"vertices": 3, "edges": [{"u": 0, "v": 1, "length": 1.0}, {"u": 1, "v": 2, "length": 1.0}]},
        "subtrees": [{"intervals": [{"edge": 0, "lo": 0.0, "hi": 0.4}]}, {"intervals": [{"edge": 1, "lo": 0.0, "hi": 1.0}]}]
    });
    let v = ok(&["helly-tree", "--json", &tree.to_string()]);
    assert_eq!(v["holds"], false);
    assert_eq!(v["disjoint_pair"], json!([0, 1]));
}
