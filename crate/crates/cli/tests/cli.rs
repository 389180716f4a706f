use sl2jets_cli::app::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["sl2jets"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn cocycle_of_the_inversion() {
    let (code, out, _) = call(&[
        "compute",
        "cocycle",
        "--k",
        "1",
        "--n",
        "0",
        "--g",
        r#"{"a":"0","b":"1","c":"-1","d":"0"}"#,
        "--z0",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"[["1","0"],["0","1/4"]]"#);
}

#[test]
fn decompose_degrees() {
    let (code, out, _) = call(&["compute", "decompose", "--m", "1", "--n", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degrees"], serde_json::json!([2, 0]));
}

#[test]
fn verify_examples_pass() {
    assert_eq!(call(&["verify", "thm1", "--k", "0..3", "--n", "-2..4"]).0, 0);
    assert_eq!(call(&["verify", "thm2", "--k", "1", "--n", "1", "--l", "1"]).0, 0);
    let (code, out, _) = call(&["verify", "remark", "--n", "0", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["data"]["feasible"], true);
    assert_eq!(v["data"]["witness"]["c1"], serde_json::json!(["1"]));
}

#[test]
fn atlas_check_on_fixtures() {
    for atlas in ["torus", "sphere"] {
        let (code, out, _) = call(&["compute", "atlas-check", "--atlas", atlas]);
        assert_eq!(code, 0, "{atlas}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "pass");
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/torus.json");
    assert_eq!(call(&["compute", "atlas-check", "--atlas", path, "--descriptor", "L^2"]).0, 0);
}

#[test]
fn negated_transition_fails_atlas_check() {
    let text = include_str!("../fixtures/torus.json")
        .replacen(r#""a": "1""#, r#""a": "-1""#, 1)
        .replacen(r#""b": "1""#, r#""b": "-1""#, 1)
        .replacen(r#""d": "1""#, r#""d": "-1""#, 1);
    let dir = std::env::temp_dir().join(format!("sl2jets-neg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("neg.json");
    std::fs::write(&path, text).unwrap();
    let (code, out, _) = call(&["compute", "atlas-check", "--atlas", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sign_inconsistent"], true);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(call(&["verify", "thm2", "--k", "2", "--n", "1", "--l", "1"]).0, 2);
    assert_eq!(call(&["verify", "nonsense"]).0, 2);
    assert_eq!(call(&["verify", "thm1", "--k", "x..2"]).0, 2);
    let (code, _, err) = call(&["compute", "cocycle", "--k", "1", "--n", "0", "--g", r#"{"a":"0""#, "--z0", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column"));
    assert_eq!(call(&["compute", "atlas-check", "--atlas", "torus", "--descriptor", "W_3"]).0, 2);
}

#[test]
fn lift_outputs_operator_json() {
    let (code, out, _) = call(&["compute", "lift", "--k", "1", "--n", "1", "--l", "1", "--theta", r#"[[["1","2"]]]"#]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 1);
    assert_eq!(v["weights"]["target"], 0);
    assert_eq!(v["coeffs"][1][0][0]["num"], serde_json::json!(["1", "2"]));
    assert_eq!(v["coeffs"][1][0][0]["den"], serde_json::json!(["1"]));
}

#[test]
fn same_seed_same_bytes() {
    let a = call(&["verify", "lemma2", "--k", "2", "--r", "2", "--seed", "9", "--json"]).1;
    let b = call(&["verify", "lemma2", "--k", "2", "--r", "2", "--seed", "9", "--json"]).1;
    assert_eq!(a, b);
}
