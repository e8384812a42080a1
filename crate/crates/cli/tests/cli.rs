use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compalg"))
        .args(args)
        .env_remove("COMPALG_BUDGET_MS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn error_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("structured error on stderr")
}

fn schema(name: &str) -> Value {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn assert_required(v: &Value, schema_name: &str) {
    let s = schema(schema_name);
    for k in s["required"].as_array().unwrap() {
        let k = k.as_str().unwrap();
        assert!(v.get(k).is_some(), "{schema_name}: missing {k} in {v}");
    }
}

const HAMILTON: &str = r#"{"field":"Q","a":"-1","b":"-1"}"#;

fn quat(coeffs: &str) -> String {
    format!(r#"{{"algebra":{HAMILTON},"coeffs":{coeffs}}}"#)
}

#[test]
fn hirsch_text_example() {
    let o = run(&["poincare", "hirsch", "--g", "BC:3", "--u", "U1SU:3", "--output", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 + t^4 + t^6 + t^10\n");
}

#[test]
fn verify_bound_example() {
    let args = [
        "span", "verify-bound", "--field", "Fp:2", "--split", "--m", "1", "--n", "1", "--d", "1", "--trials", "10",
        "--seed", "7",
    ];
    let v = json_out(&args);
    assert_eq!(v["successes"], 10);
    assert!(v["counterexample"].is_null());
    assert_required(&v, "bound_report.schema.json");
}

#[test]
fn classify_example_is_byte_exact() {
    let o = run(&["clifford", "classify", "--p", "1", "--q", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"base\":\"R\",\"matrix_size\":2,\"direct_sum\":false}\n");
}

#[test]
fn deterministic_reports() {
    let args = ["span", "verify-bound", "--m", "2", "--n", "2", "--d", "2", "--trials", "8", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["span", "verify-bound", "--m", "2", "--n", "2", "--d", "2", "--trials", "8", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn fixtures_by_name() {
    for (name, r) in [("z1", 2), ("z2", 1), ("z3", 0)] {
        let v = json_out(&["span", "rank", "--fixture", name]);
        assert_eq!(v["c_rank"], r);
        assert_eq!(v["expected"], r);
    }
    let o = run(&["span", "rank", "--fixture", "z9"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["error"]["kind"], "input");
}

#[test]
fn rank_from_file_input() {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/z2.json");
    let fixture: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    let dir = std::env::temp_dir().join(format!("compalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z2.json");
    std::fs::write(&path, fixture["matrix"].to_string()).unwrap();
    let v = json_out(&["span", "rank", "--input", path.to_str().unwrap()]);
    assert_eq!(v["c_rank"], 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn validation_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["zmod", "loc-model", "--n", "2", "--s-max", "4", "--signs", "++-+"],
        &["quat", "norm", "--x", "{not json"],
        &["quat", "split", "--field", "Fp:4"],
        &["clifford", "classify", "--p", "40", "--q", "40"],
        &["poincare", "hirsch", "--g", "X:3", "--u", "A:1"],
        &["span", "verify-bound", "--m", "3", "--n", "2", "--d", "1"],
        &["nonsense"],
        &["poincare", "gaussian", "--n", "three", "--k", "1"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?} wrote a partial result");
        assert_required(&error_of(&o), "error.schema.json");
    }
}

#[test]
fn budget_flag_and_env() {
    let args = ["span", "verify-bound", "--m", "3", "--n", "3", "--d", "1", "--trials", "100"];
    let mut with_flag = args.to_vec();
    with_flag.extend(["--budget-ms", "1"]);
    let o = run(&with_flag);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["error"]["kind"], "budget");
    let o = Command::new(env!("CARGO_BIN_EXE_compalg"))
        .args(args)
        .env("COMPALG_BUDGET_MS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["error"]["kind"], "budget");
}

#[test]
fn violations_exit_two() {
    let o = run(&["zmod", "sequence", "--f", "[[2]]", "--g", "[[1]]"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["composite_zero"], false);
}

#[test]
fn quaternion_arithmetic() {
    let i = quat(r#"["0","1","0","0"]"#);
    let j = quat(r#"["0","0","1","0"]"#);
    let v = json_out(&["quat", "mul", "--lhs", &i, "--rhs", &j]);
    assert_eq!(v["coeffs"], serde_json::json!(["0", "0", "0", "1"]));
    assert_required(&v, "quaternion.schema.json");
    let v = json_out(&["quat", "norm", "--x", &quat(r#"["1","2","3","4"]"#)]);
    assert_eq!(v["norm"], "30");
    let v = json_out(&["quat", "inverse", "--x", &quat(r#"["1","1","0","0"]"#)]);
    assert_eq!(v["coeffs"], serde_json::json!(["1/2", "-1/2", "0", "0"]));
    let o = run(&["quat", "mul", "--lhs", &quat(r#"["0","1","0","0"]"#), "--rhs", &j, "--output", "latex"]);
    assert_eq!(stdout(&o), "k\n");
}

#[test]
fn matrices_and_split_paths() {
    let m = r#"{"algebra":{"field":"Fp:3","kind":"mat2"},"m":1,"n":1,"blocks":[[1,2],[0,1]]}"#;
    let v = json_out(&["mat", "invertible", "--input", m]);
    assert_eq!(v["invertible"], true);
    let v = json_out(&["mat", "study-det", "--input", m]);
    assert_eq!(v["study_det"], 1);
    let v = json_out(&["mat", "flatten", "--input", m]);
    assert_required(&v, "field_matrix.schema.json");
    let o = run(&["mat", "symplectic", "--input", m, "--output", "latex"]);
    assert!(stdout(&o).starts_with("\\begin{bmatrix}"));
}

#[test]
fn poincare_family() {
    let text = |args: &[&str]| {
        let mut a = args.to_vec();
        a.extend(["--output", "text"]);
        stdout(&run(&a)).trim_end().to_string()
    };
    assert_eq!(text(&["poincare", "hirsch", "--g", "D:3", "--u", "U1SU:3"]), "1 + t^4");
    assert_eq!(text(&["poincare", "clifford-gamma", "--n", "3", "--p", "2", "--q", "1"]), "1 + t + t^2 + t^3");
    assert_eq!(text(&["poincare", "oriented", "--m", "1", "--k", "1"]), "1 + t^2");
    assert_eq!(text(&["poincare", "gaussian", "--n", "4", "--k", "2"]), "1 + t + 2t^2 + t^3 + t^4");
    assert_eq!(text(&["poincare", "arith", "--op", "div", "--lhs", "[1,0,0,-1]", "--rhs", "[1,-1]"]), "1 + t + t^2");
    let v = json_out(&["poincare", "product", "--space", "y", "--n", "3"]);
    assert_eq!(v, serde_json::json!({"0": 1, "4": 1, "6": 1, "10": 1}));
    let o = run(&["poincare", "arith", "--op", "div", "--lhs", "[1,0,1]", "--rhs", "[1,1]"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn weyl_commands() {
    let v = json_out(&["weyl", "ktheory", "--pair", "quaternionic:3"]);
    assert_eq!(v["rank"], 120);
    let v = json_out(&["weyl", "ktheory", "--pair", "one-dim-split"]);
    assert_eq!(v["rank"], 2);
    let v = json_out(&["weyl", "index", "--g", "BC:3", "--h", "D:3"]);
    assert_eq!(v["index"], 2);
    let v = json_out(&["weyl", "invariant", "--group", "BC:1", "--poly", "x1 + x1^-1"]);
    assert_eq!(v["invariant"], true);
    let v = json_out(&["weyl", "reynolds", "--group", "BC:1", "--poly", "x1"]);
    assert_eq!(v["poly"], "1/2*x1 + 1/2*x1^-1");
    let v = json_out(&["weyl", "expressible", "--flavor", "bc", "--poly", "x1^2 + x1^-2", "--n", "1", "--bound", "2"]);
    assert_eq!(v["status"], "expressible");
    let v = json_out(&["weyl", "verify-generation", "--flavor", "bc", "--n", "1", "--bound", "2"]);
    assert_eq!(v["inconclusive"], serde_json::json!([]));
    let v = json_out(&["weyl", "verify-generation", "--flavor", "a", "--n", "2", "--bound", "2"]);
    let open = v["inconclusive"].as_array().unwrap().len() as u64;
    assert_eq!(v["expressible"].as_u64().unwrap() + open, v["checked"].as_u64().unwrap());
}

#[test]
fn zmod_commands() {
    let v = json_out(&["zmod", "snf", "--input", "[[2,4],[6,8]]"]);
    assert_eq!(v["invariant_factors"], serde_json::json!([2, 4]));
    let v = json_out(&["zmod", "det", "--input", "[[2,0,1],[1,3,2],[1,1,2]]"]);
    assert_eq!(v["det"], 6);
    let v = json_out(&["zmod", "loc-model", "--n", "2", "--s-max", "4", "--signs", "+-+"]);
    assert_eq!(v["middle_rank"], 8);
    assert_required(&v, "localization_model.schema.json");
}

#[test]
fn clifford_commands() {
    let v = json_out(&["clifford", "classify", "--p", "0", "--q", "2"]);
    assert_eq!(v["base"], "H");
    assert_required(&v, "classification.schema.json");
    let v = json_out(&["clifford", "verify", "--p", "0", "--q", "1"]);
    assert_eq!(v["agrees"], true);
    assert_eq!(v["center_square"], "-1");
    let v = json_out(&["clifford", "product", "--p", "0", "--q", "2", "--lhs", "e1", "--rhs", "e2"]);
    assert_eq!(v, serde_json::json!({"12": "1"}));
    let v = json_out(&["clifford", "product", "--p", "0", "--q", "2", "--lhs", "e12", "--rhs", "{\"12\":\"1\"}"]);
    assert_eq!(v, serde_json::json!({"0": "-1"}));
    let v = json_out(&["clifford", "involutions", "--p", "2", "--q", "0", "--x", "1 + e1 + e12"]);
    assert_eq!(v["clifford_conjugate"], serde_json::json!({"0": "1", "1": "-1", "12": "-1"}));
    let v = json_out(&["clifford", "membership", "--p", "2", "--q", "1", "--g", "e1*e3", "--factor", "e1", "--factor", "e3"]);
    assert_eq!(v["in_gamma"], true);
    assert_eq!(v["induced_det"], "1");
    assert!(v["spin_witness"].is_array());
    let v = json_out(&["clifford", "membership", "--p", "2", "--q", "0", "--g", "2 + e1"]);
    assert_eq!(v["in_gamma"], false);
    let o = run(&["clifford", "inverse", "--p", "1", "--q", "1", "--x", "1 + e1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("clifford"));
}

#[test]
fn all_schemas_parse() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas");
    let mut n = 0;
    for e in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(e.unwrap().path()).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!(v["$id"].is_string());
        n += 1;
    }
    assert!(n >= 10);
}
