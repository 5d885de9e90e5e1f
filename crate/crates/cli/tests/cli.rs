use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn arrlie(args: &[&str]) -> (i32, Value) {
    arrlie_env(args, None)
}

fn arrlie_env(args: &[&str], cap: Option<&str>) -> (i32, Value) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_arrlie"));
    cmd.args(args).env_remove("ARRLIE_CAP_OVERRIDE");
    if let Some(c) = cap {
        cmd.env("ARRLIE_CAP_OVERRIDE", c);
    }
    let out = cmd.output().expect("binary runs");
    let report: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), report)
}

fn path(name: &str) -> String {
    corpus(name).to_string_lossy().into_owned()
}

#[test]
fn lattice_reports_poincare() {
    let (code, r) = arrlie(&["lattice", &path("braid3.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["command"], "lattice");
    assert_eq!(r["payload"]["poincare"]["polynomial"], "1+3t+2t^2");
    let (_, r) = arrlie(&["lattice", &path("braid3.json"), "--k", "2"]);
    assert_eq!(r["payload"]["redundant"]["polynomial"], "1+3t^3+2t^6");
    let (_, r) = arrlie(&["lattice", &path("4line.json"), "--k", "3", "--full"]);
    assert_eq!(r["payload"]["redundant"]["polynomial"], "1+4t^5+3t^10");
    assert_eq!(r["payload"]["flats"].as_array().unwrap().len(), 6);
}

#[test]
fn missing_file_is_an_error() {
    let (code, r) = arrlie(&["lattice", "missing.json"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
}

#[test]
fn malformed_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, r#"{"dimension": 2, "hyperplanes": [{"coeffs": ["1", "1/0"], "constant": "0"}]}"#).unwrap();
    let (code, _) = arrlie(&["lattice", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    std::fs::write(&f, "not json").unwrap();
    let (code, _) = arrlie(&["os", f.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn os_dims() {
    let (code, r) = arrlie(&["os", &path("braid3.json"), "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["dims"], serde_json::json!([1, 3, 2]));
    let (code, r) = arrlie(&["os", &path("generic3.json"), "--k", "2"]);
    assert_eq!(code, 0);
    let degrees: Vec<u64> = r["payload"]["degrees"].as_array().unwrap().iter().map(|d| d["degree"].as_u64().unwrap()).collect();
    assert_eq!(degrees, vec![0, 3, 6]);
    assert_eq!(r["payload"]["dims"], serde_json::json!([1, 3, 3]));
}

#[test]
fn os_cap_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("lines17.json");
    let hyperplanes: Vec<Value> =
        (0..17).map(|i| serde_json::json!({ "coeffs": ["1", i.to_string()], "constant": "0" })).collect();
    std::fs::write(&f, serde_json::json!({ "dimension": 2, "hyperplanes": hyperplanes }).to_string()).unwrap();
    let (code, r) = arrlie(&["os", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["payload"]["cap"]["required"], 17);
    let (code, r) = arrlie_env(&["os", f.to_str().unwrap(), "--max-q", "1"], Some("17"));
    assert_eq!(code, 0, "{r}");
    let (code, _) = arrlie_env(&["os", f.to_str().unwrap()], Some("lots"));
    assert_eq!(code, 2);
}

#[test]
fn fibration_exit_codes() {
    let (code, r) = arrlie(&["fibration", &path("braid4.fib.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["exponents"], serde_json::json!([0, 1, 2, 3]));
    let (code, r) = arrlie(&["fibration", &path("4line.fib.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["exponents"], serde_json::json!([1, 3]));
    let (code, r) = arrlie(&["fibration", &path("generic4.json"), "--search-permutations"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "violation");
    let (code, r) = arrlie(&["fibration", &path("braid3.json"), "--search-permutations"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["exponents"], serde_json::json!([0, 1, 2]));
    let (code, _) = arrlie(&["fibration", &path("braid3.json")]);
    assert_eq!(code, 2);
}

#[test]
fn colliding_roots_are_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.fib.json");
    // y = 0 and y = x collide over x = 1, which is not a hyperplane below
    let doc = r#"{"dimension": 2, "levels": [
        {"var": 1, "roots": [{"coeffs": [], "constant": "0"}]},
        {"var": 2, "roots": [{"coeffs": ["0"], "constant": "0"}, {"coeffs": ["1"], "constant": "-1"}]}]}"#;
    std::fs::write(&f, doc).unwrap();
    let (code, r) = arrlie(&["fibration", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["payload"]["violations"].as_array().unwrap().len(), 1);
    let (code, r) = arrlie(&["present", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["note"], "unverified: not fiber-type");
}

#[test]
fn lie_commands() {
    let (code, r) = arrlie(&["lie", &path("braid4.fib.json"), "--k", "1", "--verify-relations"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["relations"]["checked"], 18);
    let (code, r) = arrlie(&["lie", &path("braid3.fib.json"), "--oracle", "--max-weight", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["oracle"]["presented"], serde_json::json!([3, 1, 2, 3, 6]));
    let (_, r) = arrlie(&["lie", &path("4line.fib.json"), "--k", "2"]);
    for (n, row) in r["payload"]["graded"].as_array().unwrap().iter().enumerate() {
        assert_eq!(row["degree"].as_u64().unwrap(), 4 * (n as u64 + 1));
    }
    let (code, _) = arrlie(&["lie", &path("braid3.fib.json"), "--oracle", "--max-weight", "7"]);
    assert_eq!(code, 2);
    let (code, _) = arrlie(&["lie", &path("braid3.json")]);
    assert_eq!(code, 2);
}

#[test]
fn series_commands() {
    let (code, _) = arrlie(&["series", &path("braid3.fib.json"), "--k", "1", "--truncate", "40"]);
    assert_eq!(code, 0);
    let (code, _) = arrlie(&["series", &path("braid4.fib.json"), "--k", "3", "--truncate", "40"]);
    assert_eq!(code, 0);
    let (code, r) = arrlie(&["series", &path("braid3.fib.json"), "--truncate", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["uea"]["coefficients"], serde_json::json!(["1"]));
}

#[test]
fn present_commands() {
    let (code, r) = arrlie(&["present", &path("braid3.fib.json"), "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["presentation"]["generators"].as_array().unwrap().len(), 3);
    assert_eq!(r["payload"]["presentation"]["relations"][0]["bracket"], "lie");
    let (code, r) = arrlie(&["present", &path("braid3.fib.json"), "--k", "2", "--poisson", "--q", "3"]);
    assert_eq!(code, 0);
    assert!(r["payload"]["presentation"]["generators"].as_array().unwrap().iter().all(|g| g["degree"] == 2));
    assert_eq!(r["payload"]["presentation"]["relations"][0]["operator"], "λ_{q-1}");
    let (code, _) = arrlie(&["present", &path("braid3.fib.json"), "--k", "2", "--poisson", "--q", "7"]);
    assert_eq!(code, 2);
    let (code, _) = arrlie(&["present", &path("braid3.fib.json"), "--poisson"]);
    assert_eq!(code, 2);
    let (code, r) = arrlie(&["present", &path("4line.fib.json"), "--k", "1", "--poisson", "--q", "2"]);
    assert_eq!(code, 0);
    let gens = r["payload"]["presentation"]["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 4);
    assert!(gens.iter().all(|g| g["degree"] == 1));
    let rels = r["payload"]["presentation"]["relations"].as_array().unwrap();
    assert_eq!(rels.len(), 4);
    assert!(rels.iter().all(|x| x["flat_support"].as_array().unwrap().len() == 4));
    let (code, r) = arrlie(&["present", &path("generic3.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["fiber_type"], false);
    assert_eq!(r["payload"]["note"], "unverified: not fiber-type");
}

#[test]
fn pretty_output_parses_to_the_same_report() {
    let (_, compact) = arrlie(&["lattice", &path("4line.json")]);
    let (_, pretty) = arrlie(&["lattice", &path("4line.json"), "--pretty"]);
    assert_eq!(compact, pretty);
}

#[test]
fn unknown_subcommand_is_an_error() {
    let (code, r) = arrlie(&["bogus"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
}
