use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir-lab")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn run_json(experiment: &str, config: &str) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "exp.cfg", config);
    let out = lab(&[experiment, "--config", &cfg]);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), doc)
}

#[test]
fn centrality_of_sl2_pair() {
    let (code, doc) = run_json("verify-centrality", "algebra = sl2\nweights = 1 | 1\npoints = 1, 2\n");
    assert_eq!(code, 0);
    assert_eq!(doc["schema"], "casimir-lab/1");
    assert_eq!(doc["experiment"], "verify-centrality");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["module"]["points"], serde_json::json!(["1", "2"]));
}

#[test]
fn second_order_hw_dimension_is_three() {
    let (code, doc) = run_json("hwv-dims", "algebra = sl2\nweights = 2 | 2 | 3\nweight = top - 2 a1\n");
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["weights"][0]["hw_dim"], 3);
}

#[test]
fn cg_table_three_two() {
    let (code, doc) = run_json("cg-table", "cg = 3, 2\n");
    assert_eq!(code, 0);
    let comps: Vec<u64> = doc["results"]["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["highest_weight"].as_u64().unwrap())
        .collect();
    assert_eq!(comps, [5, 3, 1]);
}

#[test]
fn duplicate_points_is_a_usage_error_naming_points() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "dup.cfg", "algebra = sl2\nweights = 1 | 1\npoints = 1, 1\n");
    let out = lab(&["verify-centrality", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("points"));
}

#[test]
fn budget_exceeded_has_its_own_exit_code() {
    let (code, _) = run_json(
        "gelfand-spectrum",
        "algebra = gl\nsize = 3\nweights = 1,0,0 | 1,0,0\noperators = T(3; P1, P2, P1)\nmax_terms = 10\n",
    );
    assert_eq!(code, 3);
}

#[test]
fn rationals_are_strings() {
    let (code, doc) = run_json(
        "gelfand-spectrum",
        "algebra = sl2\nweights = 1 | 1\npoints = 1/2, -3\noperators = omega_lk(1,2)\nweight = 0\n",
    );
    assert_eq!(code, 0);
    assert_eq!(doc["module"]["points"], serde_json::json!(["1/2", "-3"]));
    assert_eq!(doc["results"]["spectra"][0]["eigenvalues"][0]["value"], "-3/2");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "t.cfg", "algebra = gl\nsize = 2\nweights = 1,0 | 1,0 | 1,0\n");
    for format in ["json", "table"] {
        let a = lab(&["t-decompose", "--config", &cfg, "--format", format]);
        let b = lab(&["t-decompose", "--config", &cfg, "--format", format]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "a.cfg", "triple = 6, 3, 2\nformat = table\n");
    let out_path = dir.path().join("report.txt");
    let out = lab(&["anti-diagonal", "--config", &cfg, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(out_path).unwrap();
    assert!(text.contains("result: PASS"));
    assert!(text.contains("1,2,3,3,2,1"));
}

#[test]
fn format_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.cfg", "cg = 2, 2\nformat = table\n");
    let out = lab(&["cg-table", "--config", &cfg, "--format", "json"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["passed"], true);
}

#[test]
fn orbit_of_second_order_vector() {
    let (code, doc) = run_json("orbit", "algebra = sl2\nweights = 2 | 3 | 2\nseed = A(1,2)\n");
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["span_dim"], 3);
    assert_eq!(doc["results"]["spans_hw"], true);
}

#[test]
fn usage_errors_exit_two() {
    let out = lab(&["verify-centrality", "--config", "/nonexistent/casimir.cfg"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lab(&["no-such-experiment"]);
    assert_eq!(out.status.code(), Some(2));
    let (code, _) = run_json("hwv-dims", "algebra = sl2\nweights = 1 | 1\nshape = round\n");
    assert_eq!(code, 2);
}

#[test]
fn so3_decomposition_with_s_operators() {
    let (code, doc) = run_json("t-decompose", "algebra = so\nsize = 3\nweights = 1 | 1 | 1\nmax_rank = 2\n");
    assert_eq!(code, 0);
    assert_eq!(doc["results"]["certified"], true);
}
