use std::process::{Command, Output};

use serde_json::Value;

fn hilbfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbfock"))
        .args(args)
        .env_remove("HILBFOCK_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = hilbfock(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (v, out.status.code().unwrap())
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn goettsche_plane_text() {
    let out = hilbfock(&["goettsche", "--betti", "1,0,0,0,0", "--order", "3", "--format", "text"]);
    assert!(out.status.success());
    let polys: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split("  ").filter(|s| !s.is_empty()).nth(1).unwrap().trim().to_string())
        .collect();
    assert_eq!(polys, ["1", "1", "1 + t^2", "1 + t^2 + t^4"]);
}

#[test]
fn goettsche_k3_first_coefficient() {
    let (v, code) = json(&["goettsche", "--betti", "1,0,22,0,1", "--order", "1"]);
    assert_eq!(code, 0);
    let row = &v["result"]["rows"][1];
    assert_eq!(row["poincare"], "1 + 22t^2 + t^4");
    assert_eq!(row["coefficients"], serde_json::json!([1, 0, 22, 0, 1]));
    assert_eq!(row["euler"], 24);
}

#[test]
fn goettsche_order_zero_csv() {
    let out = hilbfock(&["goettsche", "--order", "0", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,poincare,euler\n0,1,1\n");
}

#[test]
fn malformed_profile_is_a_usage_error() {
    for bad in ["1,2", "1,0,x,0,1", "1,0,-1,0,1"] {
        let out = hilbfock(&["goettsche", "--betti", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(out.stdout.is_empty());
    }
    assert_eq!(hilbfock(&["verify", "everything"]).status.code(), Some(2));
}

#[test]
fn reports_embed_version_and_config() {
    let (v, _) = json(&["goettsche", "--order", "2", "--seed", "5"]);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["command"], "goettsche");
    assert_eq!(v["config"]["seed"], 5);
    assert_eq!(v["config"]["flow_tol"], 1e-8);
}

#[test]
fn fixed_point_certificate() {
    let (v, code) = json(&["adhm", "fixed", "--partition", "2,1"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["mu_c_norm"], 0);
    assert_eq!(r["stable"], true);
    assert_eq!(r["monad_complex"], true);
    assert_eq!(r["cells"], serde_json::json!([[1, 0], [1, 1], [2, 0]]));
    assert_eq!(r["data"]["i"], serde_json::json!([[[1.0, 0.0]], [[0.0, 0.0]], [[0.0, 0.0]]]));
}

#[test]
fn flow_reaches_level_set() {
    let (v, code) = json(&["adhm", "flow", "--n", "2", "--r", "1", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["converged"], true);
    assert!(v["result"]["residual"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn flow_non_convergence_exits_3_with_diagnostics() {
    let out = hilbfock(&["adhm", "flow", "--n", "3", "--max-iter", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["converged"], false);
    assert_eq!(v["result"]["iterations"], 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no convergence"));
}

#[test]
fn flow_from_json_input() {
    let (fixed, _) = json(&["adhm", "fixed", "--partition", "1,1"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("datum.json");
    std::fs::write(&path, fixed["result"]["data"].to_string()).unwrap();
    let (v, code) = json(&["adhm", "flow", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    // the flow only rescales this datum: g = diag(√2, √2)
    let g = &v["result"]["g"];
    assert!((g[0][0][0].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-8);
    assert!((g[1][1][0].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-8);

    std::fs::write(&path, "{\"n\": 1}").unwrap();
    assert_eq!(hilbfock(&["adhm", "flow", "--input", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn unstable_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unstable.json");
    std::fs::write(
        &path,
        r#"{"n":2,"r":1,"B1":[[[0,0],[0,0]],[[0,0],[0,0]]],"B2":[[[0,0],[0,0]],[[0,0],[0,0]]],"i":[[[1,0]],[[0,0]]],"j":[[[0,0],[0,0]]]}"#,
    )
    .unwrap();
    let out = hilbfock(&["adhm", "flow", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("flow cannot converge: datum unstable"));
}

#[test]
fn tangent_dimension_of_the_plane() {
    let (v, code) = json(&["adhm", "dim", "--n", "1", "--r", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimension"], 4);
}

#[test]
fn morse_reports_both_indices() {
    let (v, code) = json(&["adhm", "morse", "--partition", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["index"], 0);
    assert_eq!(v["result"]["formula_index"], 4);
    let out = hilbfock(&["adhm", "morse", "--partition", "1,1", "--eps", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("choose different eps"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["adhm", "flow", "--n", "3", "--seed", "11"][..],
        &["goettsche", "--betti", "1,4,6,4,1", "--order", "6"][..],
        &["adhm", "dim", "--n", "2", "--r", "2", "--format", "csv"][..],
    ] {
        let a = hilbfock(args);
        let b = hilbfock(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "seed = 42\nformat = \"csv\"\nflow_tol = 1e-10\n").unwrap();
    let run = |extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_hilbfock"));
        cmd.args(["adhm", "flow", "--n", "2"]).args(extra).env("HILBFOCK_CONFIG", &path);
        cmd.output().unwrap()
    };
    let out = run(&[]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("field,value\n"));

    let out = run(&["--format", "json", "--seed", "3"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 3);
    assert_eq!(v["config"]["flow_tol"], 1e-10);
    assert!(v["result"]["residual"].as_f64().unwrap() <= 1e-10);

    std::fs::write(&path, "sed = 42\n").unwrap();
    assert_eq!(run(&[]).status.code(), Some(2));
    let out = hilbfock(&["goettsche", "--zeta-r", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_relations_small() {
    let out = hilbfock(&["verify", "relations", "--max-weight", "4", "--modes", "3", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(String::from_utf8_lossy(&out.stderr).contains("verify relations"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn verify_characters_and_identity() {
    assert_eq!(hilbfock(&["verify", "characters"]).status.code(), Some(0));
    let (v, code) = json(&["verify", "identity", "--betti", "1,0,22,0,1", "--order", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["checks"][0]["passed"], true);
}

#[test]
fn verify_failure_exits_1_and_names_the_check() {
    let (v, code) = json(&["verify", "appendix", "--nmax", "3"]);
    assert_eq!(code, 1);
    let failed: Vec<&str> = v["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].starts_with("numeric Morse index"));
}
