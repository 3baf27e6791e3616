use std::process::{Command, Output};

fn mtvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtvlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_t_two() {
    let o = mtvlab(&["eval", "--func", "A", "--m", "2", "--index", "2", "--z", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let value: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("value "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-12);
    assert!(out.contains("route series"));
    // 15 significant digits
    assert!(out.contains("value 2.46740110027234e0"), "{out}");
}

#[test]
fn eval_divergent_exits_with_two() {
    let o = mtvlab(&["eval", "--func", "A", "--index", "1", "--z", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("divergent: index not admissible at z=1"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(mtvlab(&["eval", "--func", "A", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(mtvlab(&["frobnicate"]).status.code(), Some(2));
    let o = mtvlab(&["eval", "--func", "mtv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--index"));
    assert_eq!(mtvlab(&["eval", "--func", "mtv", "--index", "2", "--trunc-n", "0"]).status.code(), Some(2));
}

#[test]
fn eval_json_and_csv() {
    let o = mtvlab(&["eval", "--func", "psi", "--index", "2", "--s", "2", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["route"], "quadrature");
    assert!(v["value"].as_f64().unwrap() > 0.0);
    let o = mtvlab(&["eval", "--func", "mzv", "--index", "1,2", "--format", "csv"]);
    let out = stdout(&o);
    assert!(out.starts_with("value,err_bound,route,terms\n1.20205690315"), "{out}");
}

#[test]
fn eval_expand_prints_symbolic_terms() {
    let o = mtvlab(&["eval", "--func", "expand", "--index", "1,2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("T(1,2)"), "{out}");
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn eval_finite_sum_is_exact() {
    let o = mtvlab(&["eval", "--func", "finite-sum", "--kind", "t", "--index", "1", "--n", "3"]);
    assert_eq!(stdout(&o).trim(), "46/15");
}

#[test]
fn table_orders_by_weight_then_lex() {
    let o = mtvlab(&["table", "--func", "mtv", "--max-weight", "4", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let indices: Vec<String> = out
        .lines()
        .skip(1)
        .map(|l| {
            let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(l.as_bytes());
            r.records().next().unwrap().unwrap()[0].to_string()
        })
        .collect();
    assert_eq!(indices, ["2", "1,2", "3", "1,1,2", "1,3", "2,2", "4"]);
}

#[test]
fn list_contains_the_registry() {
    let o = mtvlab(&["list", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|s| s["id"].as_str().unwrap()).collect();
    for id in ["THM31", "THM33", "ETADUAL", "LM-D19", "PROP212"] {
        assert!(ids.contains(&id), "{id}");
    }
}

#[test]
fn verify_eta_duality_passes() {
    let o = mtvlab(&["verify", "--prefix", "ETADUAL", "--tol", "1e-6", "--format", "json", "--no-meta"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).is_empty());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 16);
    assert!(results.iter().all(|r| r["pass"] == true && r["runtime_ms"] == 0));
    assert_eq!(v["summary"]["passed"], 16);
}

#[test]
fn verify_reports_failures_with_exit_one() {
    let o = mtvlab(&["verify", "--prefix", "LM-D15", "--format", "csv", "--no-meta"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("id,params,lhs,rhs,residual,tol,pass,runtime_ms,status\n"));
    assert!(out.lines().any(|l| l.contains("m=3") && l.contains(",false,")));
}

#[test]
fn verify_is_byte_reproducible_without_metadata() {
    let args = ["verify", "--prefix", "COR21", "--format", "json", "--no-meta", "--jobs", "3"];
    let a = mtvlab(&args);
    let b = mtvlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_metadata_goes_to_stderr() {
    let o = mtvlab(&["verify", "--prefix", "PROP212"]);
    assert!(o.status.success());
    assert!(stderr(&o).starts_with("# mtvlab"));
    assert!(stdout(&o).contains("total 9 passed 9"));
}

#[test]
fn verify_with_no_matching_checks_is_a_usage_error() {
    assert_eq!(mtvlab(&["verify", "--prefix", "NOPE"]).status.code(), Some(2));
}
