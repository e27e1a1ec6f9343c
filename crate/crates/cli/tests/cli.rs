use std::process::{Command, Output};

use serde_json::Value;

fn symprice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symprice"))
        .args(args)
        .env("SYMPRICE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = symprice(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "symprice/1");
    v["result"].clone()
}

#[test]
fn backward_tournament_diameter_price() {
    let r = json(&["price", "--family", "backward:6", "--invariant", "diameter", "--json"]);
    let p = &r["reports"][0];
    assert_eq!(p["pos_minus"], serde_json::json!({"num": 4, "den": 1}));
    assert_eq!(p["pos_quot"], serde_json::json!({"num": 5, "den": 1}));
}

#[test]
fn closed_forms_all_match() {
    let o = symprice(&["verify-closed-forms"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,k,parity,sigma_formula,sigma_bfs,match,graph"));
    let rows: Vec<&str> = lines.collect();
    // two cycle rows per order, two bag rows per (n, k)
    let bags: usize = (4..=40).map(|n| 2 * (n - 3)).sum();
    assert_eq!(rows.len(), 2 * 39 + bags);
    assert!(rows.iter().all(|r| r.split(',').nth(5) == Some("true")));
}

#[test]
fn kstar_eleven() {
    let r = json(&["kstar", "--n", "11", "--json"]);
    assert_eq!(r["k_star"], 4);
    assert_eq!(r["agrees"], true);
    let o = symprice(&["kstar", "--n", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("loop.txt");
    std::fs::write(&p, "n 3\n0 1\n2 2\n").unwrap();
    let o = symprice(&["price", "--in", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn construct_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["g.txt", "g.json"] {
        let p = dir.path().join(name);
        let p = p.to_str().unwrap();
        let o = symprice(&["construct", "--family", "bag:9:5", "--out", p]);
        assert_eq!(o.status.code(), Some(0));
        let a = json(&["invariant", "--in", p, "--invariant", "transmission", "--json"]);
        let b = json(&["invariant", "--family", "bag:9:5", "--invariant", "transmission", "--json"]);
        assert_eq!(a, b);
    }
}

#[test]
fn theorems_at_three_fail_on_domination() {
    let o = symprice(&["verify-theorems", "--n", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("domination"));
    let o = symprice(&["verify-theorems", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors() {
    assert_eq!(symprice(&["--bogus"]).status.code(), Some(1));
    assert_eq!(symprice(&["price"]).status.code(), Some(1));
    assert_eq!(
        symprice(&["price", "--family", "cycle:3", "--in", "x.txt"]).status.code(),
        Some(1)
    );
    assert_eq!(symprice(&["price", "--family", "wheel:3"]).status.code(), Some(1));
    assert_eq!(symprice(&["search", "--mode", "heuristic", "--n", "5", "--csv"]).status.code(), Some(1));
    assert_eq!(symprice(&["--help"]).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_symprice"))
        .args(["kstar", "--n", "12"])
        .env("SYMPRICE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn undefined_invariant_is_a_domain_error() {
    let o = symprice(&["invariant", "--family", "path:4", "--invariant", "diameter"]);
    assert_eq!(o.status.code(), Some(2));
    let r = json(&["invariant", "--family", "path:4", "--json"]);
    assert_eq!(r["values"][1]["value"], serde_json::json!({"num": 2, "den": 1}));
    assert!(r["values"][0]["value"].is_null());
}

#[test]
fn transform_to_fixpoint() {
    let r = json(&["transform", "--rule", "critical", "--family", "complete:4", "--trace", "--json"]);
    assert!(r["applied_steps"].as_u64().unwrap() > 0);
    assert!(r["pos_after"].as_i64() >= r["pos_before"].as_i64());
    assert_eq!(r["trace"].as_array().unwrap().len() as u64, r["applied_steps"].as_u64().unwrap() + 1);
}

#[test]
fn search_modes() {
    let r = json(&["search", "--mode", "exhaustive", "--n", "4", "--json"]);
    assert_eq!(r["best_value"], 8);
    let a = json(&["search", "--mode", "heuristic", "--n", "6", "--budget", "20000", "--seed", "3", "--json"]);
    let b = json(&["search", "--mode", "heuristic", "--n", "6", "--budget", "20000", "--seed", "3", "--json"]);
    assert_eq!(a["best_value"], b["best_value"]);
    assert_eq!(a["graphs"], b["graphs"]);
}

#[test]
fn conjecture_small_orders() {
    let r = json(&["verify-conjecture", "--n", "4", "--n", "5", "--json"]);
    assert_eq!(r["passed"], true);
    assert_eq!(symprice(&["verify-conjecture", "--n", "11"]).status.code(), Some(1));
}
