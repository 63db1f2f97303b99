use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torusforge"))
        .args(args)
        .env_remove("TORUSFORGE_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torusforge"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("torusforge-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn dld_failure_exits_one() {
    let out = run(&["dld", p(&corpus("n9.alg"))]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["command"], "dld");
    assert_eq!(v["condition_i"], true);
    assert_eq!(v["condition_ii"], false);
    assert_eq!(v["condition_iii"], false);
    assert_eq!(v["overall"], false);
    assert!(!out.stderr.is_empty());
}

#[test]
fn dld_success_exits_zero() {
    let out = run(&["dld", p(&corpus("filiform_model_7.alg"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["overall"], true);
}

#[test]
fn extend_prints_an_algebra_file() {
    let out = run(&["extend", p(&corpus("filiform_model_8.alg"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let r = torusforge::algfile::parse_algebra(&text).unwrap();
    assert_eq!(r.dim(), 10);
    assert!(r.is_solvable());
    assert!(!r.is_nilpotent());
    assert_eq!(torusforge::algfile::algebra_to_string(&r), text);
}

#[test]
fn extend_then_normalize() {
    let dir = scratch("normalize");
    let ext = dir.join("r.alg");
    let out = run(&[
        "extend",
        p(&corpus("filiform_model_7.alg")),
        "--output",
        p(&ext),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let out = run(&["normalize", p(&ext), "--nilradical-dim", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["already_normal"], true);
}

#[test]
fn cohomology_in_degree_one() {
    let out = run(&["cohomology", p(&corpus("r46_n8.alg")), "--degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dim"], 0);
}

#[test]
fn dimension_guard_and_override() {
    let file = corpus("n3.alg");
    let out = run(&["cohomology", p(&file), "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "DIMENSION_GUARD");

    let out = run_env(
        &["cohomology", p(&file), "--degree", "3"],
        "TORUSFORGE_MAX_DIM",
        "x",
    );
    assert_eq!(out.status.code(), Some(2));

    let out = run_env(
        &["cohomology", p(&corpus("heisenberg3.alg")), "--degree", "2"],
        "TORUSFORGE_MAX_DIM",
        "2",
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_two() {
    let dir = scratch("parse");
    let bad = dir.join("bad.alg");
    fs::write(
        &bad,
        r#"{"name":"x","kind":"lie","even_basis":["e1","e2","e3"],"odd_basis":[],
            "brackets":[{"left":"e1","right":"e2","value":[["2/4","e3"]]}]}"#,
    )
    .unwrap();
    let out = run(&["analyze", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "PARSE_ERROR");

    let out = run(&["dld", p(&dir.join("missing.alg"))]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_reports_jacobi_failures() {
    let dir = scratch("validate");
    let bad = dir.join("bad.alg");
    fs::write(
        &bad,
        r#"{"name":"x","kind":"lie","even_basis":["e1","e2","e3"],"odd_basis":[],
            "brackets":[{"left":"e1","right":"e2","value":[["1","e3"]]},
                        {"left":"e1","right":"e3","value":[["1","e1"]]}]}"#,
    )
    .unwrap();
    let out = run(&["validate", p(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());

    let out = run(&["analyze", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "VALIDATION_ERROR");
}

#[test]
fn zero_torus_is_a_failed_check() {
    let out = run(&["extend", p(&corpus("n9.alg"))]);
    assert_eq!(out.status.code(), Some(0));
    let dir = scratch("zero");
    let f = dir.join("abelian0.alg");
    fs::write(
        &f,
        r#"{"name":"zero","kind":"lie","even_basis":[],"odd_basis":[],"brackets":[]}"#,
    )
    .unwrap();
    let out = run(&["extend", p(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "ZERO_TORUS");
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["analyze", "n9.alg"],
        vec!["der", "s33.alg"],
        vec!["torus", "n3_n4.alg"],
        vec!["roots", "n9.alg"],
        vec!["dld", "n3.alg"],
    ] {
        let file = corpus(args[1]);
        let a = run(&[args[0], p(&file)]);
        let b = run(&[args[0], p(&file)]);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn torus_report_matches_the_s_system() {
    let out = run(&["torus", p(&corpus("s33.alg"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["torus_dim"], 3);
    assert_eq!(v["rank_formula_holds"], true);
    assert_eq!(
        v["equations"],
        serde_json::json!([
            "alpha1+alpha2-alpha3=0",
            "alpha1+beta1-beta3=0",
            "-alpha3+beta1+beta2=0"
        ])
    );
}

#[test]
fn roots_over_a_given_torus() {
    let out = run(&[
        "roots",
        p(&corpus("n9.alg")),
        "--torus",
        p(&corpus("n9_torus.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["torus_dim"], 2);
    assert_eq!(v["grading_holds"], true);
    assert_eq!(v["contains_zero"], true);
}

#[test]
fn compare_reports_first_difference() {
    let out = run(&["compare", p(&corpus("n1.alg")), p(&corpus("n4.alg"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"]["verdict"], "Distinguished");
    assert_eq!(v["verdict"]["field"], "derived");

    let f = corpus("heisenberg3.alg");
    let out = run(&["compare", p(&f), p(&f)]);
    assert_eq!(json(&out)["verdict"]["verdict"], "Inconclusive");
}

#[test]
fn construct_commands() {
    let out = run(&[
        "construct",
        "tensor",
        p(&corpus("heisenberg3.alg")),
        p(&corpus("n2.ca")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let t = torusforge::algfile::parse_algebra(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(t.dim(), 9);

    let dir = scratch("construct");
    let seeds = dir.join("seeds.json");
    fs::write(&seeds, r#"{"vectors": [[["1","e3"]]]}"#).unwrap();
    let out = run(&[
        "construct",
        "quotient",
        p(&corpus("heisenberg3.alg")),
        "--ideal",
        p(&seeds),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let q = torusforge::algfile::parse_algebra(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(q.dim(), 2);
    assert_eq!(q.center().dim(), 2);

    let out = run(&[
        "construct",
        "semidirect",
        p(&corpus("n9.alg")),
        "--torus",
        p(&corpus("n9_torus.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = torusforge::algfile::parse_algebra(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(r.dim(), 11);
    assert!(r.leading_block_is_ideal(9));
}

#[test]
fn batch_is_keyed_by_digest() {
    let dir = scratch("batch");
    for name in ["n9.alg", "filiform_model_6.alg", "heisenberg3.alg"] {
        fs::copy(corpus(name), dir.join(name)).unwrap();
    }
    fs::write(dir.join("notes.txt"), "ignored").unwrap();
    let out = run(&["dld", "--batch", p(&dir)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let results = v["results"].as_object().unwrap();
    assert_eq!(results.len(), 3);
    let mut exits: Vec<(String, i64)> = results
        .values()
        .map(|r| {
            (
                r["file"].as_str().unwrap().to_string(),
                r["exit"].as_i64().unwrap(),
            )
        })
        .collect();
    exits.sort();
    assert_eq!(
        exits,
        vec![
            ("filiform_model_6.alg".to_string(), 0),
            ("heisenberg3.alg".to_string(), 0),
            ("n9.alg".to_string(), 1),
        ]
    );
    for (digest, r) in results {
        let single = json(&run(&["dld", p(&dir.join(r["file"].as_str().unwrap()))]));
        assert_eq!(&single["input_digest"], digest);
        assert_eq!(single["overall"], r["report"]["overall"]);
    }
    let again = run(&["dld", "--batch", p(&dir)]);
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn output_flag_writes_the_report() {
    let dir = scratch("output");
    let target = dir.join("report.json");
    let out = run(&["der", p(&corpus("heisenberg3.alg")), "--output", p(&target)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["dim_even"], 6);
    assert_eq!(v["dim_odd"], 0);
    assert_eq!(v["dim_inner"], 2);
}
