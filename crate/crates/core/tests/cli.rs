use orbitcalc::cli::{catalog_entries, run, Outcome};
use serde_json::Value;
use std::path::PathBuf;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("orbitcalc").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("orbitcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn induce_principal_class_from_minimal_parabolic() {
    let o = cli(&["induce", "--group", "gl3", "--levi", "1,1,1", "--classes", "1:1:1"]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["partition"], serde_json::json!([3]));
}

#[test]
fn induce_symplectic_with_oracle() {
    // Klingen Levi GL1 x Sp2, zero class
    let o = cli(&["induce", "--group", "sp4", "--levi", "1", "--classes", "1:1,1", "--oracle"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let v = json(&o);
    assert_eq!(v["partition"], serde_json::json!([2, 2]));
    assert_eq!(v["agrees"], Value::Bool(true));
}

#[test]
fn langlands_suite_on_c2() {
    let o = cli(&["check", "--suite", "langlands", "--group", "c2"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["suites"][0]["cases"], 400);
}

#[test]
fn canpar_sp4() {
    let o = cli(&["canpar", "--group", "sp4", "--partition", "2,2", "--split"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["triple"]["valid"], Value::Bool(true));
    assert_eq!(v["form"], "split");
    assert_eq!(v["flag"].as_array().unwrap().len(), 1);
    assert_eq!(v["flag"][0]["dim"], 2);
    assert_eq!(v["dims"]["u"], 3);
    let a = cli(&["canpar", "--group", "sp4", "--partition", "2,2", "--anisotropic"]);
    assert_eq!(json(&a)["form"], "anisotropic");
    let c = cli(&["canpar", "--group", "sp4", "--partition", "2,2", "--coeffs", "1,-1"]);
    assert_eq!(json(&c)["form"], "split");
}

#[test]
fn pinfl_writes_dot() {
    let dot = tmp("gl4.dot");
    let o = cli(&["pinfl", "--group", "gl4", "--partition", "3,1", "--min", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("style=solid").count(), 10);
    assert_eq!(text.matches("style=dashed, label=\"N'\"").count(), 4);
}

#[test]
fn pv_sp6() {
    let o = cli(&["pv", "--group", "sp6", "--partition", "4,2", "--split"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["dimension"], 5);
    assert_eq!(v["invariants"].as_array().unwrap().len(), 2);
    assert_eq!(v["product_invariant"]["regular"], Value::Bool(true));
    assert_eq!(v["torus"]["dim"], 0);
    assert_eq!(v["dense_orbit"]["generic"], Value::Bool(true));
}

#[test]
fn pv_non_catalog_searches_invariants() {
    let o = cli(&["pv", "--group", "gl3", "--partition", "3"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(json(&o)["dimension"].as_u64().is_some());
}

#[test]
fn gq_exp_family_gives_the_weight() {
    let o = cli(&["gq", "--family", &data("family_a2.json")]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let c = json(&o)["c_prime_0"].as_f64().unwrap();
    let w = cli(&["weight", "--group", "a2", "--x", "1,0,-1", "--samples", "200000"]);
    let wv = json(&w);
    let v = wv["v_weight"].as_f64().unwrap();
    assert!((c - v).abs() < 1e-9, "{c} vs {v}");
    assert!(wv["rel_err"].as_f64().unwrap() < 0.01);
    let o2 = cli(&["gq", "--family", &data("family_a2.json"), "--ray", "3,1,-4"]);
    assert!((json(&o2)["c_prime_0"].as_f64().unwrap() - c).abs() < 1e-9);
}

#[test]
fn catalog_entries_and_comparison() {
    let e = catalog_entries();
    assert_eq!(e.len(), 6);
    let o = cli(&["catalog", "--all"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let v = json(&o);
    assert_eq!(v["diagrams"]["matched"], 6);
    assert_eq!(v["pv_structures"]["matched"], 4);
    assert_eq!(v["pv_structures"]["total"], 4);
    assert_eq!(v["subspace_figures"]["matched"], 4);
    let one = cli(&["catalog", "--name", "sp6-aniso"]);
    assert_eq!(json(&one)["entries"].as_array().unwrap().len(), 1);
}

#[test]
fn usage_and_domain_errors_exit_2_with_reason() {
    for args in [
        vec!["frobnicate"],
        vec!["canpar", "--group", "sp5", "--partition", "2,2"],
        vec!["canpar", "--group", "gl3", "--partition", "2,2"],
        vec!["canpar", "--group", "gl3", "--partition", "2,1", "--split"],
        vec!["induce", "--group", "gl3", "--levi", "2,1", "--classes", "3:1"],
        vec!["check"],
        vec!["check", "--suite", "langlands", "--group", "b2"],
        vec!["catalog"],
        vec!["weight", "--group", "a2", "--x", "1,2"],
    ] {
        let o = cli(&args);
        assert_eq!(o.code, 2, "{args:?}: {}", o.stdout);
        assert!(json(&o)["reason"].is_string(), "{args:?}");
    }
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("catalog"));
}

#[test]
fn out_file_and_determinism() {
    let path = tmp("pinfl.json");
    let args = ["pinfl", "--group", "sp4", "--partition", "2,2", "--split", "--seed", "7"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a, b);
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &p]);
    let o = cli(&with_out);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a.stdout);
}

#[test]
fn failing_tolerance_exits_1() {
    // a negative tolerance cannot be met
    let o = cli(&["check", "--suite", "langlands", "--group", "a1", "--tol", "-1"]);
    assert_eq!(o.code, 1);
    let v = json(&o);
    assert_eq!(v["reason"], "check_failed");
    assert_eq!(v["passed"], Value::Bool(false));
}
