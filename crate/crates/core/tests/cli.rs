//! End-to-end runs of the `sparsezero` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparsezero")).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn fermat_polynomial_vanishes_within_budget() {
    let out = run(&["test-zero", "--poly", data("fermat.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["verdict"], "vanishes");
    assert!(r["evaluations"].as_u64().unwrap() <= r["budget"].as_u64().unwrap());
    assert_eq!(r["budget_radius"], 1);
    assert_eq!(r["seed"], 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("vanishes"));
}

#[test]
fn square_product_over_gf4_has_a_witness_at_the_anchor() {
    let out = run(&["test-zero", "--poly", data("f4_example.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["verdict"], "witness");
    assert_eq!(r["distance"], 0);
    assert_eq!(r["evaluations"], 1);

    let out = run(&["find-nonzero", "--poly", data("f4_example.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["witness"], r["anchor"]);
}

#[test]
fn reduce_turns_one_monomial_into_four() {
    let out = run(&["reduce", "--poly", data("f4_example.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["input_monomials"], 1);
    assert_eq!(r["monomials"], 4);
    let mut exps: Vec<Vec<u64>> = r["reduced"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            assert_eq!(t["coeff"], 1);
            t["exps"].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).collect()
        })
        .collect();
    exps.sort();
    assert_eq!(exps, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
}

#[test]
fn solve_demo_finds_a_solution_at_distance_one() {
    let out = run(&["solve", "--system", data("solve_demo.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["distance"], 1);
    let w: Vec<u64> = r["witness"].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).collect();
    assert_eq!(w[0], w[1]);
    assert!(r["sharp_radius"].as_f64().unwrap() <= r["closed_form_radius"].as_f64().unwrap());
}

#[test]
fn solve_uses_the_zero_domain_when_the_origin_solves() {
    let dir = TempDir::new().unwrap();
    // x1*x2 = 0 and x2*x3 = 0 over GF(5) on {0,2}x{0,3}x{0,4}
    let sys = write(
        &dir,
        "sys.json",
        r#"{"field":"GF(5)","polys":[
            {"nvars":3,"terms":[{"coeff":1,"exps":[1,1,0]}]},
            {"nvars":3,"terms":[{"coeff":1,"exps":[0,1,1]}]}],
           "domain":{"field":"GF(5)","sets":[[0,2],[0,3],[0,4]]},
           "anchor":[2,3,4]}"#,
    );
    let out = run(&["solve", "--system", &sys]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["theorem"], "indicator_zero_domain");
    assert_eq!(r["distance"], 1);
    assert_eq!(r["witness"], serde_json::json!([2, 0, 4]));
}

#[test]
fn unsatisfiable_system_exits_one() {
    let dir = TempDir::new().unwrap();
    // x1 + 1 = 0 has no solution with x1 in {1}
    let sys = write(
        &dir,
        "sys.json",
        r#"{"field":"GF(3)","polys":[{"nvars":2,"text":"x1 + 1"}],
           "domain":{"field":"GF(3)","sets":[[1],[1,2]]}}"#,
    );
    let out = run(&["solve", "--system", &sys]);
    // `text` is not accepted inside systems
    assert_eq!(out.status.code(), Some(2));

    let sys = write(
        &dir,
        "sys2.json",
        r#"{"field":"GF(3)","polys":[{"nvars":2,"terms":[{"coeff":1,"exps":[1,0]},{"coeff":1,"exps":[0,0]}]}],
           "domain":{"field":"GF(3)","sets":[[1],[1,2]]}}"#,
    );
    let out = run(&["solve", "--system", &sys]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["verdict"], "vanishes");
}

#[test]
fn malformed_inputs_exit_two_without_panicking() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("broken.json", "{ not json"),
        ("nofield.json", r#"{"nvars":1,"terms":[{"coeff":1,"exps":[1]}],"set":[1,2]}"#),
        ("badfield.json", r#"{"field":"GF(6)","nvars":1,"terms":[],"set":[1]}"#),
        ("badcoeff.json", r#"{"field":"GF(3)","nvars":1,"terms":[{"coeff":7,"exps":[1]}],"set":[1,2]}"#),
        ("badexps.json", r#"{"field":"GF(3)","nvars":2,"terms":[{"coeff":1,"exps":[1]}],"set":[1,2]}"#),
        ("dupset.json", r#"{"field":"GF(3)","nvars":1,"terms":[{"coeff":1,"exps":[1]}],"set":[1,1]}"#),
        ("noset.json", r#"{"field":"GF(3)","nvars":1,"terms":[{"coeff":1,"exps":[1]}]}"#),
        ("unknown.json", r#"{"field":"GF(3)","nvars":1,"terms":[],"set":[1],"extra":1}"#),
        ("huge.json", r#"{"field":"GF(3)","nvars":1,"terms":[{"coeff":1,"exps":[99999999999]}],"set":[1]}"#),
    ];
    for (name, body) in cases {
        let path = write(&dir, name, body);
        for cmd in ["test-zero", "find-nonzero", "reduce"] {
            let out = run(&[cmd, "--poly", &path]);
            assert_eq!(out.status.code(), Some(2), "{cmd} {name}: {}", String::from_utf8_lossy(&out.stderr));
            let r = report(&out);
            assert!(r["error"].is_string(), "{cmd} {name}");
            assert_eq!(r["command"], cmd);
        }
    }
    // zero is allowed in search domains but not in the set of a zero test
    let zero = write(&dir, "zeroset.json", r#"{"field":"GF(3)","nvars":1,"terms":[{"coeff":1,"exps":[1]}],"set":[0,1]}"#);
    assert_eq!(run(&["test-zero", "--poly", &zero]).status.code(), Some(2));
    assert_eq!(run(&["find-nonzero", "--poly", &zero]).status.code(), Some(1));
    let out = run(&["test-zero", "--poly", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["test-zero"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_are_validated() {
    let fermat = data("fermat.json");
    let fermat = fermat.to_str().unwrap();
    let bad = [
        vec!["test-zero", "--poly", fermat, "--bound", "1"],
        vec!["test-zero", "--poly", fermat, "--field", "GF(5)"],
        vec!["test-zero", "--poly", fermat, "--set", "1,x"],
        vec!["test-zero", "--poly", fermat, "--set", "0,1"],
        vec!["find-nonzero", "--poly", fermat, "--anchor", "1,2"],
        vec!["find-nonzero", "--poly", fermat, "--anchor", "0"],
        vec!["verify-bounds", "--per-theorem", "0"],
    ];
    for args in bad {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    // a larger bound is accepted and widens the budget
    let out = run(&["test-zero", "--poly", fermat, "--bound", "40", "--field", "GF(3)"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["bound"], 40);
    assert_eq!(r["monomials"], 2);
}

#[test]
fn text_polynomials_and_separate_domain_files() {
    let dir = TempDir::new().unwrap();
    let poly = write(&dir, "p.json", r#"{"nvars":3,"text":"x1*x2*x3 + 4"}"#);
    let domain = write(&dir, "d.json", r#"{"field":"GF(5)","sets":[[1,2,3,4],[1,2,3,4],[1,2,3,4]]}"#);
    let out = run(&["find-nonzero", "--poly", &poly, "--domain", &domain, "--field", "GF(5)", "--anchor", "1,1,1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["distance"], 1);
    let out = run(&["test-zero", "--poly", &poly, "--domain", &domain, "--field", "GF(5)"]);
    assert_eq!(out.status.code(), Some(1));
    // domain over a different field
    let other = write(&dir, "o.json", r#"{"field":"GF(7)","sets":[[1,2],[1,2],[1,2]]}"#);
    let out = run(&["test-zero", "--poly", &poly, "--domain", &other, "--field", "GF(5)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_bounds_is_byte_identical_across_runs_and_thread_counts() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let out = run(&["verify-bounds", "--seed", "5", "--per-theorem", "8", "--out", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let out = run(&["verify-bounds", "--seed", "5", "--per-theorem", "8", "--jobs", "3", "--out", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let r: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(r["seed"], 5);
    assert_eq!(r["passed"], true);
}
