use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", self.stdout))
    }
}

fn run_env(args: &[&str], threads: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_clifford-forge"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("CLIFFORD_FORGE_THREADS", t),
        None => cmd.env_remove("CLIFFORD_FORGE_THREADS"),
    };
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_env(args, None)
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    fs::write(f.path(), contents).unwrap();
    f
}

#[test]
fn quadric_relations() {
    let r = run(&["relations", "--form", &data("quad.json")]);
    assert_eq!(r.code, 0);
    let v = r.json();
    let rels = v.as_array().unwrap();
    assert_eq!(rels.len(), 3);
    assert_eq!(rels[0]["monomial"], serde_json::json!([2, 0]));
    assert_eq!(
        rels[1]["relation"],
        serde_json::json!([{"coeff": "1", "word": [0, 1]}, {"coeff": "1", "word": [1, 0]}])
    );
}

#[test]
fn witness_verifies() {
    let r = run(&["verify-rep", "--form", &data("cubic_f7.json"), "--rep", &data("rep_f7.json")]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["valid"], true);
    assert_eq!(v["specialization"], true);
    assert_eq!(v["span_dimension"], 9);
}

#[test]
fn broken_witness_reports_location() {
    let rep = fs::read_to_string(data("rep_f7.json")).unwrap().replacen("\"4\"", "\"3\"", 1);
    let f = temp_file(&rep);
    let r =
        run(&["verify-rep", "--form", &data("cubic_f7.json"), "--rep", f.path().to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["valid"], false);
    assert_eq!(v["witness"]["monomial"], serde_json::json!([3, 0]));
    assert_eq!(v["witness"]["row"], 2);
    assert_eq!(v["failing_relation"], serde_json::json!([3, 0]));
    assert!(v["specialization"].is_null());
}

#[test]
fn exhaustive_size_two_is_empty() {
    let r = run(&[
        "search-rep",
        "--form",
        &data("cubic_f2.json"),
        "--size",
        "2",
        "--mode",
        "exhaustive",
    ]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["found"], serde_json::json!([]));
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["examined"], 256);
}

#[test]
fn thread_count_does_not_change_output() {
    let args =
        ["search-rep", "--form", &data("cubic_f2.json"), "--size", "3", "--mode", "exhaustive"];
    let one = run_env(&args, Some("1"));
    let many = run_env(&args, Some("5"));
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, many.stdout);
    assert!(!one.json()["found"].as_array().unwrap().is_empty());
}

#[test]
fn random_mode_needs_a_seed() {
    let r =
        run(&["search-rep", "--form", &data("cubic_f7.json"), "--size", "3", "--mode", "random"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("--seed"));
    let args = [
        "search-rep",
        "--form",
        &data("cubic_f7.json"),
        "--size",
        "1",
        "--mode",
        "random",
        "--seed",
        "9",
        "--trials",
        "50",
    ];
    let a = run(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, run(&args).stdout);
    assert_eq!(a.json()["seed"], 9);
}

#[test]
fn bad_thread_setting_is_a_usage_error() {
    let args =
        ["search-rep", "--form", &data("cubic_f2.json"), "--size", "1", "--mode", "exhaustive"];
    assert_eq!(run_env(&args, Some("zero")).code, 2);
    assert_eq!(run_env(&args, Some("0")).code, 2);
}

#[test]
fn ulrich_and_splitting() {
    let r = run(&["ulrich-check", "--form", &data("cubic_f7.json"), "--rep", &data("rep_f7.json")]);
    let v = r.json();
    assert_eq!(v["is_ulrich"], true);
    assert_eq!(v["slope"], "3");
    assert_eq!(v["h0_of_minus_one"], 0);
    let v = run(&["ulrich-check", "--module", &data("module_twisted.json")]).json();
    assert_eq!(v["splitting"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["h0_of_minus_one"], 3);
    let v = run(&["splitting", "--module", &data("module_bare.json")]).json();
    assert_eq!(v["splitting"], serde_json::json!([-1, 0, 2]));
    let v = run(&["ulrich-check", "--module", &data("module_f7.json"), "--genus", "4"]).json();
    assert_eq!(v["genus_source"], "user");
    assert_eq!(v["slope"], "6");
}

#[test]
fn genus_and_hypersurface() {
    let v = run(&["genus", "--form", &data("quartic_weighted.json")]).json();
    assert_eq!(v["genus"], 1);
    assert_eq!(v["source"], "formula");
    let v = run(&["hypersurface", "--form", &data("quartic_weighted.json")]).json();
    assert_eq!(v["equation"], "x0^2 - x1^4 - x2^4");
    assert_eq!(v["weights"], serde_json::json!([2, 1, 1]));
}

#[test]
fn basis_nf_center() {
    let v = run(&["basis", "--form", &data("quad.json"), "--degree", "6"]).json();
    assert_eq!(v["stabilized_total"], 4);
    assert_eq!(v["rules"].as_array().unwrap().len(), 3);
    let v = run(&["nf", "--form", &data("quad.json"), "--poly", "a[0,1]*a[1,0]*a[0,1]"]).json();
    assert_eq!(v["normal_form"], "-a[1,0]");
    let v = run(&["nf", "--form", &data("quad.json"), "--poly", "a2*a1"]).json();
    assert_eq!(v["normal_form"], "-a[1,0]*a[0,1]");
    let v = run(&["center", "--form", &data("quad.json"), "--t", "0"]).json();
    assert_eq!(v["basis"], serde_json::json!(["1"]));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let r = run(&["relations", "--form", &data("quad.json"), "--output", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let direct = run(&["relations", "--form", &data("quad.json")]);
    assert_eq!(fs::read_to_string(&path).unwrap(), direct.stdout);
    let pretty = run(&["relations", "--form", &data("quad.json"), "--pretty"]);
    assert_eq!(pretty.json(), direct.json());
}

/// Domain failures exit 1 with a JSON error object on stdout.
fn expect_error(args: &[&str], code: &str) -> Value {
    let r = run(args);
    assert_eq!(r.code, 1, "{args:?}: {} {}", r.stdout, r.stderr);
    let v = r.json();
    assert_eq!(v["code"], code, "{v}");
    assert!(v["message"].as_str().is_some_and(|m| !m.is_empty()));
    v
}

#[test]
fn error_hygiene() {
    let form = |text: &str| temp_file(text);
    let path = |f: &tempfile::NamedTempFile| f.path().to_str().unwrap().to_string();

    let f = form("{\"field\": \"Q\", \"n\": 2,,}");
    let v = expect_error(&["relations", "--form", &path(&f)], "invalid_json");
    assert_eq!(v["position"], 22);

    let f = form(
        r#"{"field": "Q", "n": 2, "m": 1, "d": 2, "forms": [{"ell": 2, "poly": "x1^2 + * x2"}]}"#,
    );
    let v = expect_error(&["relations", "--form", &path(&f)], "syntax_error");
    assert_eq!(v["position"], 7);

    let f = form(
        r#"{"field": "Q", "n": 2, "m": 1, "d": 2, "forms": [{"ell": 2, "poly": "x1^2 + x3^2"}]}"#,
    );
    expect_error(&["relations", "--form", &path(&f)], "unknown_identifier");

    let f =
        form(r#"{"field": "Q", "n": 2, "m": 1, "d": 2, "forms": [{"ell": 2, "poly": "x1^3"}]}"#);
    expect_error(&["relations", "--form", &path(&f)], "not_homogeneous");

    let f = form(r#"{"field": {"Fp": 9}, "n": 2, "m": 1, "d": 2, "forms": []}"#);
    expect_error(&["relations", "--form", &path(&f)], "invalid_characteristic");

    let f = form(r#"{"field": "Q", "n": 2, "m": 1, "d": 2, "forms": [{"ell": 5, "poly": "x1"}]}"#);
    expect_error(&["relations", "--form", &path(&f)], "invalid_form");

    let f = form(r#"{"field": "R", "n": 2, "m": 1, "d": 2}"#);
    expect_error(&["relations", "--form", &path(&f)], "invalid_json");

    expect_error(&["relations", "--form", "/definitely/not/here.json"], "io_error");

    let rep = form(r#"{"matrices": [{"size": 1, "entries": [["1"]]}]}"#);
    expect_error(
        &["verify-rep", "--form", &data("cubic_f7.json"), "--rep", &path(&rep)],
        "invalid_rep",
    );
    let rep =
        form(r#"{"matrices": [{"size": 2, "entries": [["1"]]}, {"size": 1, "entries": [["1"]]}]}"#);
    expect_error(
        &["verify-rep", "--form", &data("cubic_f7.json"), "--rep", &path(&rep)],
        "invalid_rep",
    );
    let rep = form(
        r#"{"matrices": [{"size": 1, "entries": [["1/0"]]}, {"size": 1, "entries": [["1"]]}]}"#,
    );
    expect_error(
        &["verify-rep", "--form", &data("cubic_q.json"), "--rep", &path(&rep)],
        "bad_scalar",
    );

    expect_error(
        &["search-rep", "--form", &data("cubic_q.json"), "--size", "1", "--mode", "exhaustive"],
        "exhaustive_over_rationals",
    );
    expect_error(
        &["search-rep", "--form", &data("cubic_f7.json"), "--size", "4", "--mode", "exhaustive"],
        "candidate_space_too_large",
    );
    expect_error(
        &["basis", "--form", &data("cubic_q.json"), "--degree", "2"],
        "degree_above_bound",
    );
    expect_error(
        &["basis", "--form", &data("cubic_q.json"), "--degree", "8", "--rule-cap", "3"],
        "budget_exceeded",
    );
    expect_error(
        &["nf", "--form", &data("quad.json"), "--poly", "a[1,0]*", "--degree", "3"],
        "syntax_error",
    );
    expect_error(
        &["nf", "--form", &data("quad.json"), "--poly", "a1^4", "--degree", "3"],
        "degree_above_bound",
    );
    let ternary = form(
        r#"{"field": "Q", "n": 3, "m": 1, "d": 2, "forms": [{"ell": 2, "poly": "x1^2 + x2^2 + x3^2"}]}"#,
    );
    expect_error(&["genus", "--form", &path(&ternary)], "not_binary");
    let square =
        form(r#"{"field": "Q", "n": 2, "m": 1, "d": 2, "forms": [{"ell": 2, "poly": "x1^2"}]}"#);
    expect_error(&["genus", "--form", &path(&square)], "genus_unavailable");
    let v = run(&["genus", "--form", &path(&square), "--genus", "0"]).json();
    assert_eq!(v["source"], "user");
    let bad = fs::read_to_string(data("module_f7.json")).unwrap().replace("4*x1", "3*x1");
    let m = form(&bad);
    expect_error(&["splitting", "--module", &path(&m)], "invalid_module");
    let m = form(
        r#"{"spec": {"field": "Q", "n": 2, "m": 1, "d": 3, "forms": [{"ell": 3, "poly": "x1^3 + x2^3"}]}, "shifts": []}"#,
    );
    expect_error(&["ulrich-check", "--module", &path(&m)], "degenerate_module");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["relations"][..],
        &["bogus"],
        &["search-rep", "--form", "x", "--size", "0", "--mode", "exhaustive"],
        &["search-rep", "--form", "x", "--size", "2", "--mode", "sideways"],
        &["ulrich-check"],
        &["ulrich-check", "--form", "x"],
        &["center", "--form", "x"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stdout.is_empty());
    }
    assert_eq!(run(&["--help"]).code, 0);
}
