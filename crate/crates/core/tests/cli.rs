use std::path::{Path, PathBuf};
use std::process::Command;

use reflexff::cli::{load_space, run, GUARD_ENV};
use reflexff::ffla::{FieldSpec, Matrix};
use reflexff::OperatorSpace;
use serde_json::Value;
use tempfile::TempDir;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("reflexff").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn regular_rep_file(dir: &TempDir) -> PathBuf {
    let (code, out, _) = call(&["construct", "regular-rep", "--p", "2", "--n", "2"]);
    assert_eq!(code, 0);
    write(dir, "reg.json", &out)
}

#[test]
fn construct_then_analyze() {
    let dir = TempDir::new().unwrap();
    let space = regular_rep_file(&dir);
    let (code, out, _) = call(&["analyze", p(&space)]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["tool"], "reflexff");
    assert_eq!(v["command"], "analyze");
    let r = &v["report"];
    assert_eq!(r["reflexive"], false);
    assert_eq!(r["closure_dim"], 4);
    assert_eq!(r["mrk"], 2);
    assert_eq!(r["n"], 2);
}

#[test]
fn closure_output_is_a_loadable_space() {
    let dir = TempDir::new().unwrap();
    let space = regular_rep_file(&dir);
    let out_path = dir.path().join("closure.json");
    let (code, out, _) = call(&["closure", p(&space), "--output", p(&out_path)]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let closure = load_space(&out_path).unwrap();
    let f = FieldSpec::of_order(2).unwrap();
    assert!(closure.same_span(&OperatorSpace::full(&f, 2, 2).unwrap()));
    let doc = json(&std::fs::read_to_string(&out_path).unwrap());
    assert_eq!(doc["generator"]["command"], "closure");
}

#[test]
fn space_round_trip() {
    let dir = TempDir::new().unwrap();
    let space = regular_rep_file(&dir);
    let s = load_space(&space).unwrap();
    let again = OperatorSpace::from_json(&serde_json::from_str(&serde_json::to_string(&s.to_json()).unwrap()).unwrap()).unwrap();
    assert_eq!(s, again);
}

#[test]
fn mrk_command() {
    let dir = TempDir::new().unwrap();
    let space = regular_rep_file(&dir);
    let (code, out, _) = call(&["mrk", p(&space)]);
    assert_eq!(code, 0);
    let r = &json(&out)["report"];
    assert_eq!(r["mrk"], 2);
    assert_eq!(r["rank_distribution"]["2"], 3);
}

#[test]
fn census_command_and_membership_errors() {
    let dir = TempDir::new().unwrap();
    let space = regular_rep_file(&dir);
    let g = write(&dir, "g.json", r#"{"rows":2,"cols":2,"entries":[[1,0],[0,0]]}"#);
    let (code, out, _) = call(&["census", p(&space), p(&g)]);
    assert_eq!(code, 0);
    let r = &json(&out)["report"];
    assert_eq!(r["incidence_count"], "7");
    assert!(r["verdicts"].as_array().unwrap().iter().all(|v| v["holds"] == true));

    let identity = write(&dir, "i.json", r#"{"rows":2,"cols":2,"entries":[[1,0],[0,1]]}"#);
    let (code, _, err) = call(&["census", p(&space), p(&identity)]);
    assert_eq!(code, 4);
    assert!(err.contains("g in S"), "{err}");

    let f = FieldSpec::of_order(2).unwrap();
    let diag = OperatorSpace::new(&f, 2, 2, vec![Matrix::unit(&f, 2, 2, 0, 0), Matrix::unit(&f, 2, 2, 1, 1)]).unwrap();
    let diag_path = write(&dir, "diag.json", &serde_json::to_string(&diag.to_json()).unwrap());
    let off = write(&dir, "off.json", r#"{"rows":2,"cols":2,"entries":[[0,1],[0,0]]}"#);
    let (code, _, err) = call(&["census", p(&diag_path), p(&off)]);
    assert_eq!(code, 4);
    assert!(err.contains("not in R(S)"), "{err}");
}

#[test]
fn trace_command() {
    let (code, out, _) = call(&["trace", "--q", "2", "--p", "3", "--n", "2", "--profile", "2:4"]);
    assert_eq!(code, 0);
    let r = &json(&out)["report"];
    assert_eq!(r["contradiction"], true);
    let (code, _, _) = call(&["trace", "--q", "2", "--p", "3", "--n", "2", "--profile", "2:3"]);
    assert_eq!(code, 2);
    let (code, _, _) = call(&["trace", "--q", "2", "--p", "3", "--n", "2", "--profile", "two"]);
    assert_eq!(code, 2);
}

#[test]
fn search_command_counts() {
    let (code, out, _) = call(&["search", "--q", "2", "--dim-u", "2", "--dim-v", "2", "--n", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["report"]["spaces_examined"], "35");
    assert_eq!(v["report"]["non_reflexive_count"], "11");
    assert_eq!(v["params"]["mode"], "exhaustive");
    assert!(v["params"].get("jobs").is_none());
}

#[test]
fn random_search_is_reproducible() {
    let args = ["search", "--q", "3", "--dim-u", "3", "--dim-v", "3", "--n", "2", "--mode", "random", "--samples", "200", "--seed", "9"];
    let (c1, a, _) = call(&args);
    let (c2, b, _) = call(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert_eq!(json(&a)["params"]["rng"], "ChaCha8Rng");
}

#[test]
fn guard_flag_and_env() {
    let big = ["search", "--q", "2", "--dim-u", "3", "--dim-v", "3", "--n", "3", "--guard", "100"];
    let (code, _, err) = call(&big);
    assert_eq!(code, 5);
    assert!(err.contains("guard"), "{err}");

    let bin = env!("CARGO_BIN_EXE_reflexff");
    let out = Command::new(bin)
        .args(["search", "--q", "2", "--dim-u", "3", "--dim-v", "3", "--n", "3"])
        .env(GUARD_ENV, "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
    let out = Command::new(bin)
        .args(["search", "--q", "2", "--dim-u", "2", "--dim-v", "2", "--n", "2", "--guard", "1000"])
        .env(GUARD_ENV, "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "flag beats the environment");
    let out = Command::new(bin)
        .args(["search", "--q", "2", "--dim-u", "2", "--dim-v", "2", "--n", "2"])
        .env(GUARD_ENV, "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn input_errors() {
    let dir = TempDir::new().unwrap();
    let (code, _, _) = call(&["analyze", p(&dir.path().join("missing.json"))]);
    assert_eq!(code, 1);
    let bad = write(&dir, "bad.json", "{ not json");
    assert_eq!(call(&["analyze", p(&bad)]).0, 2);
    let dependent = write(
        &dir,
        "dep.json",
        r#"{"field":{"p":2,"k":1},"dim_u":2,"dim_v":2,"basis":[
            {"rows":2,"cols":2,"entries":[[1,0],[0,1]]},
            {"rows":2,"cols":2,"entries":[[1,0],[0,1]]}]}"#,
    );
    assert_eq!(call(&["analyze", p(&dependent)]).0, 3);
    let out_of_range = write(
        &dir,
        "range.json",
        r#"{"field":{"p":2,"k":1},"dim_u":1,"dim_v":1,"basis":[{"rows":1,"cols":1,"entries":[[2]]}]}"#,
    );
    assert_eq!(call(&["analyze", p(&out_of_range)]).0, 2);
    assert_eq!(call(&["search", "--q", "6", "--dim-u", "2", "--dim-v", "2", "--n", "2"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn pretty_output() {
    let (code, out, _) = call(&["search", "--q", "2", "--dim-u", "2", "--dim-v", "2", "--n", "2", "--pretty"]);
    assert_eq!(code, 0);
    assert!(out.contains("examined 35"));
    assert!(serde_json::from_str::<Value>(&out).is_err());
}

#[test]
fn binary_matches_library_entry_point() {
    let args = ["search", "--q", "2", "--dim-u", "3", "--dim-v", "2", "--n", "2", "--extremal"];
    let out = Command::new(env!("CARGO_BIN_EXE_reflexff")).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let (_, lib, _) = call(&args);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), lib);
}

#[test]
fn documented_space_files() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.json", r#"{"field":{"p":2,"k":1},"dim_u":2,"dim_v":2,"basis":[]}"#);
    let (code, out, _) = call(&["analyze", p(&empty)]);
    assert_eq!(code, 0);
    let r = &json(&out)["report"];
    assert_eq!(r["reflexive"], true);
    assert!(r["mrk"].is_null());

    let row = write(
        &dir,
        "row.json",
        r#"{"field":{"p":2,"k":1},"dim_u":2,"dim_v":2,"basis":[
            {"rows":2,"cols":2,"entries":[[1,0],[0,0]]},
            {"rows":2,"cols":2,"entries":[[0,1],[0,0]]}]}"#,
    );
    let (code, out, _) = call(&["analyze", p(&row)]);
    assert_eq!(code, 0);
    let r = &json(&out)["report"];
    assert_eq!(r["reflexive"], true);
    assert_eq!(r["lld"], true);

    let e21 = write(&dir, "e21.json", r#"{"rows":2,"cols":2,"entries":[[0,0],[1,0]]}"#);
    let (code, _, err) = call(&["census", p(&row), p(&e21)]);
    assert_eq!(code, 4);
    assert!(err.contains("g not in R(S)"), "{err}");
}

#[test]
fn one_dimensional_spaces_are_reflexive() {
    for q in ["2", "3"] {
        let (code, out, _) = call(&["search", "--q", q, "--dim-u", "2", "--dim-v", "2", "--n", "1"]);
        assert_eq!(code, 0);
        assert_eq!(json(&out)["report"]["non_reflexive_count"], "0");
    }
}
