use std::process::{Command, Output};

use dold_zeta_core::dynamics::{DoldProfile, FiniteSelfMap, LefschetzSequence};
use dold_zeta_core::engine::FunctorExpression;
use dold_zeta_core::graded::GradedEndomorphism;
use dold_zeta_core::series::{MultiPoly, PowerSeries, RationalFunction};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dold-zeta"));
    c.args(args).env_remove("DOLD_ZETA_MAX_ENUM");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn three_cycle_zeta() {
    let v = json_ok(&["dold", "--map", r#"{"size":3,"map":[1,2,0]}"#, "-N", "6"]);
    assert_eq!(strings(&v["zeta"]["coeffs"]), ["1", "0", "0", "-1", "0", "0", "0"]);
    assert_eq!(v["zeta"]["display"], "1 - q^3 + O(q^7)");
}

#[test]
fn circle_bounded_symmetric_powers() {
    let v = json_ok(&["symmetric", "--lefschetz", "[-1,-3,-7,-15,-31]", "--l", "1", "-N", "4"]);
    assert_eq!(strings(&v["series"]["coeffs"]), ["1", "-1", "0", "-2", "0"]);
}

#[test]
fn md_plan_passes() {
    let v = json_ok(&["verify", "--plan", r#"{"identity":"md","map":{"size":4,"map":[1,0,3,3]}}"#]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["identity"], "md");
}

#[test]
fn failing_plan_exits_one() {
    let plan = r#"{"identity":"config-trace","lefschetz":[1,1,1,1],"odd":true,"k_max":3,"expected":["1","2","3","4"]}"#;
    let out = run(&["verify", "--plan", plan]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn malformed_json_reports_position() {
    let out = run(&["dold", "--map", r#"{"size":3,"map":[1,2"#]);
    assert_eq!(out.status.code(), Some(2));
    let msg = stderr_json(&out)["message"].as_str().unwrap().to_string();
    assert!(msg.contains("line 1 column"), "{msg}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["dold", "--map", r#"{"size":1,"map":[0]}"#, "-N", "0"],
        vec!["dold", "--map", r#"{"size":1,"map":[0]}"#, "-N", "65"],
        vec!["zeta"],
        vec!["zeta", "--map", r#"{"size":1,"map":[0]}"#, "--profile", "[1]"],
        vec!["dold", "--map", r#"{"size":2,"map":[0,5]}"#],
        vec!["symmetric", "--lefschetz", "[1,2]", "-N", "4"],
        vec!["config-trace", "--profile", "[1]", "-N", "1"],
        vec!["nonsense"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn enumeration_guard_is_structured() {
    let plan = r#"{"identity":"md","map":{"size":6,"map":[1,2,3,4,5,0]},"k_max":6}"#;
    let out = run_env(&["verify", "--plan", plan], &[("DOLD_ZETA_MAX_ENUM", "10")]);
    assert_eq!(out.status.code(), Some(2));
    let e = stderr_json(&out);
    assert_eq!(e["error"], "too-large");
    assert_eq!(e["limit"], "10");
    assert_eq!(run_env(&["verify", "--plan", plan], &[("DOLD_ZETA_MAX_ENUM", "x")]).status.code(), Some(2));
}

#[test]
fn outputs_round_trip_through_library_types() {
    let v = json_ok(&["dold", "--map", r#"{"size":4,"map":[1,0,3,3]}"#, "-N", "5"]);
    let f: FiniteSelfMap = serde_json::from_value(v["map"].clone()).unwrap();
    assert_eq!(f.size(), 4);
    let d: DoldProfile = serde_json::from_value(v["dold"].clone()).unwrap();
    let l: LefschetzSequence = serde_json::from_value(v["lefschetz"].clone()).unwrap();
    assert_eq!(d.to_lefschetz(), l);
    let z: PowerSeries = serde_json::from_value(v["zeta"].clone()).unwrap();
    assert_eq!(z.order(), 5);

    // The zeta output feeds straight back in as a source.
    let again = json_ok(&["symmetric", "--zeta", &v["zeta"].to_string(), "-N", "5"]);
    let from_map = json_ok(&["symmetric", "--map", r#"{"size":4,"map":[1,0,3,3]}"#, "-N", "5"]);
    assert_eq!(again["series"], from_map["series"]);

    let g = json_ok(&["graded", "--graded", r#"{"degrees":{"0":[[1]],"1":[[2]]}}"#, "-N", "4"]);
    let a: GradedEndomorphism = serde_json::from_value(g["graded"].clone()).unwrap();
    assert_eq!(a.total_dimension(), 2);
    let _: RationalFunction = serde_json::from_value(g["characteristic"]["function"].clone()).unwrap();
    assert_eq!(strings(&g["lefschetz"]), ["-1", "-3", "-7", "-15"]);

    let p = json_ok(&["gsymm", "--group", r#"{"degree":2,"generators":[[1,0]]}"#]);
    let poly: MultiPoly = serde_json::from_value(p["polynomial"]["polynomial"].clone()).unwrap();
    assert_eq!(poly.to_string(), p["polynomial"]["display"].as_str().unwrap());

    let r = json_ok(&["realize", "--polynomial", r#"{"vars":2,"terms":[{"exponents":[0,1],"coeff":"1"}]}"#, "-k", "2"]);
    let e: FunctorExpression = serde_json::from_value(r["expression"].clone()).unwrap();
    assert_eq!(e.to_string(), r["display"].as_str().unwrap());
}

#[test]
fn byte_identical_reruns() {
    for args in [
        vec!["selftest", "--seed", "3"],
        vec!["partition", "--group", r#"{"degree":3,"generators":[[1,0,2],[1,2,0]]}"#, "--family", r#"{"ground":3,"max_block":2}"#, "--ledger", "--seed", "9"],
        vec!["graded", "--graded", r#"{"degrees":{"0":[[1,1],[0,1]],"3":[["1/2"]]}}"#, "--format", "text"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn file_input_and_text_format() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("map.json");
    std::fs::write(&path, r#"{"size":3,"map":[1,2,0]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let out = run(&["zeta", "--map", &arg, "-N", "3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("display  1 - q^3 + O(q^4)"), "{text}");
    assert_eq!(run(&["zeta", "--map", "@/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn remaining_subcommands() {
    let v = json_ok(&["tuples", "--lefschetz", "[3,3,3]", "--l", "2", "-N", "3"]);
    assert_eq!(strings(&v["counts"]), ["1", "3", "9", "24"]);

    let v = json_ok(&["borsuk-ulam", "--profile", "[1,0,0,0]", "-N", "4"]);
    assert_eq!(strings(&v["series"]["coeffs"]), ["0", "1", "1", "1", "1"]);

    let v = json_ok(&["order-poly", "--family", r#"{"ground":3,"max_block":1}"#]);
    assert_eq!(strings(&v["polynomial"]["coeffs"]), ["0", "2", "-3", "1"]);

    let v = json_ok(&["config-trace", "--lefschetz", "[1,1,1,1]", "--even", "--epsilon", "-1", "-N", "3"]);
    assert_eq!(v["odd"], false);
    assert_eq!(v["traces"].as_array().unwrap().len(), 4);

    let v = json_ok(&["partition", "--group", r#"{"degree":2,"generators":[[1,0]]}"#, "--family", r#"{"ground":2,"max_block":1}"#, "--map", r#"{"size":2,"map":[0,1]}"#]);
    assert_eq!(v["value"], "1");

    let v = json_ok(&["gsymm", "--group", r#"{"degree":2,"generators":[[1,0]]}"#, "--cycle-power", "-1"]);
    assert_eq!(v["polynomial"]["display"], "1/2*t1^2 - t2 - 1/2*t1");
}
