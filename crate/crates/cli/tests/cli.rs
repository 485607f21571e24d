use std::io::Write;
use std::process::{Command, Stdio};

use biring_cli::{run_text, CommandRequest, Outcome};
use clap::Parser;
use serde_json::{json, Value};

fn call(args: &[&str], input: &str) -> Outcome {
    let argv: Vec<&str> = std::iter::once("biring").chain(args.iter().copied()).collect();
    run_text(&CommandRequest::try_parse_from(argv).unwrap(), input)
}

fn binary(args: &[&str], stdin: &str) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_biring"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

const I: &str = r#"[0, 1, 0, 0]"#;

#[test]
fn mul_by_identity() {
    let a = format!(r#"[[{I}, 2], ["1/2", [0, 0, 1, 0]]]"#);
    let input = format!(r#"{{"a": {a}, "b": [[1, 0], [0, 1]]}}"#);
    for kind in ["rc", "cr"] {
        let out = call(&["mul", "--kind", kind], &input);
        assert_eq!(out.code, 0);
        assert_eq!(out.body["entries"][0][0], json!(["0/1", "1/1", "0/1", "0/1"]));
        assert_eq!(out.body["entries"][1][0], json!(["1/2", "0/1", "0/1", "0/1"]));
    }
}

#[test]
fn products_differ_by_kind() {
    let input = format!(r#"{{"a": [[0, {I}], [0, 0]], "b": [[0, 0], [[0, 0, 1, 0], 0]]}}"#);
    let rc = call(&["mul", "--kind", "rc"], &input);
    let cr = call(&["mul", "--kind", "cr"], &input);
    let k = json!(["0/1", "0/1", "0/1", "1/1"]);
    let zero = json!(["0/1", "0/1", "0/1", "0/1"]);
    assert_eq!((&rc.body["entries"][0][0], &rc.body["entries"][1][1]), (&k, &zero));
    assert_eq!((&cr.body["entries"][0][0], &cr.body["entries"][1][1]), (&zero, &k));
}

#[test]
fn singular_inverse_is_a_domain_error() {
    let out = call(&["invert"], r#"{"a": [[1, 2], [2, 4]]}"#);
    assert_eq!(out.code, 2);
    assert_eq!(out.body["error"], "singular");
    assert_eq!(out.body["rank"], 1);
}

#[test]
fn malformed_input_exits_one() {
    assert_eq!(call(&["invert"], "{not json").code, 1);
    assert_eq!(call(&["invert"], r#"{"b": [[1]]}"#).code, 1);
    assert_eq!(call(&["mul"], r#"{"a": [[1, 2]], "b": [[1, 2]]}"#).code, 1);
    let out = call(&["invert"], r#"{"a": [[1, 2]]}"#);
    assert_eq!((out.code, out.body["error"].as_str()), (1, Some("malformed_input")));
}

#[test]
fn inverse_round_trip() {
    let a = json!([[[1, 1, 0, 0], [0, 0, 2, 0]], [[0, 0, 0, 1], "3/2"]]);
    let e = json!([[1, 0], [0, 1]]);
    let inv = call(&["invert", "--kind", "cr"], &json!({"a": a}).to_string());
    assert_eq!(inv.code, 0);
    let prod = call(&["mul", "--kind", "cr"], &json!({"a": a, "b": inv.body}).to_string());
    assert_eq!(prod.body, call(&["mul"], &json!({"a": e, "b": e}).to_string()).body);
    let back = call(&["invert", "--kind", "cr"], &json!({"a": inv.body}).to_string());
    let original = call(&["mul", "--kind", "cr"], &json!({"a": a, "b": e}).to_string());
    assert_eq!(back.body, original.body);
}

#[test]
fn quasidet_marks_undefined_entries() {
    let out = call(&["quasidet"], r#"{"a": [[1, 0], [0, 1]]}"#);
    assert_eq!(out.code, 0);
    assert_eq!(out.body["entries"][0][1], "undefined");
    assert_eq!(out.body["entries"][0][0], json!(["1/1", "0/1", "0/1", "0/1"]));
    let one = call(&["quasidet"], r#"{"a": [[1, 0], [0, 1]], "i": 1, "j": 2}"#);
    assert_eq!(one.code, 2);
    assert_eq!(one.body["error"], "undefined_quasideterminant");
    assert_eq!((one.body["i"].as_u64(), one.body["j"].as_u64()), (Some(1), Some(2)));
}

#[test]
fn eigen_verify_counterexample_to_shift() {
    // a = (−i): j is a left rc eigenrow for i, yet a − i is invertible
    let a = r#"[[[0, -1, 0, 0]]]"#;
    let pair = format!(r#"{{"value": {I}, "vector": [[0, 0, 1, 0]], "side": "left"}}"#);
    let out = call(&["eig-verify"], &format!(r#"{{"a": {a}, "pair": {pair}}}"#));
    assert_eq!(out.code, 0);
    assert_eq!(out.body["pass"], true);
    let shifted = call(&["rank"], r#"{"a": [[[0, -2, 0, 0]]]}"#);
    assert_eq!(shifted.body["rank"], 1);
}

#[test]
fn spectrum_reports_both_singularities() {
    let input = format!(r#"{{"u": [[1, 0], [0, 1]], "d": [{I}, [0, 0, 1, 0]], "side": "right"}}"#);
    let out = call(&["spectrum"], &input);
    assert_eq!(out.code, 0);
    let entries = out.body["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    for e in entries {
        assert_eq!(e["pair_singular"], true);
        assert_eq!(e["matrix_singular"], true);
    }
}

#[test]
fn diagonalize_rejects_wrong_basis() {
    let out = call(&["diagonalize"], r#"{"a": [[1, 1], [0, 2]], "u": [[1, 0], [0, 1]], "side": "right"}"#);
    assert_eq!(out.code, 2);
    assert_eq!(out.body["error"], "not_diagonal");
    let ok = call(&["diagonalize"], r#"{"a": [[1, 1], [0, 2]], "u": [[1, 1], [0, 1]], "side": "right"}"#);
    assert_eq!(ok.code, 0);
    assert_eq!(ok.body["d"]["entries"][0][1], json!(["0/1", "0/1", "0/1", "0/1"]));
}

#[test]
fn float_commands_refuse_rational_mode() {
    let input = r#"{"a": [[[0, 1, 0, 0]]], "b": [0, 1, 0, 0], "c": [1], "form": "right_exp"}"#;
    let out = call(&["ode-solve"], input);
    assert_eq!(out.code, 2);
    assert_eq!(out.body["error"], "unsupported_mode");
    let ok = call(&["ode-solve", "--mode", "float"], input);
    assert_eq!(ok.code, 0, "{}", ok.render());
    assert!(ok.body["max_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn ode_rejects_non_eigen_datum() {
    let input = r#"{"a": [[[0, 1, 0, 0]]], "b": [0, 0, 1, 0], "c": [1], "form": "right_exp"}"#;
    let out = call(&["ode-solve", "--mode", "float"], input);
    assert_eq!(out.code, 2);
    assert_eq!(out.body["error"], "rejected_solution");
}

#[test]
fn ode_check_matches_rk4() {
    let input = r#"{"a": [[[0.1, 0.5, 0, 0]]], "b": [0.1, 0.5, 0, 0], "c": [[0, 1, 0, 0]], "form": "left_exp"}"#;
    let out = call(&["ode-check", "--mode", "float"], input);
    assert_eq!(out.code, 0, "{}", out.render());
    assert!(out.body["max_difference"].as_f64().unwrap() < 1e-6);
}

#[test]
fn exp_identity_residuals_are_tiny() {
    let out = call(&["exp-identity", "--mode", "float"], r#"{"a": [0.3, 1, -0.5, 0.2], "c": [1, 0, 2, 0], "t": 1.5}"#);
    assert_eq!(out.code, 0);
    for r in out.body["residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn selftest_is_deterministic() {
    let a = call(&["selftest", "--samples", "3", "--seed", "5"], "");
    let b = call(&["selftest", "--samples", "3", "--seed", "5"], "");
    assert_eq!(a.code, 0);
    assert_eq!(a.render(), b.render());
}

#[test]
fn binary_reads_stdin_and_sets_exit_code() {
    let (code, body) = binary(&["rank"], r#"{"a": [[1, 2], [2, 4]]}"#);
    assert_eq!((code, body["rank"].as_u64()), (0, Some(1)));
    let (code, body) = binary(&["invert"], r#"{"a": [[0]]}"#);
    assert_eq!((code, body["error"].as_str()), (2, Some("singular")));
    let (code, _) = binary(&["invert", "--json", "[["], "");
    assert_eq!(code, 1);
}

#[test]
fn binary_output_is_deterministic() {
    let input = r#"{"a": [[[1, 2, 0, 0], 1], [0, [0, 0, 0, 3]]], "k": 3}"#;
    assert_eq!(binary(&["power", "--kind", "cr"], input), binary(&["power", "--kind", "cr"], input));
}
