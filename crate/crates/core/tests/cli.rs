use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Output};

use fdalg::algebra::structure::examples::{matrix_algebra, split_semisimple, truncated_polynomial};
use fdalg::cli::structure_constants_document;
use fdalg::exactmath::Field;
use serde_json::Value;
use tempfile::NamedTempFile;

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn run(args: &[&str], input: &NamedTempFile) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdalg")).args(args).arg(input.path()).output().unwrap()
}

fn json_out(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn quadric_doc(field: &str) -> String {
    format!(r#"{{"kind":"presentation","field":{field},"n_vars":2,"trunc_degree":3,"generators":["X1^2+X2^2"]}}"#)
}

fn verdict_set(v: &Value) -> BTreeSet<(String, String)> {
    v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["flag"].as_str().unwrap().to_string(), x["rule"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn analyze_anisotropic_quadric() {
    let input = file(&quadric_doc(r#"{"type":"Q"}"#));
    let out = run(&["analyze"], &input);
    let v = json_out(&out);
    let set = verdict_set(&v);
    assert!(set.contains(&("R_TRIVIAL".into(), "R-DIM5".into())));
    assert!(set.contains(&("NOT_K_SPLIT".into(), "R-QANIS".into())));
    assert_eq!(v["invariants"]["dim_jj2"], 2);

    let again = run(&["analyze"], &input);
    assert_eq!(again.stdout, out.stdout);
    let reparsed: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(reparsed, v);
}

#[test]
fn field_override_suppresses_anisotropy() {
    let input = file(&quadric_doc(r#"{"type":"Q"}"#));
    let v = json_out(&run(&["analyze", "--field", "GFp:5"], &input));
    let set = verdict_set(&v);
    assert!(!set.iter().any(|(_, r)| r == "R-QANIS"));
    assert_eq!(v["summary"]["field"], "GFp:5");
}

#[test]
fn text_and_json_agree() {
    let input = file(&quadric_doc(r#"{"type":"Q"}"#));
    let v = json_out(&run(&["analyze"], &input));
    let text = String::from_utf8(run(&["analyze", "--format", "text"], &input).stdout).unwrap();
    let from_text: BTreeSet<(String, String)> = text
        .lines()
        .skip_while(|l| *l != "verdicts:")
        .skip(1)
        .take_while(|l| l.starts_with("  "))
        .map(|l| {
            let mut parts = l.split_whitespace();
            let flag = parts.next().unwrap().to_string();
            let rule = parts.next().unwrap().trim_matches(|c| c == '[' || c == ']').to_string();
            (flag, rule)
        })
        .collect();
    assert_eq!(from_text, verdict_set(&v));
}

#[test]
fn matrix_algebra_structure_constants() {
    let input = file(&structure_constants_document(&matrix_algebra(Field::Rationals, 2)).to_string());
    let set = verdict_set(&json_out(&run(&["analyze"], &input)));
    assert!(set.contains(&("SEMISIMPLE".into(), "R-SEMI".into())));
    assert!(set.iter().any(|(f, _)| f == "R_TRIVIAL"));
}

#[test]
fn malformed_input_exits_with_schema_error() {
    let input = file("{\"kind\": \"presentation\", ");
    let out = run(&["analyze"], &input);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let out = Command::new(env!("CARGO_BIN_EXE_fdalg")).args(["analyze", "/nonexistent/input.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn der_report() {
    let input = file(&structure_constants_document(&truncated_polynomial(Field::Rationals, 3)).to_string());
    let v = json_out(&run(&["der"], &input));
    assert_eq!((v["dim_der"].as_u64(), v["dim_ker_phi_lie"].as_u64()), (Some(2), Some(1)));
}

#[test]
fn oracle_report() {
    let input = file(&structure_constants_document(&truncated_polynomial(Field::Prime(3), 3)).to_string());
    let v = json_out(&run(&["oracle-aut"], &input));
    assert_eq!(v["order"], 6);
    assert_eq!((v["jj2_image_size"].as_u64(), v["jj2_kernel_count"].as_u64()), (Some(2), Some(3)));

    let rational = file(&structure_constants_document(&truncated_polynomial(Field::Rationals, 3)).to_string());
    assert_eq!(run(&["oracle-aut"], &rational).status.code(), Some(3));
    assert_eq!(run(&["oracle-aut", "--max-enum", "5"], &input).status.code(), Some(3));
}

#[test]
fn present_reports() {
    let product = file(&structure_constants_document(&split_semisimple(Field::Rationals, 2)).to_string());
    let out = run(&["present"], &product);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());

    let input = file(r#"{"kind":"presentation","field":{"type":"Q"},"n_vars":1,"trunc_degree":2,"generators":["X1^2"]}"#);
    let v = json_out(&run(&["present"], &input));
    assert_eq!(v["lowey"], 2);
    assert_eq!(v["warnings"][0]["kind"], "lowey_mismatch");

    let cubic = file(&structure_constants_document(&truncated_polynomial(Field::Rationals, 3)).to_string());
    let v = json_out(&run(&["present", "--format", "json"], &cubic));
    assert_eq!((v["n_vars"].as_u64(), v["lowey"].as_u64()), (Some(1), Some(3)));
}

#[test]
fn radical_report() {
    let input = file(&structure_constants_document(&truncated_polynomial(Field::Prime(2), 4)).to_string());
    let v = json_out(&run(&["radical", "--format", "json"], &input));
    assert_eq!((v["dim_j"].as_u64(), v["dim_jj2"].as_u64(), v["lowey_length"].as_u64()), (Some(3), Some(1), Some(4)));
    let text = String::from_utf8(run(&["radical", "--format", "text"], &input).stdout).unwrap();
    assert!(text.contains("dim_j: 3"));
}
