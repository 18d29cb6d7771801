//! End-to-end tests of the command-line front end.

use std::path::PathBuf;
use std::process::Command as Process;

use semiinv_cli::{dispatch, run, Command, CommandConfig, OutputFormat, EXIT_INPUT, EXIT_MATH, EXIT_PASS};
use semiinv_core::polyring::{parse_poly, poly_from_json, TermJson};
use semiinv_core::semiinv::Certificate;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn config(command: Command, group: &str, character: &str) -> CommandConfig {
    CommandConfig {
        command,
        group_file: Some(fixture(group)),
        character: character.into(),
        degree_cap: None,
        output: OutputFormat::Json,
        seed: 0,
        forms_file: None,
    }
}

#[test]
fn info_on_b2() {
    let r = dispatch(&config(Command::Info, "b2.json", "det")).unwrap();
    assert!(r.pass());
    assert_eq!(r.body["order"], 8);
    assert_eq!(r.body["hyperplanes"].as_array().unwrap().len(), 4);
    assert_eq!(r.body["basic_invariant_degrees"], serde_json::json!([2, 4]));
}

#[test]
fn qchi_on_g26() {
    let r = dispatch(&config(Command::Qchi, "g26.json", "det^3")).unwrap();
    assert!(r.pass());
    let terms: Vec<TermJson> = serde_json::from_value(r.body["q_chi"].clone()).unwrap();
    let q = poly_from_json(&terms, 3, 12).unwrap();
    let want = parse_poly("(x^3 - y^3)*(x^3 - z^3)*(y^3 - z^3)", 3, 12).unwrap();
    assert!(q.eq_up_to_scalar(&want).is_some());
}

#[test]
fn verify_g26_passes_with_constant_minus_16() {
    let mut c = config(Command::VerifyG26, "g26.json", "det^3");
    c.forms_file = Some(fixture("g26_det3_forms.json"));
    let (code, out) = run(&c);
    assert_eq!(code, EXIT_PASS, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["body"]["printed_constant"], serde_json::json!(["-16", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"]));
}

#[test]
fn basis_certificate_round_trips() {
    let r = dispatch(&config(Command::Basis, "s3.json", "det")).unwrap();
    assert!(r.pass());
    let text = serde_json::to_string_pretty(&r.body).unwrap();
    let cert: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&cert).unwrap(), r.body);
    assert_eq!(cert.generators.len(), 3);
}

#[test]
fn saito_exit_codes() {
    let mut c = config(Command::Saito, "g26.json", "det^3");
    c.forms_file = Some(fixture("g26_det3_forms.json"));
    assert_eq!(run(&c).0, EXIT_PASS);
    c.character = "det^2".into();
    assert_eq!(run(&c).0, EXIT_MATH);
    c.forms_file = None;
    assert_eq!(run(&c).0, EXIT_INPUT);
}

#[test]
fn input_errors() {
    assert_eq!(run(&config(Command::Info, "missing.json", "det")).0, EXIT_INPUT);
    assert_eq!(run(&config(Command::Qchi, "b2.json", "sgn^x")).0, EXIT_INPUT);
    let mut c = config(Command::Info, "b2.json", "det");
    c.group_file = None;
    assert_eq!(run(&c).0, EXIT_INPUT);
}

#[test]
fn character_table_file() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("b2_sign_on_first_generator.json");
    std::fs::write(&path, r#"{"generator_values": [["-1", "0"], ["1", "0"]]}"#).unwrap();
    let r = dispatch(&config(Command::Qchi, "b2.json", path.to_str().unwrap())).unwrap();
    assert!(r.pass());
    let hs = r.body["hyperplanes"].as_array().unwrap();
    let total: u64 = hs.iter().map(|h| h["a_chi"].as_u64().unwrap()).sum();
    assert_eq!(total, 2);
    let b = dispatch(&config(Command::Basis, "b2.json", path.to_str().unwrap())).unwrap();
    assert!(b.pass());
}

#[test]
fn same_seed_same_report() {
    let mut c = config(Command::Logcheck, "b2.json", "det");
    c.seed = 11;
    let a = run(&c);
    let b = run(&c);
    assert_eq!(a, b);
    assert_eq!(a.0, EXIT_PASS);
}

#[test]
fn hilbert_table() {
    let mut c = config(Command::Hilbert, "cyclic_6.json", "det^2");
    c.degree_cap = Some(12);
    let r = dispatch(&c).unwrap();
    assert!(r.pass());
    assert_eq!(r.body["polynomials"], r.body["predicted"]);
}

#[test]
fn binary_flags_and_threads() {
    let bin = env!("CARGO_BIN_EXE_semiinv");
    let out = Process::new(bin)
        .args(["info", "--group"])
        .arg(fixture("s2.json"))
        .env("SEMIINV_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert!(String::from_utf8_lossy(&out.stdout).contains("order 2"));
    let bad = Process::new(bin).args(["info", "--degree-cap", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    let unknown = Process::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(unknown.status.code(), Some(EXIT_INPUT));
}
