use std::path::PathBuf;
use std::process::{Command, Output};

const SL2_FILE: &str = r#"{
  "name": "sl2_plain",
  "basis": ["H", "E", "F"],
  "brackets": [
    {"left": "H", "right": "E", "value": {"E": "2"}},
    {"left": "H", "right": "F", "value": {"F": "-2"}},
    {"left": "E", "right": "F", "value": {"H": "1"}}
  ],
  "subspaces": {"h": {"vectors": [{"E": "1"}]}}
}"#;

fn invdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invdiff")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("invdiff-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn every_preset_passes_check() {
    for name in invdiff::presets::NAMES {
        let o = invdiff(&["--setup", name, "check"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        assert!(stdout(&o).contains("jacobi: true"));
    }
}

#[test]
fn invariants_on_horocycle() {
    let o = invdiff(&["--setup", "sl2r_horocycle", "invariants", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("basis:\n  - H^2\n"), "{out}");
    assert!(out.contains("connected-H semantics"));
    assert!(out.contains("Ad(-I)"));
}

#[test]
fn reductive_exit_codes() {
    let o = invdiff(&["--setup", "sl2r_horocycle", "reductive"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("certificate:"));
    let o = invdiff(&["--setup", "so3_sphere", "reductive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("given m invariant: true"));
}

#[test]
fn corrupted_and_invalid_files_exit_2() {
    let broken = write_temp("broken.json", "{\"name\": ");
    let o = invdiff(&["--setup", broken.to_str().unwrap(), "check"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: setup file:"));

    let perturbed = write_temp("perturbed.json", &SL2_FILE.replace(r#"{"E": "2"}"#, r#"{"E": "2", "H": "1"}"#));
    let o = invdiff(&["--setup", perturbed.to_str().unwrap(), "check"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Jacobi identity fails on (H, E, F)"), "{}", stderr(&o));

    let o = invdiff(&["--setup", "/nonexistent/setup.json", "check"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn omitted_m_is_reported() {
    let path = write_temp("plain.json", SL2_FILE);
    let o = invdiff(&["--setup", path.to_str().unwrap(), "check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("m chosen: auto-complement"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(invdiff(&["invariants", "--degree", "2"]).status.code(), Some(2));
    assert_eq!(invdiff(&["--setup", "so3_sphere", "invariants"]).status.code(), Some(2));
    assert_eq!(invdiff(&["--setup", "so3_sphere", "frobnicate"]).status.code(), Some(2));
    assert_eq!(invdiff(&["--setup", "so3_sphere", "normalize", "X +"]).status.code(), Some(2));
    let o = invdiff(&["--setup", "so3_sphere", "laplace", "--signature", "1", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("signature has length 1"));
    let o = invdiff(&["--setup", "sl2r_horocycle", "generation", "--degree", "2", "--gen", "K"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("generator 0"));
    let o = invdiff(&["--setup", "sl2r_horocycle", "generation", "--gen", "E"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(invdiff(&["--help"]).status.code(), Some(0));
}

#[test]
fn property_failures_exit_1() {
    let o = invdiff(&["--setup", "sl2r_horocycle", "generation", "--degree", "3", "--gen", "H^2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = invdiff(&["--setup", "sl2r_horocycle", "dmod", "K"]);
    assert_eq!(o.status.code(), Some(1));
    let trivial = write_temp("trivial_h.json", &SL2_FILE.replace(r#"[{"E": "1"}]"#, "[]"));
    let o = invdiff(&["--setup", trivial.to_str().unwrap(), "commutativity", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample:"));
}

#[test]
fn passing_checks_exit_0() {
    for args in [
        &["--setup", "sl2r_horocycle", "commutativity", "--degree", "4"][..],
        &["--setup", "sl2r_horocycle", "equality", "--degree", "3"],
        &["--setup", "sl2r_horocycle", "generation", "--degree", "4", "--gen", "H"],
        &["--setup", "so3_sphere", "laplace", "--signature", "1,1", "--degree", "4"],
        &["--setup", "sl2r_hyperbolic", "laplace", "--signature", "1", "1", "--degree", "2"],
        &["--setup", "sl3r_horocycle", "decompose", "--degree", "2"],
        &["--setup", "sl2r_horocycle", "dmod", "H^2 + 3*H*E"],
        &["--setup", "sl2r_horocycle", "symmetrize", "H*K"],
    ] {
        let o = invdiff(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}{}", stdout(&o), stderr(&o));
    }
    assert_eq!(invdiff(&["presets"]).status.code(), Some(0));
}

#[test]
fn negative_signature_is_accepted() {
    let o = invdiff(&["--setup", "sl2r_hyperbolic", "laplace", "--signature", "1,-1", "--degree", "2"]);
    // H^2 - P^2 is not rotation invariant, so the signature parses but the
    // generator is rejected
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("generator 0"), "{}", stderr(&o));
}

#[test]
fn project_casimir() {
    let o = invdiff(&["--setup", "sl2r_horocycle", "project", "1/2*H^2 + E*F + F*E"]);
    assert!(stdout(&o).contains("canonical representative: 1/2*H^2 + 1*H^1\n"));
}

#[test]
fn json_mirrors_text() {
    let o = invdiff(&["--setup", "sl2r_horocycle", "--json", "invariants", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["basis"], serde_json::json!(["H^3"]));
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["status"], "pass");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--setup", "sl3r_horocycle", "invariants", "--degree", "3"][..],
        &["--setup", "sl2c_real_GN", "commutativity", "--degree", "2"],
        &["--setup", "sl3r_horocycle", "reductive"],
        &["--setup", "sl2r_horocycle", "--json", "decompose", "--degree", "3"],
    ] {
        let a = invdiff(args);
        let b = invdiff(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
