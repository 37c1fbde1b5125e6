use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn oge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oge")).args(args).output().expect("spawn oge")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn rotation_estimate_is_class_zero() {
    let out = oge(&["estimate", "--system", "rotation", "--eps", "0.2,0.1,0.05", "--n", "300"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["profile"]["stable_class"], "0");
    assert_eq!(v["profile"]["h"], 0.0);
}

#[test]
fn homology_dehn_twist() {
    let out = oge(&["homology", "--matrix", "1,1;0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["sp"], 1.0);
    assert_eq!(v["k"], 1);
}

#[test]
fn homology_hyperbolic_has_no_exponent() {
    let v = json_of(&oge(&["homology", "--matrix", "[[2,1],[1,1]]"]));
    assert!(v["k"].is_null());
    let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
    assert!((v["log_sp"].as_f64().unwrap() - golden_sq.ln()).abs() < 1e-9);
}

#[test]
fn cascade_build_log_five_stages_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = oge(&["cascade-build", "--target", "log2", "--stages", "5", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json_of(&out)["certificate"]["all_pass"], true);
    assert!(dir.path().join("envelope.tsv").exists());

    let stored = dir.path().join("cascade.json");
    let ok = oge(&["cascade-verify", "--params", stored.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&stored).unwrap()).unwrap();
    doc["params"]["amplitudes"][1] = Value::String("1000/72".into());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let out = oge(&["cascade-verify", "--params", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["certificate"]["all_pass"], false);
}

#[test]
fn validation_errors_exit_two() {
    for args in [
        &["estimate", "--system", "nope"][..],
        &["estimate", "--system", "rotation", "--eps", "0.1,0.2,0.05"],
        &["estimate", "--system", "rotation", "--delta-rule", "fixed:0.5"],
        &["numbers", "--system", "torus_linear"],
        &["homology", "--matrix", "1.5,0;0,1"],
        &["cascade-build", "--target", "log2", "--stages", "6"],
        &["estimate"],
    ] {
        assert_eq!(oge(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["numbers", "--system", "morse_smale", "--n", "120"];
    let (a, b) = (oge(&args), oge(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["pretty"], "(0, [n])");
}

fn write(dir: &Path, name: &str, f: impl Fn(f64) -> f64) -> String {
    let mut s = String::from("n\tvalue\n");
    for n in 1..=400 {
        s.push_str(&format!("{n}\t{}\n", f(n as f64)));
    }
    let p = dir.join(name);
    std::fs::write(&p, s).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn compare_stored_curves() {
    let dir = tempfile::tempdir().unwrap();
    let lin = write(dir.path(), "lin.tsv", |n| n);
    let sq = write(dir.path(), "sq.tsv", |n| n * n);
    let v = json_of(&oge(&["compare", &lin, &sq]));
    assert_eq!(v["relation"], "Less");
    let est = dir.path().join("est");
    let out = oge(&["estimate", "--system", "rotation", "--n", "100", "--out", est.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let curve = est.join("curve_eps0p05.tsv");
    let v = json_of(&oge(&["compare", curve.to_str().unwrap(), &lin]));
    assert_eq!(v["relation"], "Less");
}
