use std::io::Write;
use std::process::{Command, Output};

use livshift::bounds::System;
use livshift::hydrogenic::HydrogenicState;
use livshift::perturbation::spin_orbit_shift;
use livshift::tensor::KfTensor;
use serde_json::Value;

fn livshift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_livshift"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn numbers(v: &Value, out: &mut Vec<f64>) {
    match v {
        Value::Number(n) => out.push(n.as_f64().unwrap()),
        Value::Array(a) => a.iter().for_each(|x| numbers(x, out)),
        Value::Object(m) => m.values().for_each(|x| numbers(x, out)),
        _ => {}
    }
}

#[test]
fn hydrogen_shift_report() {
    let v = json(&livshift(&[
        "shift", "hydrogen", "--n", "1", "--l", "0", "--m", "0", "--uniform-k", "1e-6",
    ]));
    let value = v["value_hartree"].as_f64().unwrap();
    assert!((value - 1e-6).abs() < 1e-20);
    assert_eq!(v["constants"]["hartree_ev"].as_f64(), Some(27.211386245988));
    let ev = v["value_ev"].as_f64().unwrap();
    assert_eq!(ev, value * 27.211386245988);
    assert_eq!(v["discrepancy_flag"], Value::Bool(false));
}

#[test]
fn json_is_byte_identical_and_round_trips() {
    let args = ["shift", "helium", "--uniform-k", "1e-5", "--mc-samples", "100000", "--seed", "42"];
    let a = livshift(&args);
    let b = livshift(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);

    let v = json(&a);
    let mut nums = Vec::new();
    numbers(&v, &mut nums);
    assert!(nums.len() > 8);
    for x in nums {
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<f64>(&text).unwrap().to_bits(), x.to_bits());
    }
    assert_eq!(v["seed"].as_u64(), Some(42));
    assert_eq!(v["discrepancy_flag"], Value::Bool(true));
}

#[test]
fn json_values_are_the_library_doubles() {
    let v = json(&livshift(&["shift", "spin-orbit", "--n", "2", "--l", "1", "--j", "1/2", "--uniform-k", "3e-7"]));
    let s = HydrogenicState::new(
        1.0,
        livshift::hydrogenic::QuantumNumbers::new(2, 1, 0).unwrap().with_twice_j(1).unwrap(),
    )
    .unwrap();
    let lib = spin_orbit_shift(&s, &KfTensor::uniform(3e-7).unwrap()).unwrap();
    assert_eq!(v["value_hartree"].as_f64().unwrap().to_bits(), lib.value_hartree.to_bits());
}

#[test]
fn bound_table_lists_published_bounds() {
    let o = livshift(&["bound", "table", "--accuracy-ev", "1e-12", "--mc-samples", "200000"]);
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    let published: Vec<f64> = rows.iter().map(|r| r["paper_bound"].as_f64().unwrap()).collect();
    assert_eq!(published, vec![2.8e-17, 4.1e-18, 8.7e-13, 3.8e-17]);
    for r in rows {
        let ratio = r["bound"].as_f64().unwrap() / r["paper_bound"].as_f64().unwrap();
        assert_eq!(r["ratio"].as_f64().unwrap(), ratio);
    }

    let text = stdout(&livshift(&[
        "bound", "table", "--accuracy-ev", "1e-12", "--mc-samples", "200000", "--format", "text",
    ]));
    for token in ["2.8e-17", "4.1e-18", "8.7e-13", "3.8e-17", "Hydrogen atom", "Helium atom", "hartree_ev"] {
        assert!(text.contains(token), "{token} missing from\n{text}");
    }
    let csv = stdout(&livshift(&["bound", "table", "--mc-samples", "200000", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().next().unwrap().starts_with("system,label,"));
}

#[test]
fn bound_single_defaults_to_hydrogen_ground_state() {
    let v = json(&livshift(&["bound", "single", "--accuracy-ev", "1e-12"]));
    let row = &v["rows"][0];
    assert_eq!(row["system"], serde_json::to_value(System::Hydrogen).unwrap());
    let b = row["bound"].as_f64().unwrap();
    assert!((b - 1e-12 / 27.211386245988).abs() < 1e-14 * b);
}

#[test]
fn missing_tensor_file_is_usage_error() {
    let o = livshift(&["field", "--charge", "1", "--at", "0,0,1", "--kf-file", "missing.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing.json"));
}

#[test]
fn malformed_tensor_file_is_usage_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"kappa": [[1e-3, 0], [0, 1e-3]]}}"#).unwrap();
    let path = f.path().to_str().unwrap().to_owned();
    let o = livshift(&["shift", "hydrogen", "--kf-file", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(&path));
}

#[test]
fn tensor_file_and_config_are_honoured() {
    let mut kf = tempfile::NamedTempFile::new().unwrap();
    write!(kf, r#"{{"uniform": 2e-6}}"#).unwrap();
    let mut cfg = tempfile::NamedTempFile::new().unwrap();
    write!(cfg, r#"{{"constants": {{"hartree_ev": 27.0}}, "output_format": "json"}}"#).unwrap();
    let v = json(&livshift(&[
        "shift",
        "hydrogen",
        "--kf-file",
        kf.path().to_str().unwrap(),
        "--config",
        cfg.path().to_str().unwrap(),
    ]));
    let h = v["value_hartree"].as_f64().unwrap();
    assert!((h - 2e-6).abs() < 1e-20);
    assert_eq!(v["value_ev"].as_f64().unwrap(), h * 27.0);
    assert_eq!(v["constants"]["hartree_ev"].as_f64(), Some(27.0));
}

#[test]
fn usage_and_computation_exit_codes() {
    assert_eq!(livshift(&["shift", "lithium"]).status.code(), Some(2));
    assert_eq!(livshift(&["shift", "hydrogen", "--nope"]).status.code(), Some(2));
    assert_eq!(
        livshift(&["shift", "hydrogen", "--uniform-k", "1e-3", "--kf-file", "x.json"]).status.code(),
        Some(2)
    );
    let o = livshift(&["field", "--at", "0,0,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("fields"));
    assert_eq!(livshift(&["manifold", "--n", "0"]).status.code(), Some(1));
    assert_eq!(livshift(&["--help"]).status.code(), Some(0));
}

#[test]
fn discrepancy_is_not_an_error() {
    let o = livshift(&["shift", "stark", "--uniform-k", "1e-6", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("discrepancy: yes"));
    assert!(text.contains(" eV"));
    assert!(text.contains("hartree_ev = 27.211386245988"));
}

#[test]
fn manifold_and_consistency_commands() {
    let v = json(&livshift(&["manifold", "--n", "2", "--spin", "--uniform-k", "1e-6"]));
    assert_eq!(v["eigenvalues_hartree"].as_array().unwrap().len(), 8);
    assert_eq!(v["eigenvalues_ev"].as_array().unwrap().len(), 8);

    let v = json(&livshift(&["check", "consistency", "--uniform-k", "1e-6"]));
    assert_eq!(v["kappa_trace"].as_f64(), Some(3e-6));
    assert_eq!(v["consistent"], Value::Bool(false));

    let csv = stdout(&livshift(&["check", "consistency", "--format", "csv"]));
    assert!(csv.contains("consistent,true,"));
}

#[test]
fn field_with_source_file() {
    let mut src = tempfile::NamedTempFile::new().unwrap();
    write!(
        src,
        r#"{{"samples": [{{"pos": [0, 0, 0.05], "j": [1, 0, 0, 0], "w": 1}}, {{"pos": [0, 0, -0.05], "j": [-1, 0, 0, 0], "w": 1}}]}}"#
    )
    .unwrap();
    let v = json(&livshift(&["field", "--at", "0,0,-5", "--source", src.path().to_str().unwrap()]));
    let a0 = v["potential"][0].as_f64().unwrap();
    let dipole = -0.1 / (4.0 * std::f64::consts::PI * 25.0);
    assert!((a0 - dipole).abs() < 0.01 * dipole.abs());
}
