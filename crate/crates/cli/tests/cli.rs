//! Exit-code contract and JSON output shapes of the binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hessec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["curve", "--lambda", "1"][..],
        &["curve", "--lambda", "eps^3"][..],
        &["curve", "--lambda", "bogus+1"][..],
        &["pair", "--lambda", "0", "--p", "1:2:3", "--i", "2"][..],
        &["torsion", "--lambda", "0", "--n", "7"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unknown_flags_exit_two() {
    let out = run(&["curve", "--lambda", "0", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn curve_reports_invariants() {
    let v = json(&["--json", "curve", "--lambda", "1+sqrt3"]);
    assert_eq!(v["j_invariant"], "1728");
    assert_eq!(v["symmetry"]["kind"], "tau3");
    assert_eq!(v["symmetry"]["order"], 4);
    let v = json(&["--json", "curve", "--lambda", "0"]);
    assert_eq!(v["j_invariant"], "0");
    assert_eq!(v["symmetry"]["order"], 6);
}

#[test]
fn torsion_counts_match() {
    for (n, expected) in [(2, 4), (3, 9), (6, 36)] {
        let v = json(&["--json", "torsion", "--lambda", "5/3", "--n", &n.to_string()]);
        assert_eq!(v["count"], expected);
        assert_eq!(v["points"].as_array().unwrap().len(), expected as usize);
    }
}

#[test]
fn classify_json_carries_relations_and_potentials() {
    let v = json(&["--json", "classify", "--lambda", "5/3"]);
    assert_eq!(v["j_invariant"], "4956477625/941192");
    let types = v["types"].as_array().expect("types array");
    let tags: Vec<&str> = types.iter().map(|t| t["tag"].as_str().unwrap()).collect();
    assert_eq!(tags.iter().filter(|t| **t == "B").count(), 3);
    assert!(tags.iter().all(|t| *t == "A" || *t == "B"));
    for entry in types {
        assert!(entry["representative_point"].is_array());
        assert_eq!(entry["relations"].as_array().unwrap().len(), 3);
        assert!(entry["potential"].is_array());
        match entry["tag"].as_str().unwrap() {
            "A" => assert!(entry["count"].is_null()),
            _ => assert_eq!(entry["count"], 9),
        }
    }
}

#[test]
fn pair_json_reports_hilbert_series() {
    let v = json(&[
        "--json", "pair", "--lambda", "0", "--p", "1:1:-cbrt2", "--i", "3",
    ]);
    assert_eq!(v["regular"], true);
    assert_eq!(v["hilbert"].as_array().unwrap().len(), 5);
    assert_eq!(v["hilbert"][4], 15);
    assert_eq!(v["relations"].as_array().unwrap().len(), 3);
}

#[test]
fn potential_json_reports_witness() {
    let v = json(&[
        "--json", "potential", "--lambda", "0", "--p", "eta^8:eta^4:1", "--i", "2",
    ]);
    assert_eq!(v["superpotential"], false);
    let w = v["witness"].as_array().expect("witness matrix");
    assert_eq!(w.len(), 3);
    // plain superpotential for the untwisted pair
    let v = json(&[
        "--json", "potential", "--lambda", "5/3", "--p", "1:1:2", "--i", "0",
    ]);
    assert_eq!(v["superpotential"], true);
}

#[test]
fn verify_tables_output_is_deterministic() {
    let a = run(&["--json", "verify-tables"]);
    let b = run(&["--json", "verify-tables"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}
