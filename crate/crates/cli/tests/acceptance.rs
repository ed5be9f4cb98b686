//! Acceptance gate: ten criteria, one test and one printed line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::process::Command;
use std::sync::OnceLock;

use hessec_core::{classify, lambda_zero, verify_tables, AutoKind, Check, Report, Status, TypeTag};

fn report() -> &'static Report {
    static R: OnceLock<Report> = OnceLock::new();
    R.get_or_init(|| verify_tables().expect("verification battery must run"))
}

fn check(name: &str) -> &'static Check {
    report()
        .checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("missing check {name}"))
}

fn require_pass(names: &[&str]) {
    for name in names {
        let c = check(name);
        assert_eq!(c.status, Status::Pass, "{name}: {}", c.details);
    }
}

fn announce(n: usize, what: &str) {
    println!("acceptance criterion {n:02}: pass ({what})");
}

#[test]
fn criterion_01_group_law_suite() {
    require_pass(&[
        "group-law-units-and-commutativity",
        "group-law-branch-agreement",
        "group-law-associativity-sample",
    ]);
    let assoc = check("group-law-associativity-sample");
    let triples: usize = assoc
        .details
        .split_whitespace()
        .next()
        .and_then(|w| w.parse().ok())
        .expect("triple count in details");
    assert!(triples >= 500, "only {triples} associativity triples");
    announce(1, "identity, inverse, commutativity, branches, associativity");
}

#[test]
fn criterion_02_torsion_cardinalities() {
    require_pass(&["torsion-cardinalities", "two-torsion-roots-lambda-zero"]);
    announce(2, "4, 9, 36 points and the explicit halving roots");
}

#[test]
fn criterion_03_loci_closed_forms() {
    require_pass(&["fixed-loci", "triple-fixed-loci"]);
    assert!(
        check("triple-fixed-loci").details.contains("27-point locus"),
        "the 27-point locus comparison must be recorded"
    );
    announce(3, "closed-form loci equal definitional scans, 27-point list exact");
}

#[test]
fn criterion_04_classification_counts() {
    require_pass(&["classification-counts"]);
    let cls = classify(&lambda_zero().unwrap(), AutoKind::Tau2).unwrap();
    assert_eq!(cls.class_count(TypeTag::B), 1);
    assert_eq!(cls.class_count(TypeTag::E), 2);
    announce(4, "3 / 1+2 / 2+2 isomorphism classes by orbit enumeration");
}

#[test]
fn criterion_05_pair_potential_coherence() {
    require_pass(&["pair-potential-coherence"]);
    announce(5, "relations of every row equal the potential's derivatives");
}

#[test]
fn criterion_06_superpotential_witnesses() {
    require_pass(&["superpotential-witnesses"]);
    announce(6, "witnesses exist, exceptional witness is diag(eta^8, eta^5, eta^2)");
}

#[test]
fn criterion_07_aut_scalars() {
    require_pass(&["symmetry-scalars"]);
    announce(7, "3 sqrt3 rescaling, translation membership, order-six rejections");
}

#[test]
fn criterion_08_hilbert_dimensions() {
    require_pass(&["hilbert-dimensions"]);
    announce(8, "(1, 3, 6, 10, 15) at both exponents of every row");
}

#[test]
fn criterion_09_exceptional_pairs_not_twists() {
    require_pass(&["exceptional-pairs-not-twists"]);
    assert!(
        check("exceptional-pairs-not-twists")
            .details
            .contains("{0, 3}"),
        "exponent disjointness must be recorded"
    );
    announce(9, "no induced pair reaches the exceptional exponents");
}

#[test]
fn criterion_10_errata_detection() {
    let bin = env!("CARGO_BIN_EXE_hessec");
    let plain = Command::new(bin)
        .args(["--json", "verify-tables"])
        .output()
        .expect("binary runs");
    assert!(plain.status.success(), "verify-tables must exit 0");
    let v: serde_json::Value = serde_json::from_slice(&plain.stdout).expect("json report");
    let errata: Vec<&str> = v["checks"]
        .as_array()
        .expect("checks array")
        .iter()
        .filter(|c| c["status"] == "erratum")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        errata,
        vec![
            "printed-type-b-condition",
            "printed-type-b-potential",
            "printed-type-h-potentials"
        ]
    );
    assert_eq!(v["summary"]["fail"], 0);
    let strict = Command::new(bin)
        .args(["verify-tables", "--strict"])
        .output()
        .expect("binary runs");
    assert_eq!(strict.status.code(), Some(1), "--strict must fail on errata");
    announce(10, "published-table discrepancies reported as errata, strict promotes");
}
