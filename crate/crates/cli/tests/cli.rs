use std::process::{Command, Output};

use m1plus_core::{nth_product, omega, parse_element};

fn m1plus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_m1plus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn product_of_omega_with_itself() {
    let o = m1plus(&["product", "-u", "omega", "-n", "3", "-v", "omega"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1/2*vac");
}

#[test]
fn product_output_reparses() {
    let o = m1plus(&["product", "-u", "jay", "-n", "-2", "-v", "omega"]);
    assert_eq!(o.status.code(), Some(0));
    let printed = parse_element(stdout(&o).trim()).unwrap();
    let expected = nth_product(&m1plus_core::jay(), -2, &omega()).unwrap();
    assert_eq!(printed, expected);
}

#[test]
fn negative_modes_and_leading_minus() {
    let o = m1plus(&["product", "-u", "-h(-1) vac", "-n", "-1", "-v", "vac"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-h(-1) vac");
}

#[test]
fn parse_errors_exit_2() {
    let o = m1plus(&["product", "-u", "h(-1 vac", "-n", "0", "-v", "vac"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    let o = m1plus(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = m1plus(&["classify", "--s", "3", "--lambda", "1,x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passes_and_is_repeatable() {
    let a = m1plus(&["verify"]);
    assert_eq!(a.status.code(), Some(0));
    let b = m1plus(&["verify"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 7);
    let o = m1plus(&["verify", "--only", "p9", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["reports"][0]["name"], "P9");
    let o = m1plus(&["verify", "--only", "p11"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_examples() {
    let o = m1plus(&["classify", "--s", "2", "--lambda", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "M(1,(1))(theta)");
    let o = m1plus(&["classify", "--s", "3", "--lambda", "0,2"]);
    assert_eq!(stdout(&o).trim(), "M(1,(0,2))");
    let o = m1plus(&["classify", "--s", "3", "--lambda", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn act_on_whittaker_vectors() {
    let o = m1plus(&[
        "act",
        "--sector",
        "untwisted",
        "--zeta",
        "0,2",
        "--u",
        "jay",
        "--n",
        "7",
    ]);
    assert_eq!(stdout(&o).trim(), "16*u");
    let o = m1plus(&[
        "act", "--sector", "twisted", "--zeta", "0", "--u", "omega", "--n", "1",
    ]);
    assert_eq!(stdout(&o).trim(), "1/16*u");
    let o = m1plus(&[
        "act",
        "--sector",
        "twisted",
        "--zeta",
        "1",
        "--u",
        "h(-1) vac",
        "--n",
        "1/2",
    ]);
    assert_eq!(stdout(&o).trim(), "u");
    let o = m1plus(&[
        "act",
        "--sector",
        "untwisted",
        "--zeta",
        "0,2",
        "--u",
        "omega",
        "--n",
        "1",
        "--w",
        "h(-1/2) u",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn commutator_entries() {
    let o = m1plus(&[
        "commutator",
        "-u",
        "omega",
        "-i",
        "3",
        "-v",
        "omega",
        "-j",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(
        lines,
        [
            "1 * (h(-2)h(-1) vac)_4",
            "3 * (h(-1)^2 vac)_3",
            "1 * (1/2*vac)_1"
        ]
    );
}

#[test]
fn dims_and_cmn() {
    let o = m1plus(&["dims", "--n", "10"]);
    assert_eq!(stdout(&o).trim(), "42");
    let o = m1plus(&["dims", "--n", "9", "--parity", "odd"]);
    assert_eq!(stdout(&o).trim(), "16");
    let o = m1plus(&["cmn", "--maxdeg", "2"]);
    assert!(stdout(&o).contains("c(1,1) = 1/16"));
    let o = m1plus(&["cmn", "--maxdeg", "3", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 10);
}

#[test]
fn structured_product_has_exact_terms() {
    let o = m1plus(&[
        "product",
        "-u",
        "omega",
        "-n",
        "1",
        "-v",
        "omega",
        "--format",
        "structured",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["element"], "h(-1)^2 vac");
    assert_eq!(v["terms"][0]["numerator"], "1");
    assert_eq!(v["terms"][0]["denominator"], "1");
}
