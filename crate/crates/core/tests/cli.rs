//! Golden-file tests for the command-line front end. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test --test cli`.

use std::path::PathBuf;

use hopfu::cli::{parse_action, parse_presentation, run};
use hopfu::quadalg::Presentation;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hopfu").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str, args: &[&str], want_code: i32) -> String {
    let (code, out, err) = invoke(args);
    assert_eq!(code, want_code, "{name}: stderr {err}");
    let path = PathBuf::from("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out, want, "{name} differs from golden output");
    let (code2, out2, _) = invoke(args);
    assert_eq!((code2, &out2), (code, &out), "{name} is not deterministic");
    out
}

#[test]
fn tensor() {
    let out = golden("tensor_3_2_0_2_0.json", &["tensor", "3", "2", "0", "2", "0"], 0);
    assert!(out.contains("\"display\": \"M(3,0) + S_1\""));
    assert!(out.contains("\"agreement\": true"));
}

#[test]
fn decompose() {
    golden("decompose.json", &["decompose", "tests/data/m2_0_tensor_s1_p3.json"], 0);
}

#[test]
fn green() {
    golden("green_mul.json", &["green", "mul", "--p", "3", "M(2,0)", "M(2,0) + S_1"], 0);
    golden("green_present_check.json", &["green", "present-check", "--p", "5"], 0);
    let out = golden("green_fpdim.json", &["green", "fpdim", "--p", "2", "M(2,1)"], 0);
    assert!(out.contains("\"fpdim\": 2.0"));
}

#[test]
fn hilbert_with_dependent_relation() {
    let out = golden("hilbert.json", &["hilbert", "tests/data/poly3_p3.json", "--max-deg", "5"], 0);
    assert!(out.contains("\"dependent_relations\": 1"));
}

#[test]
fn koszul_dual_and_frobenius() {
    golden("koszul_dual.json", &["koszul-dual", "tests/data/t05_2_p3.json", "--max-deg", "5"], 0);
    golden("frobenius_dual.json", &["frobenius", "tests/data/t05_2_p3.json", "--dual", "--cutoff", "8"], 0);
    golden("frobenius_infinite.json", &["frobenius", "tests/data/t05_2_p3.json", "--cutoff", "5"], 1);
}

#[test]
fn verify_family() {
    let out =
        golden("verify_t05_2.json", &["verify-family", "t05-2", "--p", "3", "--param", "i=0", "--max-deg", "6"], 0);
    assert!(out.contains("\"status\": \"pass\""));
    let csv = golden("verify_all.csv", &["verify-family", "all", "--table"], 0);
    assert_eq!(csv.lines().count(), 1 + 22);
    let bypass = golden(
        "verify_t05_9_bypass.csv",
        &["verify-family", "t05-9", "--unchecked", "--param", "b=1", "--param", "c=1", "--format", "csv"],
        1,
    );
    assert!(bypass.contains(",fail,fail,fail,fail"));
    let (code, _, err) = invoke(&[
        "verify-family",
        "t05-5",
        "--p",
        "5",
        "--param",
        "i=2",
        "--param",
        "j=0",
        "--param",
        "a=2",
        "--param",
        "eps=1",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("eps(a^2-1) = 0 fails"));
}

#[test]
fn verify_family_over_extension_field() {
    golden("verify_t05_10b_f4.json", &["verify-family", "t05-10b", "--k", "2", "--param", "e=[0,1]"], 0);
}

#[test]
fn solve_actions() {
    let out = golden(
        "solve_skew3.txt",
        &["solve-actions", "tests/data/skew3.json", "--budget", "100000000", "--format", "table"],
        0,
    );
    assert!(out.lines().any(|l| l == "result.inner_faithful_solutions: 0"));
    golden("solve_gl2_p2.json", &["solve-actions", "tests/data/poly2_p2.json", "--list"], 0);
    let (code, out, _) = invoke(&["solve-actions", "tests/data/poly3_p3.json", "--budget", "1000"]);
    assert_eq!(code, 1);
    assert!(out.contains("exceeds the budget 1000"));
}

#[test]
fn action_subcommands() {
    let inv = golden("invariants.json", &["invariants", "tests/data/gl2_m21.json", "--max-deg", "6"], 0);
    assert!(inv.contains("\"agreement\": true"));
    golden("graded_decompose.json", &["graded-decompose", "tests/data/gl2_m21.json", "--max-deg", "8"], 0);
    let ann = golden("annihilator.json", &["annihilator", "tests/data/gl2_m21.json", "--max-deg", "6"], 0);
    assert!(ann.contains("\"equals_span_wu\": true"));
}

#[test]
fn input_errors_exit_2() {
    let (code, _, err) = invoke(&["annihilator", "tests/data/bad_action.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("u^p = 0 fails"), "{err}");
    for args in [
        &["hilbert", "tests/data/truncated.json"][..],
        &["hilbert", "tests/data/bad_monomial.json"],
        &["hilbert", "tests/data/missing.json"],
        &["tensor", "3", "4", "0", "1", "0"],
        &["bogus"],
        &["verify-family", "nope"],
        &["verify-family", "t05-2", "--p", "2"],
        &["decompose", "tests/data/skew3.json"],
    ] {
        let (code, out, err) = invoke(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-family"));
}

#[test]
fn seed_is_recorded_but_does_not_change_results() {
    let (_, a, _) = invoke(&["tensor", "2", "2", "0", "2", "1"]);
    let (_, b, _) = invoke(&["--seed", "7", "tensor", "2", "2", "0", "2", "1"]);
    assert!(b.contains("\"seed\": 7"));
    let a: serde_json::Value = serde_json::from_str(&a).unwrap();
    let mut b: serde_json::Value = serde_json::from_str(&b).unwrap();
    b["inputs"].as_object_mut().unwrap().remove("seed");
    assert_eq!(a, b);
}

#[test]
fn presentation_round_trip() {
    for file in ["poly3_p3.json", "skew3.json", "t05_2_p3.json", "poly2_p2.json"] {
        let path = PathBuf::from("tests/data").join(file);
        let alg = parse_presentation(&path).unwrap();
        let canon = alg.to_presentation();
        let text = serde_json::to_string(&canon).unwrap();
        let again: Presentation = serde_json::from_str(&text).unwrap();
        assert_eq!(again, canon);
        assert_eq!(again.build().unwrap(), alg);
        assert_eq!(again.build().unwrap().to_presentation(), canon);
    }
    let act = parse_action(&PathBuf::from("tests/data/gl2_m21.json")).unwrap();
    assert!(act.is_inner_faithful());
}
