//! End-to-end runs of the `trimat` binary: subcommand behavior, exit
//! codes, and report determinism.

use std::process::{Command, Output};

fn trimat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn counterexample_refuted_with_exit_1() {
    let out = trimat(&["congruent", "fixtures:ex-matenoneq"]);
    assert_eq!(exit_code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], "refuted");
    assert_eq!(r["details"]["congruent"], false);
    assert_eq!(
        r["details"]["certificate"]["method"],
        "complete-enumeration"
    );
    assert_eq!(r["details"]["c1"][0][0], "2");
    assert_eq!(r["details"]["c2"][0][0], "3");
    // the Coxeter screen cannot separate the pair
    assert_eq!(r["details"]["coxeter_c1"], r["details"]["coxeter_c2"]);
}

#[test]
fn congruent_named_matrix_pair() {
    let out = trimat(&["congruent", "fixtures:c-paper", "fixtures:c-paper-mate"]);
    assert_eq!(exit_code(&out), 1);
    let out = trimat(&["congruent", "fixtures:c-paper", "fixtures:c-paper"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(report(&out)["verdict"], "pass");
}

#[test]
fn congruent_inline_literals() {
    let out = trimat(&["congruent", "[[2,0],[1,1]]", "[[1,0],[1,2]]"]);
    assert_eq!(exit_code(&out), 0);
    let r = report(&out);
    assert_eq!(r["details"]["congruent"], true);
    assert!(r["details"]["witness"].is_array());
}

#[test]
fn onepoint_mate_and_verify_pass() {
    let out = trimat(&["mate", "fixtures:onepoint", "--mode", "projective"]);
    assert_eq!(exit_code(&out), 0, "stdout: {}", String::from_utf8_lossy(&out.stdout));
    let out = trimat(&["tilt-verify", "fixtures:onepoint"]);
    assert_eq!(exit_code(&out), 0);
    let r = report(&out);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["details"]["identification"]["bijective"], true);
    assert_eq!(r["details"]["identification"]["multiplicative"], true);
}

#[test]
fn artin_desk_check_and_verify() {
    let out = trimat(&[
        "check",
        "fixtures:artin-desk",
        "--tilting",
        "fixtures:f4-injective",
    ]);
    assert_eq!(exit_code(&out), 0);
    let out = trimat(&[
        "tilt-verify",
        "fixtures:artin-desk",
        "--tilting",
        "fixtures:f4-injective",
        "--window",
        "6",
    ]);
    assert_eq!(exit_code(&out), 0);
    let r = report(&out);
    assert_eq!(r["details"]["blocks"]["corner_bimodule"], 1);
    assert_eq!(r["details"]["blocks"]["opposite_corner"], 0);
}

#[test]
fn check_unknown_at_bound_exits_3() {
    // M over k[y]/(y³) has no finite resolution within any bound
    let out = trimat(&[
        "check",
        "fixtures:ex-matenoneq",
        "--tilting",
        "fixtures:f2-regular",
        "--bound",
        "8",
    ]);
    assert_eq!(exit_code(&out), 3);
    assert_eq!(report(&out)["verdict"], "unknown");
}

#[test]
fn gldim_exit_codes() {
    let out = trimat(&["gldim", "fixtures:trivext-DM", "--bound", "12"]);
    assert_eq!(exit_code(&out), 3);
    let r = report(&out);
    assert_eq!(r["details"]["gldim"]["at_least"], 12);
    let out = trimat(&["gldim", "fixtures:trivext-M"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(report(&out)["details"]["gldim"]["finite"], 1);
}

#[test]
fn repetitive_shift_passes() {
    let out = trimat(&["repetitive", "fixtures:ex-matenoneq", "--periods", "3"]);
    assert_eq!(exit_code(&out), 0);
    let r = report(&out);
    assert_eq!(r["details"]["shift_isomorphism"]["pass"], true);
    assert_eq!(r["details"]["truncation_dim"], 36);
    // one period is the trivial extension Λ ⋉ DΛ
    let out = trimat(&["repetitive", "fixtures:ex-matenoneq", "--periods", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(report(&out)["details"]["truncation_dim"], 12);
    // zero periods is rejected, not a crash
    let out = trimat(&["repetitive", "fixtures:ex-matenoneq", "--periods", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn trivext_builds() {
    let out = trimat(&["trivext", "fixtures:f4", "fixtures:m-trivext"]);
    assert_eq!(exit_code(&out), 0);
    let r = report(&out);
    assert_eq!(r["details"]["dim"], 4);
    assert_eq!(r["details"]["gldim"]["finite"], 1);
}

#[test]
fn mate_artin_refuses_on_infinite_gldim() {
    let out = trimat(&["mate", "fixtures:ex-matenoneq", "--mode", "artin"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn mate_general_mode_with_tilting_module() {
    let out = trimat(&[
        "mate",
        "fixtures:artin-desk",
        "--mode",
        "general",
        "--tilting",
        "fixtures:f4-injective",
    ]);
    assert_eq!(exit_code(&out), 0);
    let r = report(&out);
    assert_eq!(r["details"]["mate"]["dims"]["r"], 3);
    assert_eq!(r["details"]["mate"]["dims"]["m"], 1);
    assert_eq!(r["details"]["mate"]["dims"]["s"], 2);
    assert_eq!(r["details"]["end_is_basic"], true);
    // general mode without --tilting is an input error
    let out = trimat(&["mate", "fixtures:artin-desk", "--mode", "general"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn validate_and_fixtures() {
    let out = trimat(&["validate"]);
    assert_eq!(exit_code(&out), 0);
    let out = trimat(&["fixtures"]);
    assert_eq!(exit_code(&out), 0);
    // bare document, directly consumable as --doc input
    let doc = report(&out);
    assert_eq!(doc["schema"], "trimat-doc/1");
}

#[test]
fn unknown_reference_is_input_error() {
    let out = trimat(&["cartan", "fixtures:nope"]);
    assert_eq!(exit_code(&out), 2);
    assert_eq!(report(&out)["verdict"], "error");
}

#[test]
fn fixtures_output_is_deterministic() {
    let a = trimat(&["fixtures"]);
    let b = trimat(&["fixtures"]);
    assert_eq!(a.stdout, b.stdout, "corpus emission must be byte-identical");
}

#[test]
fn reports_are_deterministic() {
    let strip_timing = |out: &Output| -> serde_json::Value {
        let mut v = report(out);
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    for args in [
        vec!["congruent", "fixtures:ex-matenoneq"],
        vec!["cartan", "fixtures:artin-desk"],
    ] {
        let a = strip_timing(&trimat(&args));
        let b = strip_timing(&trimat(&args));
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap(),
            "report for {args:?} not reproducible"
        );
    }
}

#[test]
fn document_round_trip() {
    // emit the corpus, use it as a --doc, resolve by bare names
    let out = trimat(&["fixtures"]);
    let doc = String::from_utf8(out.stdout.clone()).unwrap();
    let dir = std::env::temp_dir().join("trimat-doc-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corpus.json");
    std::fs::write(&path, doc).unwrap();
    let out = trimat(&["--doc", path.to_str().unwrap(), "cartan", "f1"]);
    assert_eq!(exit_code(&out), 0, "stdout: {}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_eq!(r["details"]["cartan"][0][0], "2");
    let out = trimat(&["--doc", path.to_str().unwrap(), "validate"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn prime_field_cartan() {
    let out = trimat(&["--field", "fp:7", "cartan", "fixtures:f4"]);
    assert_eq!(exit_code(&out), 0, "stdout: {}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_eq!(r["details"]["cartan"][1][0], "1");
}

#[test]
fn bad_field_spec_is_input_error() {
    let out = trimat(&["--field", "fp:6", "validate"]);
    assert_eq!(exit_code(&out), 2);
}
