use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use invtwist::suite::HomogenizationInstance;
use invtwist::{ComoduleAlgebra, Field};
use invtwist_cli::defs::{parse_str, Definition};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn invtwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invtwist")).args(args).current_dir(corpus()).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn builtin_h4_passes_hopf_check() {
    let o = invtwist(&["check", "hopf", "builtin:H4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = invtwist(&["check", "hopf", "builtin:H4", "--field", "GF:7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn zero_twisting_map_fails_unit_axiom() {
    let o = invtwist(&["check", "twisting", "zero-r.twisting.toml"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("1_R ⊗ b_R = 1 ⊗ b"), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        &["check", "algebra", "malformed-scalar.algebra.toml"][..],
        &["check", "algebra", "unknown-key.algebra.toml"],
        &["check", "algebra", "missing.toml"],
        &["check", "hopf", "c2.algebra.toml"],
        &["check", "hopf", "builtin:H5"],
        &["check", "hopf", "h4.hopf.toml", "--field", "GF:5"],
        &["check", "hopf", "builtin:H4", "--max-dim", "15"],
        &["frobnicate"],
        &["pipeline", "sqt-double", "--builtin", "kC2xC2", "--r", "triangular"],
        &["pipeline", "homogenization"],
    ] {
        let o = invtwist(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn named_pipelines_pass() {
    for args in [
        &["pipeline", "comodule-twist", "--builtin", "kC2", "--c=-1"][..],
        &["pipeline", "comodule-twist", "--builtin", "kC2", "--c", "2", "--field", "GF:5"],
        &["pipeline", "homogenization", "--builtin", "H4"],
        &["pipeline", "sqt-double", "--builtin", "kC2", "--r", "triangular"],
        &["pipeline", "sqt-double", "--builtin", "H4", "--r", "triangular", "--alpha", "-2"],
        &["pipeline", "comodule-twist", "--input", "kc2-deform-gf5.nu.toml"],
        &["pipeline", "sqt-double", "--input", "h4-quasitriangular.sqt.toml", "--jobs", "2"],
    ] {
        let o = invtwist(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("result: PASS\n"));
    }
}

#[test]
fn failing_pipeline_names_its_stage() {
    let o = invtwist(&["pipeline", "sqt-double", "--input", "kc2-one-g.sqt.toml"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("failed stage: semiquasitriangular conditions"), "{}", stdout(&o));
    assert!(!stdout(&o).contains("implication violated"));
    let o = invtwist(&["pipeline", "comodule-twist", "--builtin", "kC2", "--c", "0"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("failed stage: ν is convolution invertible"));
}

#[test]
fn double_of_kc2_is_four_dimensional() {
    let o = invtwist(&["build", "double", "builtin:kC2"]);
    assert_eq!(code(&o), 0);
    let Definition::Algebra(d) = parse_str(&stdout(&o), &corpus()).unwrap() else { panic!("not an algebra") };
    assert_eq!(d.dim(), 4);
    assert!(d.certify().passed());
}

#[test]
fn flip_builds_the_tensor_product() {
    let o = invtwist(&["build", "twisted-product", "h4-c2-flip.twisting.toml"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let Definition::Algebra(p) = parse_str(&stdout(&o), &corpus()).unwrap() else { panic!() };
    let h4 = invtwist::constructions::sweedler_h4(Field::Rationals).unwrap();
    let c2 = invtwist::constructions::group_algebra(
        &invtwist::constructions::FiniteGroup::cyclic(2).unwrap(),
        Field::Rationals,
    );
    assert_eq!(p, h4.algebra().tensor_product(c2.algebra()).unwrap());
}

#[test]
fn derived_homogenization_map_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rprime.toml");
    let o = invtwist(&["build", "derive-rprime", "h4-homogenization.invariance.toml", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let Definition::LinMap(r) = parse_str(&text, &corpus()).unwrap() else { panic!() };
    let h = invtwist::constructions::sweedler_h4(Field::Rationals).unwrap();
    let closed = HomogenizationInstance::new(ComoduleAlgebra::regular(&h)).twisting_closed_form();
    assert!(r.entries_eq(&closed));
}

#[test]
fn report_is_deterministic_apart_from_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let o = invtwist(&["check", "sqt-element", "kc2-one-g.sqt.toml", "--report-out", path.to_str().unwrap()]);
        assert_eq!(code(&o), 1);
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["exit_code"], 1);
        v["wall_time_ms"] = 0.into();
        v["command"] = serde_json::Value::Null;
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
    let r = &reports[0];
    assert_eq!(r["format"], "invtwist-run-report");
    let failure = &r["stages"][1]["report"]["failures"][0];
    assert_eq!(failure["axiom"], invtwist::suite::SQT1);
    assert_eq!(r["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn build_to_stdout_keeps_summary_on_stderr() {
    let o = invtwist(&["build", "smash", "kc2-regular.comodule.toml"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("format = 1\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("result: PASS"));
}

#[test]
fn lists_builtins() {
    let o = invtwist(&["list-builtins"]);
    assert_eq!(code(&o), 0);
    for name in ["kC2", "kC2xC2", "H4"] {
        assert!(stdout(&o).contains(&format!("builtin:{name} ")), "{}", stdout(&o));
    }
}
