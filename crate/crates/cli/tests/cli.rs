use assert_cmd::Command;
use serde_json::Value;

fn xlat() -> Command {
    Command::cargo_bin("xlat").unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let out = xlat().args(args).assert().success().get_output().stdout.clone();
    serde_json::from_slice(&out).unwrap()
}

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(include_str!("../schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn example_verdicts() {
    let v = run_json(&["isqtrivial", "x^4-4*x^3+4*x^2+6"]);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["group"]["order"], 8);
    let v = run_json(&["isqtrivial", "x^5-x^4-4*x^3+3*x^2+3*x-1"]);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["path"], "PrimeDegree");
}

#[test]
fn user_group_overrides_galois() {
    let v = run_json(&["isqtrivial", "x^4-4*x^3+4*x^2+6", "--group", "(1,2,3,4);(1,2)"]);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["path"], "DoublyTransitive");
}

#[test]
fn lattice_rat() {
    let v = run_json(&["lattice", "rat", "2,3,6"]);
    assert_eq!(v["basis"], serde_json::json!([[1, 1, -1]]));
    xlat().args(["lattice", "rat", "2,0"]).assert().code(1);
}

#[test]
fn input_errors_exit_1() {
    xlat().args(["isqtrivial", "x^2+"]).assert().code(1);
    xlat().args(["isqtrivial", "(x-1)*(x-2)"]).assert().code(1);
    xlat().args(["galois", "x^8+x+1"]).assert().code(1);
    xlat().args(["galoislike", "x^7-2"]).assert().code(1);
}

#[test]
fn bench_is_reproducible() {
    let args = ["bench", "--degree", "5", "--count", "20", "--seed", "7", "--csv", "-", "--deterministic"];
    let a = xlat().args(args).assert().success().get_output().clone();
    let b = xlat().args(args).arg("--jobs").arg("4").assert().success().get_output().clone();
    assert_eq!(a.stdout, b.stdout);
    let summary = |o: &[u8]| serde_json::from_slice::<Value>(o).unwrap()["summary"].clone();
    assert_eq!(summary(&a.stderr), summary(&b.stderr));
    let csv = String::from_utf8(a.stdout).unwrap();
    assert!(csv.starts_with("degree,index,verdict,path,group_tnumber,time_ms\n"));
    assert_eq!(csv.lines().count(), 21);
}

#[test]
fn catalog_verify_detects_tampering() {
    let v = run_json(&["catalog", "verify"]);
    assert_eq!(v["entries"], 36);
    let dir = std::env::temp_dir().join(format!("xlat-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.txt");
    let text = include_str!("../../core/data/catalog.txt");
    std::fs::write(&path, text).unwrap();
    std::fs::write(dir.join("catalog.txt.sha256"), include_str!("../../core/data/catalog.sha256")).unwrap();
    xlat().env("XLAT_CATALOG", &path).args(["catalog", "verify"]).assert().success();
    std::fs::write(&path, text.replacen("S4", "S5", 1)).unwrap();
    xlat().env("XLAT_CATALOG", &path).args(["catalog", "verify"]).assert().code(1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn every_report_matches_the_schema() {
    let validator = validator();
    let runs: &[&[&str]] = &[
        &["isqtrivial", "x^4-4*x^3+4*x^2+6"],
        &["isqtrivial", "x^6+x+1"],
        &["isqtrivial", "x^5-2"],
        &["fastbasis", "3*(x^2-2)^2"],
        &["fastbasis", "x^4-4*x^3+4*x^2+6"],
        &["fastbasis", "x^6+x+1"],
        &["galois", "x^6-2"],
        &["lattice", "rat", "2,3,6"],
        &["galoislike", "x^2+1"],
        &["galoislike", "(x-2)*(x-3)*(x-6)"],
        &["bench", "--degree", "4", "--count", "3"],
        &["catalog", "verify"],
    ];
    for args in runs {
        let v = run_json(args);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    // the schema is not vacuous
    assert!(!validator.is_valid(&serde_json::json!({ "input": "x", "verdict": "yes" })));
    assert!(!validator.is_valid(&serde_json::json!({ "unrelated": 1 })));
}

#[test]
fn galoislike_theorems() {
    let v = run_json(&["galoislike", "x^2+1"]);
    assert_eq!(v["rfqtri"]["holds"], true);
    assert_eq!(v["rfqtri"]["lattice_trivial"], false);
    let v = run_json(&["galoislike", "(x-2)*(x-3)*(x-6)", "--precision", "40"]);
    assert_eq!(v["r_f"]["basis"], serde_json::json!([[1, 1, -1]]));
    assert_eq!(v["galois_like"]["g_f"]["order"], 2);
    assert_eq!(v["rftri"]["holds"], true);
}
