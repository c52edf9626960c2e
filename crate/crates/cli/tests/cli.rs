//! End-to-end behaviour of the `arrcheck` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn arrcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrcheck"))
        .args(args)
        .env_remove("ARRCHECK_RMAX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares against a checked-in file; `ARRCHECK_BLESS=1` rewrites it.
fn assert_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("ARRCHECK_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden {name} differs");
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn analyze_l6_text_and_json() {
    let o = arrcheck(&["analyze", "--builtin", "L6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("mdr                 3"));
    assert!(text.contains("class               MinimalPlusOneGenerated"));

    let o = arrcheck(&["analyze", "--builtin", "L6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("analyze_L6.json", &stdout(&o));
}

#[test]
fn json_reports_round_trip_byte_for_byte() {
    for name in ["L6", "L7", "L9prime"] {
        let out = stdout(&arrcheck(&["analyze", "--builtin", name, "--json"]));
        let v: Value = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, out, "{name}");
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in [
            "input",
            "field",
            "d",
            "weak_combinatorics",
            "tau",
            "mdr",
            "dims",
            "exponents",
            "delta_level",
            "class",
            "checks",
            "report_version",
        ] {
            assert!(keys.contains(&k), "{name}: missing {k}");
        }
        assert_eq!(v["report_version"], 1);
    }
}

#[test]
fn l9prime_is_not_mpog() {
    let v: Value = serde_json::from_str(&stdout(&arrcheck(&["analyze", "--builtin", "L9prime", "--json"]))).unwrap();
    assert_eq!(v["mdr"], 5);
    assert_eq!(v["tau"], 46);
    assert_ne!(v["class"], "MinimalPlusOneGenerated");
}

#[test]
fn census_outputs() {
    let o = arrcheck(&["census", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    let o = arrcheck(&["census", "--show-rejected"]);
    let text = stdout(&o);
    assert!(text.contains("d = 12: n₃ lower bound 91/4 exceeds U₃ = 20"), "{text}");
    assert_golden("census_show_rejected.txt", &text);
    let a = stdout(&arrcheck(&["census", "--json", "--max-degree", "9"]));
    let b = stdout(&arrcheck(&["census", "--json"]));
    let acc = |s: &str| serde_json::from_str::<Value>(s).unwrap()["accepted"].clone();
    assert_eq!(acc(&a), acc(&b));
    // below the last survivor the strict check fails
    assert_eq!(
        arrcheck(&["census", "--strict", "--max-degree", "8"]).status.code(),
        Some(4)
    );
    assert_eq!(arrcheck(&["census", "--max-degree", "13"]).status.code(), Some(1));
}

#[test]
fn ziegler_verdicts() {
    let v = |a: &str, b: &str| -> bool {
        let out = stdout(&arrcheck(&["ziegler", a, b, "--json"]));
        serde_json::from_str::<Value>(&out).unwrap()["verdict"]
            .as_bool()
            .unwrap()
    };
    assert!(v("L9", "L9prime"));
    assert!(!v("L9", "L9"));
    assert!(!v("L6", "L9"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write_tmp(&dir, "dup.json", r#"{"field": "Q", "lines": ["x", "y", "2*x"]}"#);
    assert_eq!(arrcheck(&["analyze", &dup]).status.code(), Some(2));
    let zero = write_tmp(&dir, "zero.json", r#"{"field": "Q", "lines": ["x", "y - y"]}"#);
    assert_eq!(arrcheck(&["analyze", &zero]).status.code(), Some(2));
    let bad = write_tmp(&dir, "bad.json", r#"{"field": "Q", "lines": ["x +* y"]}"#);
    assert_eq!(arrcheck(&["analyze", &bad]).status.code(), Some(1));
    let missing = dir.path().join("missing.json").display().to_string();
    assert_eq!(arrcheck(&["analyze", &missing]).status.code(), Some(1));
    assert_eq!(arrcheck(&["analyze"]).status.code(), Some(1));
    assert_eq!(arrcheck(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(arrcheck(&["analyze", "--builtin", "L10"]).status.code(), Some(1));
    assert_eq!(
        arrcheck(&["analyze", "--builtin", "Lt", "--param", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(arrcheck(&["--help"]).status.code(), Some(0));
    assert_eq!(
        arrcheck(&["analyze", "--builtin", "L9", "--r-max", "3"]).status.code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_arrcheck"))
        .args(["analyze", "--builtin", "L6"])
        .env("ARRCHECK_RMAX", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn rmax_truncation_is_reported() {
    let o = Command::new(env!("CARGO_BIN_EXE_arrcheck"))
        .args(["analyze", "--builtin", "L6", "--json"])
        .env("ARRCHECK_RMAX", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"]["generator_search"]["ok"], false);
    assert_eq!(v["dims"].as_array().unwrap().len(), 6);
}

#[test]
fn mdr_and_profile() {
    assert_eq!(stdout(&arrcheck(&["mdr", "--builtin", "L8"])), "4\n");
    assert_eq!(stdout(&arrcheck(&["mdr", "--builtin", "Lt", "--param", "-1"])), "4\n");
    let table = stdout(&arrcheck(&["profile", "--builtin", "L6"]));
    assert!(table.lines().any(|l| l.trim() == "3  2"), "{table}");
}

#[test]
fn verify_paper_filtering_and_self_test() {
    let o = arrcheck(&["verify-paper", "--only", "ziegler", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ids: Vec<&str> = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["ziegler"]);

    let o = arrcheck(&[
        "verify-paper",
        "--only",
        "builtin",
        "--only",
        "ziegler",
        "--corrupt",
        "L8",
    ]);
    assert_eq!(o.status.code(), Some(4));
    let text = stdout(&o);
    let failed: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failed.len(), 1, "{text}");
    assert!(failed[0].contains("builtin:L8"));
    assert_eq!(arrcheck(&["verify-paper", "--only", "nothing"]).status.code(), Some(4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Malformed files never crash the binary: exit 1 or 2, never a panic.
    #[test]
    fn malformed_inputs_map_to_contract_codes(body in "[\\[\\]{}\"a-z0-9:,+*/ -]{0,60}") {
        let dir = tempfile::tempdir().unwrap();
        let path = write_tmp(&dir, "f.json", &body);
        let code = arrcheck(&["analyze", &path]).status.code();
        prop_assert!(matches!(code, Some(0..=2)), "{body:?} gave {code:?}");
    }

    #[test]
    fn malformed_lines_map_to_contract_codes(line in "[xyzet0-9+*/^() -]{0,16}") {
        let dir = tempfile::tempdir().unwrap();
        let doc = serde_json::json!({"field": "Q", "lines": ["x", "y", line]}).to_string();
        let path = write_tmp(&dir, "f.json", &doc);
        let code = arrcheck(&["mdr", &path]).status.code();
        prop_assert!(matches!(code, Some(0..=2)), "{line:?} gave {code:?}");
    }
}
