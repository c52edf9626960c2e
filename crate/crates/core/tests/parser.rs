//! The parser never panics, and arrangement files survive a write/read cycle.

use arrcheck_core::arrangement::{builtin, BUILTIN_NAMES};
use arrcheck_core::field::FieldScalar;
use arrcheck_core::parse::{load_arrangement, load_arrangement_str, parse_linear_form, parse_scalar, ArrangementFile};
use arrcheck_core::{DynArrangement, FieldDescriptor, Rational};
use proptest::prelude::*;

fn descriptors() -> Vec<FieldDescriptor> {
    vec![
        FieldDescriptor::Rationals,
        FieldDescriptor::gaussian(),
        FieldDescriptor::rational_functions("t"),
    ]
}

/// Strings over the parser's alphabet plus a little noise.
fn expression_soup() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(vec![
            "x", "y", "z", "e", "t", "1", "2", "0", "17", "+", "-", "*", "/", "^", "(", ")", " ", "3/4", "−", "é",
            "^-1",
        ]),
        0..24,
    )
    .prop_map(|parts| parts.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn scalar_parsing_is_total(s in expression_soup()) {
        for desc in descriptors() {
            let _ = parse_scalar(&s, &desc);
            let _ = parse_linear_form(&s, &desc);
        }
    }

    #[test]
    fn arbitrary_text_is_total(s in "\\PC{0,40}") {
        for desc in descriptors() {
            let _ = parse_scalar(&s, &desc);
            let _ = parse_linear_form(&s, &desc);
        }
        let _ = load_arrangement_str(&s);
    }

    #[test]
    fn file_loading_is_total(lines in prop::collection::vec(expression_soup(), 0..6), field in 0usize..4) {
        let field = ["\"Q\"", "{\"quadratic\": [0, -1]}", "{\"rational_function\": \"t\"}", "\"R\""][field];
        let lines: Vec<String> = lines.iter().map(|l| format!("{l:?}")).collect();
        let doc = format!("{{\"field\": {field}, \"lines\": [{}]}}", lines.join(","));
        let _ = load_arrangement_str(&doc);
    }

    /// Integers print and parse back to themselves.
    #[test]
    fn rational_literals_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let r = Rational::new(n, d).unwrap();
        let parsed = parse_scalar(&r.to_string(), &FieldDescriptor::Rationals).unwrap();
        prop_assert_eq!(parsed, FieldScalar::Rational(r));
    }
}

fn same_lines(a: &DynArrangement, b: &DynArrangement) -> bool {
    a.descriptor() == b.descriptor() && a.scalar_lines() == b.scalar_lines()
}

#[test]
fn catalog_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in BUILTIN_NAMES {
        let arr = builtin(name.parse().unwrap(), None).unwrap();
        let file = ArrangementFile::from_arrangement(&arr, Some(name.to_string()));
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, file.to_json()).unwrap();
        let back = load_arrangement(&path).unwrap();
        assert!(same_lines(&arr, &back), "{name}");
        assert_eq!(arr.weak_combinatorics(), back.weak_combinatorics());
        // writing the reloaded arrangement gives the same document
        let again = ArrangementFile::from_arrangement(&back, Some(name.to_string()));
        assert_eq!(again.to_json(), file.to_json());
    }
}

#[test]
fn duplicate_and_zero_lines_are_invalid_arrangements() {
    let dup = load_arrangement_str(r#"{"field": "Q", "lines": ["x + y", "2*x + 2*y", "z"]}"#).unwrap_err();
    assert!(dup.is_invalid_arrangement());
    let zero = load_arrangement_str(r#"{"field": "Q", "lines": ["x - x", "y"]}"#).unwrap_err();
    assert!(zero.is_invalid_arrangement());
    let syntax = load_arrangement_str(r#"{"field": "Q", "lines": ["x +"]}"#).unwrap_err();
    assert!(!syntax.is_invalid_arrangement());
    let symbol = load_arrangement_str(r#"{"field": "Q", "lines": ["x + e*y"]}"#).unwrap_err();
    assert!(!symbol.is_invalid_arrangement());
}
