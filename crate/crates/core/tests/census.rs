//! Census invariants that do not depend on the published table.

use arrcheck_core::arrangement::builtin;
use arrcheck_core::census::{
    bounds, discriminant_roots, enumerate_mpog_candidates, known_realization, mpog_quadratic, CensusOptions,
    RejectReason, Status, MAX_DEGREE, MIN_DEGREE,
};
use arrcheck_core::syzygy::ClassifyOptions;
use arrcheck_core::{CurveClass, Rational};
use proptest::prelude::*;

#[test]
fn walking_windows_backwards_changes_nothing() {
    let forward = enumerate_mpog_candidates(CensusOptions::default());
    let backward = enumerate_mpog_candidates(CensusOptions {
        reverse_r: true,
        ..CensusOptions::default()
    });
    assert_eq!(forward, backward);
    assert_eq!(
        serde_json::to_string(&forward).unwrap(),
        serde_json::to_string(&backward).unwrap()
    );
}

#[test]
fn accepted_candidates_solve_the_quadratic() {
    let report = enumerate_mpog_candidates(CensusOptions::default());
    for c in report.candidates.iter().filter(|c| c.is_accepted()) {
        let d = c.d as i64;
        assert_eq!(mpog_quadratic(d, c.r, c.n3), 0, "{c:?}");
        let (lo, hi) = discriminant_roots(d, c.n3).expect("integral roots");
        assert!(c.r == lo || c.r == hi);
        assert_eq!(c.n2 + 3 * c.n3, d * (d - 1) / 2);
    }
}

#[test]
fn realizations_classify_as_minimal_plus_one_generated() {
    let report = enumerate_mpog_candidates(CensusOptions::default());
    assert_eq!(report.accepted.len(), 4);
    for a in &report.accepted {
        let name = known_realization(a.d, a.n2, a.n3).expect("every survivor is realized");
        assert_eq!(a.realization.as_deref(), Some(name.as_str()));
        let arr = builtin(name, None).unwrap();
        let wc = arr.weak_combinatorics();
        assert_eq!((wc.d, wc.n(2) as i64, wc.n(3) as i64), (a.d, a.n2, a.n3));
        let p = arr.classify(&ClassifyOptions::default()).unwrap();
        assert_eq!(p.curve_class, CurveClass::MinimalPlusOneGenerated, "{name:?}");
        assert!(a.mdr_values.contains(&(p.mdr as i64)), "{name:?}: mdr {}", p.mdr);
    }
}

#[test]
fn every_rejection_has_a_reason_that_holds() {
    let report = enumerate_mpog_candidates(CensusOptions::default());
    for c in &report.candidates {
        let b = bounds(c.d).unwrap();
        let Status::Rejected { reasons } = &c.status else {
            continue;
        };
        assert!(!reasons.is_empty());
        for reason in reasons {
            let holds = match reason {
                RejectReason::NegativeTriples { n3 } => *n3 < 0 && *n3 == c.n3,
                RejectReason::NegativeDoubles { n2 } => *n2 < 0 && *n2 == c.n2,
                RejectReason::BelowTripleBound { n3, bound } => Rational::from(*n3) < *bound,
                RejectReason::AboveSchoenheim { n3, u3 } => n3 > u3 && *u3 == b.u3,
                RejectReason::NodalBound { r, d } => c.n3 == 0 && *r < *d - 2,
                other => panic!("degree-level reason on a candidate: {other:?}"),
            };
            assert!(holds, "{c:?}: {reason}");
        }
    }
}

#[test]
fn degree_twelve_contradiction() {
    let b = bounds(12).unwrap();
    assert_eq!(b.u3, 20);
    assert_eq!(b.n3_low, Rational::new(91, 4).unwrap());
    let report = enumerate_mpog_candidates(CensusOptions::default());
    let row = report.degree_rejections.iter().find(|r| r.d == 12).unwrap();
    assert!(row
        .reasons
        .iter()
        .any(|r| r.to_string() == "n₃ lower bound 91/4 exceeds U₃ = 20"));
}

proptest! {
    /// Truncating the degree range only drops rows.
    #[test]
    fn smaller_ranges_are_prefixes(top in MIN_DEGREE..=MAX_DEGREE) {
        let full = enumerate_mpog_candidates(CensusOptions::default());
        let part = enumerate_mpog_candidates(CensusOptions { max_degree: top, ..CensusOptions::default() });
        let keep: Vec<_> = full.candidates.iter().filter(|c| c.d <= top).cloned().collect();
        prop_assert_eq!(&part.candidates, &keep);
        let acc: Vec<_> = full.accepted_tuples().into_iter().filter(|t| t.0 <= top).collect();
        prop_assert_eq!(part.accepted_tuples(), acc);
    }
}
