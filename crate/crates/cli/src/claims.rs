//! The claim table behind `verify-paper`, and the pair comparison behind `ziegler`.

use std::fmt::Write as _;
use std::time::Instant;

use arrcheck_core::arrangement::WeakCombinatorics;
use arrcheck_core::census::{self, enumerate_mpog_candidates, CensusOptions, RejectReason, Status};
use arrcheck_core::report::canonical_json;
use arrcheck_core::syzygy::{mpog_identity, ClassifyOptions};
use arrcheck_core::{CurveClass, DynArrangement, Rational};
use rayon::prelude::*;
use serde::Serialize;

use crate::input::{load_builtin, load_named, InputError};
use crate::CliError;

/// The surviving weak combinatorics `(d, n₂, n₃)`.
pub const EXPECTED_TUPLES: [(usize, i64, i64); 4] = [(6, 9, 2), (7, 9, 4), (8, 7, 7), (9, 6, 10)];

/// Specializations of the `Lt` family that are checked one by one.
pub const LT_SAMPLES: [i64; 5] = [2, 3, -1, 5, 7];

#[derive(Clone, Debug, Serialize)]
pub struct ArrangementSummary {
    pub input: String,
    pub weak_combinatorics: WeakCombinatorics,
    pub mdr: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZieglerVerdict {
    pub report_version: u32,
    pub first: ArrangementSummary,
    pub second: ArrangementSummary,
    pub same_weak_combinatorics: bool,
    pub different_mdr: bool,
    pub verdict: bool,
}

impl ZieglerVerdict {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in [&self.first, &self.second] {
            let _ = writeln!(out, "{:<24}{}  mdr {}", s.input, s.weak_combinatorics, s.mdr);
        }
        let _ = writeln!(out, "same weak combinatorics  {}", self.same_weak_combinatorics);
        let _ = writeln!(out, "different mdr            {}", self.different_mdr);
        let _ = writeln!(out, "weak Ziegler pair        {}", self.verdict);
        out
    }
}

fn summarize(name: String, arr: &DynArrangement, options: &ClassifyOptions) -> Result<ArrangementSummary, CliError> {
    Ok(ArrangementSummary {
        input: name,
        weak_combinatorics: arr.weak_combinatorics(),
        mdr: arr.mdr(options.limits)?,
    })
}

fn verdict(a: ArrangementSummary, b: ArrangementSummary) -> ZieglerVerdict {
    let same = a.weak_combinatorics == b.weak_combinatorics;
    let different = a.mdr != b.mdr;
    ZieglerVerdict {
        report_version: 1,
        first: a,
        second: b,
        same_weak_combinatorics: same,
        different_mdr: different,
        verdict: same && different,
    }
}

pub fn ziegler(first: &str, second: &str, options: &ClassifyOptions) -> Result<ZieglerVerdict, CliError> {
    let (na, a) = load_named(first)?;
    let (nb, b) = load_named(second)?;
    Ok(verdict(summarize(na, &a, options)?, summarize(nb, &b, options)?))
}

type Outcome = Result<(bool, String), CliError>;

struct Claim {
    id: String,
    statement: String,
    check: Box<dyn Fn(&Ctx) -> Outcome + Send + Sync>,
}

struct Ctx<'a> {
    corrupt: Option<&'a str>,
    options: &'a ClassifyOptions,
}

impl Ctx<'_> {
    fn builtin(&self, name: &str, param: Option<&str>) -> Result<(String, DynArrangement), InputError> {
        load_builtin(name, param, self.corrupt)
    }
}

fn claim(
    id: impl Into<String>,
    statement: impl Into<String>,
    check: impl Fn(&Ctx) -> Outcome + Send + Sync + 'static,
) -> Claim {
    Claim {
        id: id.into(),
        statement: statement.into(),
        check: Box::new(check),
    }
}

fn builtin_claim(name: &'static str, mdr: usize, tau: usize, mpog: bool) -> Claim {
    let class = if mpog { "MPOG" } else { "not MPOG" };
    claim(
        format!("builtin:{name}"),
        format!("{name} has mdr {mdr}, tau {tau}, {class}"),
        move |ctx| {
            let (_, arr) = ctx.builtin(name, None)?;
            let p = arr.classify(ctx.options)?;
            let wc = arr.weak_combinatorics();
            let is_mpog = p.curve_class == CurveClass::MinimalPlusOneGenerated;
            let ok = p.mdr == mdr && wc.tau == tau && is_mpog == mpog;
            Ok((
                ok,
                format!("{wc}: mdr {}, tau {}, class {}", p.mdr, wc.tau, p.curve_class),
            ))
        },
    )
}

fn all_claims() -> Vec<Claim> {
    let mut claims = vec![
        claim(
            "census",
            "exactly (6;9,2), (7;9,4), (8;7,7), (9;6,10) survive the numerical census",
            |_| {
                let got = enumerate_mpog_candidates(CensusOptions::default()).accepted_tuples();
                Ok((got == EXPECTED_TUPLES, format!("accepted {got:?}")))
            },
        ),
        claim("census:max-degree-9", "every survivor has d ≤ 9", |_| {
            let opts = CensusOptions {
                max_degree: 9,
                ..CensusOptions::default()
            };
            let got = enumerate_mpog_candidates(opts).accepted_tuples();
            Ok((got == EXPECTED_TUPLES, format!("accepted up to d = 9: {got:?}")))
        }),
        builtin_claim("L6", 3, 17, true),
        builtin_claim("L7", 3, 25, true),
        builtin_claim("L8", 4, 35, true),
        builtin_claim("L9", 4, 46, true),
        builtin_claim("L9prime", 5, 46, false),
        claim(
            "identity:L9",
            "for L9, r² − r(d−1) + (d−1)² = 48 = tau + 2 with 2r ≤ d",
            |ctx| {
                let (_, arr) = ctx.builtin("L9", None)?;
                let wc = arr.weak_combinatorics();
                let r = arr.mdr(ctx.options.limits)? as i64;
                let d = wc.d as i64;
                let lhs = r * r - r * (d - 1) + (d - 1) * (d - 1);
                let ok = lhs == 48 && wc.tau as i64 + 2 == 48 && mpog_identity(wc.d, r as usize, wc.tau);
                Ok((ok, format!("d = {d}, r = {r}: {lhs} vs tau + 2 = {}", wc.tau + 2)))
            },
        ),
        claim("generic:Lt", "over Q(t) the family Lt has mdr 4", |ctx| {
            let (_, arr) = ctx.builtin("Lt", Some("generic"))?;
            let m = arr.mdr(ctx.options.limits)?;
            Ok((m == 4, format!("generic mdr {m}")))
        }),
    ];
    for t in LT_SAMPLES {
        claims.push(claim(
            format!("generic:Lt@{t}"),
            format!("Lt at t = {t} has mdr 4 and tau 46"),
            move |ctx| {
                let (_, arr) = ctx.builtin("Lt", Some(&t.to_string()))?;
                let m = arr.mdr(ctx.options.limits)?;
                let wc = arr.weak_combinatorics();
                Ok((m == 4 && wc.tau == 46, format!("{wc}: mdr {m}, tau {}", wc.tau)))
            },
        ));
    }
    claims.push(claim("ziegler", "L9 and L9prime form a weak Ziegler pair", |ctx| {
        let (na, a) = ctx.builtin("L9", None)?;
        let (nb, b) = ctx.builtin("L9prime", None)?;
        let v = verdict(summarize(na, &a, ctx.options)?, summarize(nb, &b, ctx.options)?);
        Ok((
            v.verdict,
            format!(
                "{} vs {}, mdr {} vs {}",
                v.first.weak_combinatorics, v.second.weak_combinatorics, v.first.mdr, v.second.mdr
            ),
        ))
    }));
    claims.push(claim(
        "bounds:d12",
        "for d = 12 the triple bound 91/4 exceeds U₃ = 20",
        |_| {
            let b = census::bounds(12).expect("in range");
            let expected = Rational::new(91, 4).expect("nonzero");
            let rejected = degree_rejected(12);
            let ok = b.u3 == 20 && b.n3_low == expected && rejected;
            Ok((
                ok,
                format!("n₃ ≥ {}, U₃ = {}, degree rejected: {rejected}", b.n3_low, b.u3),
            ))
        },
    ));
    claims.push(claim("bounds:d10-12", "degrees 10, 11 and 12 are all rejected", |_| {
        let report = enumerate_mpog_candidates(CensusOptions::default());
        let rejected: Vec<usize> = report
            .degree_rejections
            .iter()
            .map(|r| r.d)
            .filter(|d| *d >= 10)
            .collect();
        let none_accepted = report.candidates.iter().all(|c| c.d < 10 || !c.is_accepted());
        Ok((
            rejected == [10, 11, 12] && none_accepted,
            format!("rejected degrees ≥ 10: {rejected:?}"),
        ))
    }));
    claims.push(claim("degenerate:d4", "d = 4 forces n₃ = −1", |_| {
        let report = enumerate_mpog_candidates(CensusOptions::default());
        let rows: Vec<_> = report.candidates.iter().filter(|c| c.d == 4).collect();
        let ok = !rows.is_empty()
            && rows.iter().all(|c| {
                c.n3 == -1 && has_reason(&c.status, |r| matches!(r, RejectReason::NegativeTriples { n3: -1 }))
            });
        let n3s: Vec<i64> = rows.iter().map(|c| c.n3).collect();
        Ok((ok, format!("d = 4 rows give n₃ = {n3s:?}")))
    }));
    claims.push(claim(
        "degenerate:d5",
        "d = 5 fails the nodal bound mdr ≥ d − 2",
        |_| {
            let report = enumerate_mpog_candidates(CensusOptions::default());
            let rows: Vec<_> = report.candidates.iter().filter(|c| c.d == 5).collect();
            let ok = !rows.is_empty()
                && rows
                    .iter()
                    .all(|c| has_reason(&c.status, |r| matches!(r, RejectReason::NodalBound { .. })));
            let rs: Vec<i64> = rows.iter().map(|c| c.r).collect();
            Ok((ok, format!("d = 5 rows at r = {rs:?} hit the nodal bound")))
        },
    ));
    claims
}

fn degree_rejected(d: usize) -> bool {
    let report = enumerate_mpog_candidates(CensusOptions::default());
    report.degree_rejections.iter().any(|r| r.d == d)
}

fn has_reason(status: &Status, pred: impl Fn(&RejectReason) -> bool) -> bool {
    matches!(status, Status::Rejected { reasons } if reasons.iter().any(pred))
}

#[derive(Serialize)]
struct ClaimResult {
    id: String,
    statement: String,
    ok: bool,
    detail: String,
    #[serde(skip)]
    millis: u128,
}

fn selected(id: &str, only: &[String]) -> bool {
    only.is_empty()
        || only.iter().any(|o| {
            id == o
                || id
                    .strip_prefix(o.as_str())
                    .is_some_and(|rest| rest.starts_with([':', '@']))
        })
}

/// Runs the selected claims (in parallel) and renders them in table order.
pub fn run(
    only: &[String],
    json: bool,
    corrupt: Option<&str>,
    options: &ClassifyOptions,
) -> Result<String, (String, CliError)> {
    let claims: Vec<Claim> = all_claims().into_iter().filter(|c| selected(&c.id, only)).collect();
    if claims.is_empty() {
        let ids: Vec<String> = all_claims().into_iter().map(|c| c.id).collect();
        let e = CliError::CheckFailed(format!("--only matched no claim; ids are {}", ids.join(", ")));
        return Err((String::new(), e));
    }
    let ctx = Ctx { corrupt, options };
    let results: Vec<ClaimResult> = claims
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let (ok, detail) = match (c.check)(&ctx) {
                Ok(v) => v,
                Err(e) => (false, format!("error: {e}")),
            };
            ClaimResult {
                id: c.id.clone(),
                statement: c.statement.clone(),
                ok,
                detail,
                millis: start.elapsed().as_millis(),
            }
        })
        .collect();
    let failed: Vec<&str> = results.iter().filter(|r| !r.ok).map(|r| r.id.as_str()).collect();
    let out = if json {
        canonical_json(&serde_json::json!({
            "report_version": 1,
            "claims": results,
            "passed": results.len() - failed.len(),
            "failed": failed,
        }))
    } else {
        let mut out = String::new();
        for r in &results {
            let _ = writeln!(
                out,
                "{}  {:<22}{:>7} ms  {}\n{:34}{}",
                if r.ok { "PASS" } else { "FAIL" },
                r.id,
                r.millis,
                r.statement,
                "",
                r.detail
            );
        }
        let _ = writeln!(out, "{} passed, {} failed", results.len() - failed.len(), failed.len());
        out
    };
    if failed.is_empty() {
        Ok(out)
    } else {
        Err((
            out,
            CliError::CheckFailed(format!("failed claims: {}", failed.join(", "))),
        ))
    }
}
