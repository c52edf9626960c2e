//! Numerical census of line arrangements with only double and triple points
//! that can be minimal plus-one generated.
//!
//! For each degree `d` and each admissible `r = mdr(f)` the identities
//! `n₂ + 3n₃ = C(d, 2)` and `n₂ + 4n₃ = r² − r(d−1) + (d−1)² − 2` fix the
//! counts; the surviving tuples are filtered through the triple-point lower
//! bound, the Schönheim upper bound and the nodal bound `mdr ≥ d − 2`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::BuiltinName;
use crate::field::Rational;

pub const MIN_DEGREE: usize = 3;
pub const MAX_DEGREE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("degree {0} is outside the census range {MIN_DEGREE}..={MAX_DEGREE}")]
    DegreeOutOfRange(usize),
}

/// Bounds attached to one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusBounds {
    pub d: usize,
    /// `⌈2d/3 − 2⌉`, may exceed `r_high`.
    pub r_low: i64,
    /// `⌊d/2⌋`.
    pub r_high: i64,
    /// `(d² − 4d − 5)/4`.
    pub n3_low: Rational,
    pub u3: i64,
    pub epsilon: i64,
}

impl CensusBounds {
    pub fn window_is_empty(&self) -> bool {
        self.r_low > self.r_high
    }
}

pub fn bounds(d: usize) -> Result<CensusBounds, CensusError> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&d) {
        return Err(CensusError::DegreeOutOfRange(d));
    }
    let di = d as i64;
    let r_low = Rational::new(2 * di - 6, 3).expect("nonzero denominator").ceil();
    Ok(CensusBounds {
        d,
        r_low: i64::try_from(r_low).expect("small"),
        r_high: di / 2,
        n3_low: triple_lower_bound(d),
        u3: u3(d),
        epsilon: epsilon(d),
    })
}

/// `(d² − 4d − 5)/4`.
pub fn triple_lower_bound(d: usize) -> Rational {
    let d = d as i64;
    Rational::new(d * d - 4 * d - 5, 4).expect("nonzero denominator")
}

pub fn epsilon(d: usize) -> i64 {
    i64::from(d % 6 == 5)
}

/// Schönheim bound `⌊⌊(d−1)/2⌋·d/3⌋ − ε(d)` on the number of triple points.
pub fn u3(d: usize) -> i64 {
    let d = d as i64;
    ((d - 1) / 2 * d) / 3 - epsilon(d as usize)
}

/// `2r² − 2r(d−1) + d² − 3d − 2 − 2n₃`; vanishes exactly when `(d, r, n₃)`
/// is compatible with minimal plus-one generation.
pub fn mpog_quadratic(d: i64, r: i64, n3: i64) -> i64 {
    2 * r * r - 2 * r * (d - 1) + d * d - 3 * d - 2 - 2 * n3
}

/// Discriminant `−4d² + 16d + 20 + 16n₃` of [`mpog_quadratic`] in `r`.
pub fn discriminant(d: i64, n3: i64) -> i64 {
    -4 * d * d + 16 * d + 20 + 16 * n3
}

/// The two roots in `r` when both are integers, smaller first.
pub fn discriminant_roots(d: i64, n3: i64) -> Option<(i64, i64)> {
    let disc = discriminant(d, n3);
    if disc < 0 {
        return None;
    }
    let s = BigInt::from(disc).sqrt();
    let s = i64::try_from(s).ok()?;
    if s * s != disc {
        return None;
    }
    let (lo, hi) = (2 * (d - 1) - s, 2 * (d - 1) + s);
    (lo % 4 == 0 && hi % 4 == 0).then_some((lo / 4, hi / 4))
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Why a candidate (or a whole degree) was discarded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RejectReason {
    NegativeTriples {
        n3: i64,
    },
    NegativeDoubles {
        n2: i64,
    },
    BelowTripleBound {
        n3: i64,
        bound: Rational,
    },
    AboveSchoenheim {
        n3: i64,
        u3: i64,
    },
    /// Only double points, yet `r < d − 2`.
    NodalBound {
        r: i64,
        d: i64,
    },
    /// `⌈2d/3 − 2⌉ > ⌊d/2⌋`: no admissible `mdr`.
    EmptyMdrWindow {
        r_low: i64,
        r_high: i64,
    },
    /// The triple-point lower bound alone exceeds the Schönheim bound.
    BoundChain {
        bound: Rational,
        u3: i64,
    },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::NegativeTriples { n3 } => write!(f, "n₃ = {n3} is negative"),
            RejectReason::NegativeDoubles { n2 } => write!(f, "n₂ = {n2} is negative"),
            RejectReason::BelowTripleBound { n3, bound } => {
                write!(f, "n₃ = {n3} is below the triple-point bound {bound}")
            }
            RejectReason::AboveSchoenheim { n3, u3 } => write!(f, "n₃ = {n3} exceeds U₃ = {u3}"),
            RejectReason::NodalBound { r, d } => {
                write!(f, "only double points but mdr = {r} < d − 2 = {}", d - 2)
            }
            RejectReason::EmptyMdrWindow { r_low, r_high } => {
                write!(f, "empty mdr window: {r_low} > {r_high}")
            }
            RejectReason::BoundChain { bound, u3 } => {
                write!(f, "n₃ lower bound {bound} exceeds U₃ = {u3}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Accepted,
    Rejected { reasons: Vec<RejectReason> },
}

/// One `(d, r)` cell of the enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub d: usize,
    pub r: i64,
    pub n2: i64,
    pub n3: i64,
    #[serde(flatten)]
    pub status: Status,
}

impl Candidate {
    pub fn is_accepted(&self) -> bool {
        self.status == Status::Accepted
    }
}

/// A degree rejected before looking at individual `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRejection {
    pub d: usize,
    pub reasons: Vec<RejectReason>,
}

/// A surviving weak combinatorics with every `r` that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcceptedTuple {
    pub d: usize,
    pub n2: i64,
    pub n3: i64,
    pub mdr_values: Vec<i64>,
    pub realization: Option<String>,
}

impl fmt::Display for AcceptedTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}, {})", self.d, self.n2, self.n3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub bounds: Vec<CensusBounds>,
    pub candidates: Vec<Candidate>,
    pub degree_rejections: Vec<DegreeRejection>,
    pub accepted: Vec<AcceptedTuple>,
}

impl CensusReport {
    pub fn accepted_tuples(&self) -> Vec<(usize, i64, i64)> {
        self.accepted.iter().map(|a| (a.d, a.n2, a.n3)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub max_degree: usize,
    /// Walk each mdr window from the top; the result must not change.
    pub reverse_r: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_degree: MAX_DEGREE,
            reverse_r: false,
        }
    }
}

/// Catalog arrangement realizing a tuple, if there is one.
pub fn known_realization(d: usize, n2: i64, n3: i64) -> Option<BuiltinName> {
    match (d, n2, n3) {
        (6, 9, 2) => Some(BuiltinName::L6),
        (7, 9, 4) => Some(BuiltinName::L7),
        (8, 7, 7) => Some(BuiltinName::L8),
        (9, 6, 10) => Some(BuiltinName::L9),
        _ => None,
    }
}

/// Checks one `(d, r)` cell.
pub fn candidate(b: &CensusBounds, r: i64) -> Candidate {
    let d = b.d as i64;
    let pairs = binom2(d);
    let n3 = r * r - r * (d - 1) + (d - 1) * (d - 1) - 2 - pairs;
    let n2 = pairs - 3 * n3;
    let mut reasons = Vec::new();
    if n3 < 0 {
        reasons.push(RejectReason::NegativeTriples { n3 });
    }
    if n2 < 0 {
        reasons.push(RejectReason::NegativeDoubles { n2 });
    }
    if Rational::from(n3) < b.n3_low {
        reasons.push(RejectReason::BelowTripleBound {
            n3,
            bound: b.n3_low.clone(),
        });
    }
    if n3 > b.u3 {
        reasons.push(RejectReason::AboveSchoenheim { n3, u3: b.u3 });
    }
    if n3 == 0 && r < d - 2 {
        reasons.push(RejectReason::NodalBound { r, d });
    }
    let status = if reasons.is_empty() {
        Status::Accepted
    } else {
        Status::Rejected { reasons }
    };
    Candidate {
        d: b.d,
        r,
        n2,
        n3,
        status,
    }
}

fn degree_rejection(b: &CensusBounds) -> Option<DegreeRejection> {
    let mut reasons = Vec::new();
    if b.window_is_empty() {
        reasons.push(RejectReason::EmptyMdrWindow {
            r_low: b.r_low,
            r_high: b.r_high,
        });
    }
    // n₃ is an integer, so compare the rounded-up bound.
    if b.n3_low.ceil() > BigInt::from(b.u3) {
        reasons.push(RejectReason::BoundChain {
            bound: b.n3_low.clone(),
            u3: b.u3,
        });
    }
    (!reasons.is_empty()).then_some(DegreeRejection { d: b.d, reasons })
}

pub fn enumerate_mpog_candidates(options: CensusOptions) -> CensusReport {
    let top = options.max_degree.min(MAX_DEGREE);
    let all_bounds: Vec<CensusBounds> = (MIN_DEGREE..=top)
        .map(|d| bounds(d).expect("degree in range"))
        .collect();
    let mut candidates = Vec::new();
    let mut degree_rejections = Vec::new();
    for b in &all_bounds {
        degree_rejections.extend(degree_rejection(b));
        let mut rs: Vec<i64> = (b.r_low.max(0)..=b.r_high).collect();
        if options.reverse_r {
            rs.reverse();
        }
        candidates.extend(rs.into_iter().map(|r| candidate(b, r)));
    }
    candidates.sort_by_key(|c| (c.d, c.n3, c.r));

    let mut accepted: Vec<AcceptedTuple> = Vec::new();
    for c in candidates.iter().filter(|c| c.is_accepted()) {
        match accepted.iter_mut().find(|a| (a.d, a.n2, a.n3) == (c.d, c.n2, c.n3)) {
            Some(a) => a.mdr_values.push(c.r),
            None => accepted.push(AcceptedTuple {
                d: c.d,
                n2: c.n2,
                n3: c.n3,
                mdr_values: vec![c.r],
                realization: known_realization(c.d, c.n2, c.n3).map(|n| n.to_string()),
            }),
        }
    }
    CensusReport {
        bounds: all_bounds,
        candidates,
        degree_rejections,
        accepted,
    }
}
