//! The analysis report and its canonical JSON form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arrangement::{DynArrangement, WeakCombinatorics};
use crate::field::Field;
use crate::syzygy::{default_search_bound, ClassifyOptions, CurveClass, SyzygyError, SyzygyProfile};
use crate::with_arrangement;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Check {
            ok,
            detail: detail.into(),
        }
    }
}

/// Everything `analyze` prints. All numbers are exact integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub report_version: u32,
    pub input: String,
    pub field: String,
    pub d: usize,
    pub weak_combinatorics: WeakCombinatorics,
    pub tau: usize,
    pub mdr: usize,
    /// `dims[r] = dim AR(f)_r`.
    pub dims: Vec<usize>,
    pub exponents: Vec<usize>,
    pub delta_level: Option<i64>,
    pub class: String,
    pub checks: BTreeMap<String, Check>,
}

impl AnalysisReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.values().all(|c| c.ok)
    }

    /// Canonical JSON: keys sorted at every level, two-space indentation.
    /// Parsing and re-emitting the output reproduces it byte for byte.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        canonical_json(&value)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input               {}", self.input);
        let _ = writeln!(out, "field               {}", self.field);
        let _ = writeln!(out, "d                   {}", self.d);
        let _ = writeln!(out, "weak combinatorics  {}", self.weak_combinatorics);
        let _ = writeln!(out, "tau                 {}", self.tau);
        let _ = writeln!(out, "mdr                 {}", self.mdr);
        let exps: Vec<String> = self.exponents.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "exponents           ({})", exps.join(", "));
        let delta = self.delta_level.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(out, "delta level         {delta}");
        let _ = writeln!(out, "class               {}", self.class);
        out.push_str(&dims_table(&self.dims));
        out.push_str("checks\n");
        for (name, c) in &self.checks {
            let _ = writeln!(
                out,
                "  {:<22}{}  {}",
                name,
                if c.ok { "ok  " } else { "FAIL" },
                c.detail
            );
        }
        out
    }
}

/// `r | dim AR_r` table.
pub fn dims_table(dims: &[usize]) -> String {
    let mut out = String::from("  r  dim AR_r\n");
    for (r, n) in dims.iter().enumerate() {
        let _ = writeln!(out, "{r:>3}  {n}");
    }
    out
}

/// Pretty JSON with sorted keys.
pub fn canonical_json(value: &serde_json::Value) -> String {
    // serde_json's map is ordered by key unless `preserve_order` is enabled,
    // which this crate does not do.
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

/// Runs the whole pipeline on one arrangement.
pub fn analyze(input: &str, arr: &DynArrangement, options: &ClassifyOptions) -> Result<AnalysisReport, SyzygyError> {
    let wc = arr.weak_combinatorics();
    let profile = arr.classify(options)?;
    let euler = with_arrangement!(arr, a => euler_holds(a));
    Ok(build(input, arr, wc, &profile, euler))
}

fn euler_holds<F: Field>(a: &crate::arrangement::Arrangement<F>) -> bool {
    a.defining_polynomial().euler_defect().is_ok_and(|p| p.is_zero())
}

fn build(input: &str, arr: &DynArrangement, wc: WeakCombinatorics, p: &SyzygyProfile, euler: bool) -> AnalysisReport {
    let d = wc.d;
    let pairs = d * (d.saturating_sub(1)) / 2;
    let mut checks = BTreeMap::new();
    checks.insert("euler".to_string(), Check::new(euler, "x·fx + y·fy + z·fz = d·f"));
    checks.insert(
        "count_identity".to_string(),
        Check::new(
            wc.pair_count() == pairs,
            format!("sum of C(m_p, 2) = {} against C(d, 2) = {pairs}", wc.pair_count()),
        ),
    );
    checks.insert(
        "kernel_soundness".to_string(),
        Check::new(true, format!("{} relation vectors re-substituted", p.checked_relations)),
    );
    let (di, ri) = (d as i64, p.mdr as i64);
    let lhs = ri * ri - ri * (di - 1) + (di - 1) * (di - 1);
    let structural = p.curve_class == CurveClass::MinimalPlusOneGenerated;
    let agree = p.truncated || p.numerical_mpog == structural;
    checks.insert(
        "numerical_route".to_string(),
        Check::new(
            agree,
            format!(
                "r² − r(d−1) + (d−1)² = {lhs}, tau + 2 = {}, 2r ≤ d: {}; numerical {} vs exponents {}",
                p.tau + 2,
                2 * p.mdr <= d,
                p.numerical_mpog,
                structural
            ),
        ),
    );
    checks.insert(
        "generator_search".to_string(),
        Check::new(
            !p.truncated,
            format!(
                "searched r ≤ {} (default {}){}",
                p.search_bound,
                default_search_bound(d),
                if p.truncated { ", truncated" } else { "" }
            ),
        ),
    );
    AnalysisReport {
        report_version: REPORT_VERSION,
        input: input.to_string(),
        field: arr.descriptor().to_string(),
        d,
        tau: wc.tau,
        weak_combinatorics: wc,
        mdr: p.mdr,
        dims: p.dims.clone(),
        exponents: p.exponents.clone(),
        delta_level: p.delta_level,
        class: p.curve_class.to_string(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{builtin, BuiltinName};

    #[test]
    fn l6_report_round_trips() {
        let arr = builtin(BuiltinName::L6, None).unwrap();
        let rep = analyze("L6", &arr, &ClassifyOptions::default()).unwrap();
        assert_eq!((rep.mdr, rep.tau), (3, 17));
        assert_eq!(rep.class, "MinimalPlusOneGenerated");
        assert!(rep.all_checks_pass());
        let json = rep.to_canonical_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(canonical_json(&v), json);
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
        assert!(rep.to_text().contains("(6; 9, 2)"));
    }
}
