//! Line arrangements in the projective plane and their incidence data.

mod catalog;
mod lattice;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldDescriptor, FieldScalar, QuadraticElement, Rational, RationalFunction};
use crate::poly::{product_of_linear_forms, HomPoly};

pub use catalog::{builtin, BuiltinName, BuiltinParam, BUILTIN_NAMES};
pub use lattice::{lattice_isomorphic, Incidence, LATTICE_SEARCH_MAX_LINES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("arrangement has no lines")]
    Empty,
    #[error("line {0} is the zero form")]
    ZeroForm(usize),
    #[error("lines {0} and {1} are proportional")]
    DuplicateLine(usize, usize),
    #[error("cannot intersect a line with itself")]
    SameLine,
    #[error("lattice search supports at most {max} lines, got {d}")]
    TooLarge { d: usize, max: usize },
    #[error("unknown built-in arrangement {0:?}")]
    UnknownBuiltin(String),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("coefficients do not belong to the declared field {0}")]
    FieldMismatch(String),
}

/// A line `a·x + b·y + c·z = 0`, stored with its first nonzero coefficient
/// equal to one so that equality is projective equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Line<F: Field> {
    coeffs: [F; 3],
}

impl<F: Field> Line<F> {
    /// `None` for the zero form.
    pub fn new(coeffs: [F; 3]) -> Option<Self> {
        if coeffs.iter().all(F::is_zero) {
            return None;
        }
        let mut coeffs = coeffs;
        F::monic_vector(&mut coeffs);
        Some(Line { coeffs })
    }

    pub fn coeffs(&self) -> &[F; 3] {
        &self.coeffs
    }

    pub fn eval(&self, p: &[F; 3]) -> F {
        self.coeffs
            .iter()
            .zip(p)
            .fold(F::zero(&self.coeffs[0].context()), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    pub fn contains(&self, p: &[F; 3]) -> bool {
        self.eval(p).is_zero()
    }
}

/// The common point of two distinct lines, normalized with its first
/// nonzero coordinate equal to one.
pub fn intersect<F: Field>(l1: &Line<F>, l2: &Line<F>) -> Result<[F; 3], ArrangementError> {
    let [a1, b1, c1] = &l1.coeffs;
    let [a2, b2, c2] = &l2.coeffs;
    let mut p = [
        b1.mul(c2).sub(&c1.mul(b2)),
        c1.mul(a2).sub(&a1.mul(c2)),
        a1.mul(b2).sub(&b1.mul(a2)),
    ];
    if p.iter().all(F::is_zero) {
        return Err(ArrangementError::SameLine);
    }
    F::monic_vector(&mut p);
    Ok(p)
}

/// A point of multiplicity at least two and the lines through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint<F: Field> {
    pub coords: [F; 3],
    /// Sorted indices of the incident lines.
    pub incident: Vec<usize>,
}

impl<F: Field> IntersectionPoint<F> {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// Point counts by multiplicity and the total Tjurina number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeakCombinatorics {
    pub d: usize,
    /// `counts[k-2] = n_k` for `k = 2..=m(L)`.
    pub counts: Vec<usize>,
    pub tau: usize,
}

impl WeakCombinatorics {
    pub fn from_multiplicities(d: usize, mults: impl IntoIterator<Item = usize>) -> Self {
        let mut counts: Vec<usize> = Vec::new();
        for m in mults {
            assert!(m >= 2, "points have multiplicity at least two");
            if counts.len() < m - 1 {
                counts.resize(m - 1, 0);
            }
            counts[m - 2] += 1;
        }
        let tau = counts.iter().enumerate().map(|(i, n)| (i + 1) * (i + 1) * n).sum();
        WeakCombinatorics { d, counts, tau }
    }

    /// `n_k`, zero beyond the maximal multiplicity.
    pub fn n(&self, k: usize) -> usize {
        if k < 2 {
            return 0;
        }
        self.counts.get(k - 2).copied().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.counts.len() + 1
    }

    pub fn only_double_triple(&self) -> bool {
        self.counts.len() <= 2
    }

    /// `Σ C(k,2)·n_k`, which always equals `C(d,2)`.
    pub fn pair_count(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, n)| (i + 2) * (i + 1) / 2 * n)
            .sum()
    }

    /// Agreement of `n₂ + 4n₃` with `C(d,2) + n₃` for node/triple arrangements.
    pub fn tjurina_consistent(&self) -> bool {
        if !self.only_double_triple() {
            return true;
        }
        let (n2, n3) = (self.n(2), self.n(3));
        self.tau == n2 + 4 * n3 && self.tau == self.d * (self.d - 1) / 2 + n3
    }
}

impl fmt::Display for WeakCombinatorics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.counts.iter().map(|n| n.to_string()).collect();
        write!(f, "({}; {})", self.d, counts.join(", "))
    }
}

/// A reduced arrangement of distinct lines over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement<F: Field> {
    lines: Vec<Line<F>>,
    descriptor: FieldDescriptor,
    ctx: F::Context,
}

impl<F: Field> Arrangement<F> {
    pub fn new(forms: Vec<[F; 3]>, descriptor: FieldDescriptor, ctx: F::Context) -> Result<Self, ArrangementError> {
        if forms.is_empty() {
            return Err(ArrangementError::Empty);
        }
        let mut seen: HashMap<Line<F>, usize> = HashMap::new();
        let mut lines = Vec::with_capacity(forms.len());
        for (i, form) in forms.into_iter().enumerate() {
            let line = Line::new(form).ok_or(ArrangementError::ZeroForm(i))?;
            if let Some(&j) = seen.get(&line) {
                return Err(ArrangementError::DuplicateLine(j, i));
            }
            seen.insert(line.clone(), i);
            lines.push(line);
        }
        Ok(Arrangement { lines, descriptor, ctx })
    }

    pub fn lines(&self) -> &[Line<F>] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.descriptor
    }

    pub fn context(&self) -> &F::Context {
        &self.ctx
    }

    /// The product of the lines, rescaled to a primitive representative.
    pub fn defining_polynomial(&self) -> HomPoly<F> {
        let forms: Vec<[F; 3]> = self.lines.iter().map(|l| l.coeffs.clone()).collect();
        let p = product_of_linear_forms(&forms, &self.ctx).expect("validated lines");
        let degree = p.degree();
        let mut coeffs = p.into_coeffs();
        F::normalize_vector(&mut coeffs);
        HomPoly::from_coeffs(degree, coeffs, &self.ctx)
    }

    /// All points where at least two lines meet, ordered by their incident
    /// line sets.
    pub fn singular_points(&self) -> Vec<IntersectionPoint<F>> {
        let mut groups: HashMap<[F; 3], Vec<usize>> = HashMap::new();
        let d = self.lines.len();
        for i in 0..d {
            for j in i + 1..d {
                let p = intersect(&self.lines[i], &self.lines[j]).expect("distinct lines");
                let entry = groups.entry(p).or_default();
                for k in [i, j] {
                    if !entry.contains(&k) {
                        entry.push(k);
                    }
                }
            }
        }
        let mut points: Vec<IntersectionPoint<F>> = groups
            .into_iter()
            .map(|(coords, mut incident)| {
                incident.sort_unstable();
                IntersectionPoint { coords, incident }
            })
            .collect();
        points.sort_by(|a, b| a.incident.cmp(&b.incident));
        points
    }

    pub fn weak_combinatorics(&self) -> WeakCombinatorics {
        WeakCombinatorics::from_multiplicities(
            self.lines.len(),
            self.singular_points().iter().map(IntersectionPoint::multiplicity),
        )
    }

    pub fn has_only_double_triple(&self) -> bool {
        self.weak_combinatorics().only_double_triple()
    }

    pub fn incidence(&self) -> Incidence {
        Incidence::new(
            self.lines.len(),
            self.singular_points().into_iter().map(|p| p.incident).collect(),
        )
    }
}

impl Arrangement<RationalFunction> {
    /// Substitutes `t = t0`; fails if a coefficient has a pole there or two
    /// lines collapse.
    pub fn specialize(&self, t0: &Rational) -> Result<Arrangement<Rational>, ArrangementError> {
        let mut forms = Vec::with_capacity(self.lines.len());
        for (i, l) in self.lines.iter().enumerate() {
            let mut form = [Rational::zero(), Rational::zero(), Rational::zero()];
            for (slot, c) in form.iter_mut().zip(&l.coeffs) {
                *slot = c
                    .eval(t0)
                    .ok_or_else(|| ArrangementError::DegenerateParameter(format!("line {i} has a pole at t = {t0}")))?;
            }
            forms.push(form);
        }
        Arrangement::new(forms, FieldDescriptor::Rationals, ())
            .map_err(|e| ArrangementError::DegenerateParameter(format!("t = {t0}: {e}")))
    }
}

/// An arrangement over whichever field its input declared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynArrangement {
    Rational(Arrangement<Rational>),
    Quadratic(Arrangement<QuadraticElement>),
    Function(Arrangement<RationalFunction>),
}

/// Evaluates `$body` with `$a` bound to the typed arrangement.
#[macro_export]
macro_rules! with_arrangement {
    ($dyn:expr, $a:ident => $body:expr) => {
        match $dyn {
            $crate::arrangement::DynArrangement::Rational($a) => $body,
            $crate::arrangement::DynArrangement::Quadratic($a) => $body,
            $crate::arrangement::DynArrangement::Function($a) => $body,
        }
    };
}

impl DynArrangement {
    /// Builds from parsed coefficient triples, checking that every scalar
    /// lives in `descriptor`.
    pub fn from_scalars(forms: Vec<[FieldScalar; 3]>, descriptor: FieldDescriptor) -> Result<Self, ArrangementError> {
        let mismatch = || ArrangementError::FieldMismatch(descriptor.to_string());
        match &descriptor {
            FieldDescriptor::Rationals => {
                let typed = forms
                    .into_iter()
                    .map(|f| {
                        let [a, b, c] = f;
                        match (a, b, c) {
                            (FieldScalar::Rational(a), FieldScalar::Rational(b), FieldScalar::Rational(c)) => {
                                Ok([a, b, c])
                            }
                            _ => Err(mismatch()),
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(DynArrangement::Rational(Arrangement::new(
                    typed,
                    descriptor.clone(),
                    (),
                )?))
            }
            FieldDescriptor::Quadratic(ctx) => {
                let typed = forms
                    .into_iter()
                    .map(|f| {
                        let [a, b, c] = f;
                        match (a, b, c) {
                            (FieldScalar::Quadratic(a), FieldScalar::Quadratic(b), FieldScalar::Quadratic(c))
                                if a.context() == *ctx && b.context() == *ctx && c.context() == *ctx =>
                            {
                                Ok([a, b, c])
                            }
                            _ => Err(mismatch()),
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(DynArrangement::Quadratic(Arrangement::new(
                    typed,
                    descriptor.clone(),
                    ctx.clone(),
                )?))
            }
            FieldDescriptor::RationalFunctions { .. } => {
                let typed = forms
                    .into_iter()
                    .map(|f| {
                        let [a, b, c] = f;
                        match (a, b, c) {
                            (FieldScalar::Function(a), FieldScalar::Function(b), FieldScalar::Function(c)) => {
                                Ok([a, b, c])
                            }
                            _ => Err(mismatch()),
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(DynArrangement::Function(Arrangement::new(
                    typed,
                    descriptor.clone(),
                    (),
                )?))
            }
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        with_arrangement!(self, a => a.descriptor().clone())
    }

    pub fn len(&self) -> usize {
        with_arrangement!(self, a => a.len())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weak_combinatorics(&self) -> WeakCombinatorics {
        with_arrangement!(self, a => a.weak_combinatorics())
    }

    pub fn incidence(&self) -> Incidence {
        with_arrangement!(self, a => a.incidence())
    }

    /// Lines as dynamically typed coefficient triples.
    pub fn scalar_lines(&self) -> Vec<[FieldScalar; 3]> {
        match self {
            DynArrangement::Rational(a) => a
                .lines()
                .iter()
                .map(|l| l.coeffs().clone().map(FieldScalar::Rational))
                .collect(),
            DynArrangement::Quadratic(a) => a
                .lines()
                .iter()
                .map(|l| l.coeffs().clone().map(FieldScalar::Quadratic))
                .collect(),
            DynArrangement::Function(a) => a
                .lines()
                .iter()
                .map(|l| l.coeffs().clone().map(FieldScalar::Function))
                .collect(),
        }
    }

    /// Counts of points by multiplicity, keyed by multiplicity.
    pub fn multiplicity_histogram(&self) -> BTreeMap<usize, usize> {
        let wc = self.weak_combinatorics();
        (2..=wc.max_multiplicity())
            .map(|k| (k, wc.n(k)))
            .filter(|(_, n)| *n > 0)
            .collect()
    }
}
