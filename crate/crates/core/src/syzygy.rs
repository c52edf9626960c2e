//! Jacobian syzygies of a plane curve `f = 0`.
//!
//! The relation module `AR(f)` consists of triples `(a, b, c)` of forms of
//! degree `r` with `a·fx + b·fy + c·fz = 0`. Its degree-`r` piece is the
//! kernel of the linear map `S_r³ → S_{r+d−1}`, computed here by exact
//! elimination. Minimal generators are counted degree by degree: the new
//! generators in degree `r` span a complement of `x·AR_{r−1} + y·AR_{r−1} +
//! z·AR_{r−1}` inside `AR_r`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::field::modp::PRIME_ATTEMPTS;
use crate::field::{Field, Reduction};
use crate::linalg::{identity_basis, rank_mod, span_rank, EliminationLimits, LinalgError, Matrix, ModEchelon};
use crate::poly::{monomial_basis_size, monomials, HomPoly, JacobianTriple, Monomial, PolyError, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyzygyError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("generator search bound {r_max} is below d - 1 = {min}")]
    BoundTooSmall { r_max: usize, min: usize },
    #[error("kernel vector in degree {0} fails re-substitution")]
    UnsoundKernel(usize),
    #[error("no usable prime for the modular rank bounds")]
    NoUsablePrime,
    #[error("structural and numerical classification disagree: {0}")]
    Inconsistent(String),
}

/// A triple `(a, b, c)` with `a·fx + b·fy + c·fz = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVector<F: Field> {
    a: HomPoly<F>,
    b: HomPoly<F>,
    c: HomPoly<F>,
}

impl<F: Field> RelationVector<F> {
    /// Checks membership by substitution; `None` if the triple is not a
    /// relation or the degrees differ.
    pub fn new(a: HomPoly<F>, b: HomPoly<F>, c: HomPoly<F>, jac: &JacobianTriple<F>) -> Option<Self> {
        if a.degree() != b.degree() || b.degree() != c.degree() {
            return None;
        }
        jac.pair(&a, &b, &c).is_zero().then_some(RelationVector { a, b, c })
    }

    pub fn degree(&self) -> usize {
        self.a.degree()
    }

    pub fn components(&self) -> [&HomPoly<F>; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Concatenated coefficient vector `(a | b | c)`.
    pub fn to_vector(&self) -> Vec<F> {
        let mut v = self.a.coeffs().to_vec();
        v.extend_from_slice(self.b.coeffs());
        v.extend_from_slice(self.c.coeffs());
        v
    }

    /// `μ·(a, b, c)`.
    pub fn times_monomial(&self, mu: Monomial) -> Self {
        let ctx = self.a.context();
        let m = HomPoly::monomial(mu, F::one(ctx), ctx);
        RelationVector {
            a: self.a.multiply(&m),
            b: self.b.multiply(&m),
            c: self.c.multiply(&m),
        }
    }

    fn reduce(&self, red: &Reduction) -> Option<ModTriple> {
        Some([
            reduce_terms(&self.a, red)?,
            reduce_terms(&self.b, red)?,
            reduce_terms(&self.c, red)?,
        ])
    }

    fn split(v: &[F], r: usize, ctx: &F::Context) -> [HomPoly<F>; 3] {
        let n = monomial_basis_size(r);
        [0, 1, 2].map(|k| HomPoly::from_coeffs(r, v[k * n..(k + 1) * n].to_vec(), ctx))
    }
}

/// Relation computations for one form `f`.
pub struct JacobianSyzygies<F: Field> {
    f: HomPoly<F>,
    jac: JacobianTriple<F>,
    limits: EliminationLimits,
}

impl<F: Field> JacobianSyzygies<F> {
    pub fn new(f: HomPoly<F>) -> Result<Self, SyzygyError> {
        let jac = f.jacobian()?;
        Ok(JacobianSyzygies {
            f,
            jac,
            limits: EliminationLimits::default(),
        })
    }

    pub fn with_limits(mut self, limits: EliminationLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn polynomial(&self) -> &HomPoly<F> {
        &self.f
    }

    pub fn jacobian(&self) -> &JacobianTriple<F> {
        &self.jac
    }

    /// Matrix of `(a, b, c) ↦ a·fx + b·fy + c·fz` on degree-`r` triples:
    /// `C(r+d+1, 2)` rows, `3·C(r+2, 2)` columns.
    pub fn relation_matrix(&self, r: usize) -> Matrix<F> {
        let d = self.degree();
        let ctx = self.f.context();
        let nr = monomial_basis_size(r);
        let mut m = Matrix::zeros(monomial_basis_size(r + d - 1), 3 * nr, ctx);
        for (k, v) in Var::ALL.into_iter().enumerate() {
            let partial: Vec<_> = self.jac.get(v).terms().map(|(mon, c)| (mon, c.clone())).collect();
            for (j, mono) in monomials(r).enumerate() {
                for (pm, c) in &partial {
                    m.set(mono.times(pm).index(), k * nr + j, c.clone());
                }
            }
        }
        m
    }

    pub fn relation_dim(&self, r: usize) -> Result<usize, SyzygyError> {
        let m = self.relation_matrix(r);
        Ok(m.ncols() - m.rank(self.limits)?)
    }

    /// A basis of `AR(f)_r`, each vector re-checked by substitution.
    pub fn relation_basis(&self, r: usize) -> Result<Vec<RelationVector<F>>, SyzygyError> {
        let m = self.relation_matrix(r);
        let ctx = self.f.context();
        let kernel = if m.nrows() == 0 {
            identity_basis(m.ncols(), ctx)
        } else {
            m.kernel(self.limits)?
        };
        kernel
            .into_iter()
            .map(|v| {
                let [a, b, c] = RelationVector::split(&v, r, ctx);
                RelationVector::new(a, b, c, &self.jac).ok_or(SyzygyError::UnsoundKernel(r))
            })
            .collect()
    }

    /// Least degree of a nonzero relation; at most `d − 1` for `d ≥ 2`.
    ///
    /// Degrees whose relation space already vanishes mod a prime are skipped
    /// without exact work; the first candidate degree is confirmed exactly.
    pub fn mdr(&self) -> Result<usize, SyzygyError> {
        let d = self.degree();
        let view = (0..PRIME_ATTEMPTS).find_map(|a| self.mod_view(a));
        for r in 0..d.max(1) {
            if view.as_ref().is_some_and(|v| self.dim_upper(v, r) == 0) {
                continue;
            }
            if self.relation_dim(r)? > 0 {
                return Ok(r);
            }
        }
        // The Koszul relations live in degree d − 1.
        Ok(d.saturating_sub(1))
    }

    /// Degrees of a minimal generating set of `AR(f)` up to `r_max`, with the
    /// dimensions `dim AR(f)_r` for `r = 0..=r_max`.
    ///
    /// Works degree by degree with a set `G` of exact generators found so
    /// far. Mod a prime, `rank(multiples of G in degree r) ≤ dim AR_r ≤
    /// nullity of the reduced relation matrix`; when the two outer numbers
    /// agree, `G` generates `AR_r` and nothing exact needs to be computed.
    /// Otherwise the exact kernel is computed, the exact rank of the
    /// multiples is taken, and kernel vectors are added to `G` until the span
    /// is full. An unlucky prime shows up as a disagreement and the search
    /// restarts with the next one.
    pub fn generator_degrees(&self, r_max: usize) -> Result<GeneratorSearch, SyzygyError> {
        let d = self.degree();
        if r_max + 1 < d {
            return Err(SyzygyError::BoundTooSmall {
                r_max,
                min: d.saturating_sub(1),
            });
        }
        for attempt in 0..PRIME_ATTEMPTS {
            let Some(view) = self.mod_view(attempt) else { continue };
            if let Some(found) = self.search(&view, r_max)? {
                return Ok(found);
            }
        }
        Err(SyzygyError::NoUsablePrime)
    }

    fn mod_view(&self, attempt: usize) -> Option<ModView> {
        let red = F::reduction(self.f.context(), attempt)?;
        let mut partials: ModTriple = Default::default();
        for (slot, v) in partials.iter_mut().zip(Var::ALL) {
            *slot = reduce_terms(self.jac.get(v), &red)?;
        }
        Some(ModView { red, partials })
    }

    /// Nullity of the relation matrix mod `p`, an upper bound for
    /// `dim AR(f)_r`.
    fn dim_upper(&self, view: &ModView, r: usize) -> usize {
        let height = monomial_basis_size(r + self.degree() - 1);
        let columns = view.partials.iter().flat_map(|partial| {
            monomials(r).map(move |mu| {
                let mut col = vec![0u64; height];
                for (m, c) in partial {
                    col[mu.times(m).index()] = *c;
                }
                col
            })
        });
        3 * monomial_basis_size(r) - rank_mod(view.red.p, height, columns)
    }

    fn search(&self, view: &ModView, r_max: usize) -> Result<Option<GeneratorSearch>, SyzygyError> {
        let p = view.red.p;
        let uppers: Vec<usize> = (0..=r_max).into_par_iter().map(|r| self.dim_upper(view, r)).collect();
        let mut gens: Vec<RelationVector<F>> = Vec::new();
        let mut gens_mod: Vec<(usize, ModTriple)> = Vec::new();
        let mut dims = Vec::with_capacity(r_max + 1);
        let mut exponents = Vec::new();
        let mut checked_relations = 0;
        for (r, &upper) in uppers.iter().enumerate() {
            let width = 3 * monomial_basis_size(r);
            let mut span = ModEchelon::new(p, width);
            for v in multiples_mod(&gens_mod, r) {
                span.insert(v);
                if span.rank() == upper {
                    break;
                }
            }
            if span.rank() == upper {
                dims.push(upper);
                continue;
            }
            let basis = self.relation_basis(r)?;
            let exact = basis.len();
            checked_relations += exact;
            let shifted: Vec<Vec<F>> = gens
                .iter()
                .flat_map(|g| monomials(r - g.degree()).map(move |mu| g.times_monomial(mu).to_vector()))
                .collect();
            let generated = if shifted.is_empty() {
                0
            } else {
                span_rank(shifted, width, self.limits)?
            };
            if generated != span.rank() || exact > upper {
                return Ok(None);
            }
            for rel in basis {
                if span.rank() == exact {
                    break;
                }
                let Some(reduced) = rel.reduce(&view.red) else {
                    return Ok(None);
                };
                if span.insert(dense_mod(&reduced, r)) {
                    gens.push(rel);
                    gens_mod.push((r, reduced));
                    exponents.push(r);
                }
            }
            if span.rank() != exact {
                return Ok(None);
            }
            dims.push(exact);
        }
        Ok(Some(GeneratorSearch {
            dims,
            exponents,
            search_bound: r_max,
            checked_relations,
        }))
    }
}

/// A relation or partial-derivative triple reduced mod p, as sparse terms.
type ModTriple = [Vec<(Monomial, u64)>; 3];

/// Images of `f` and its partials under one reduction.
struct ModView {
    red: Reduction,
    partials: ModTriple,
}

fn reduce_terms<F: Field>(f: &HomPoly<F>, red: &Reduction) -> Option<Vec<(Monomial, u64)>> {
    f.terms().map(|(m, c)| Some((m, c.reduce(red)?))).collect()
}

fn dense_mod(triple: &ModTriple, r: usize) -> Vec<u64> {
    let n = monomial_basis_size(r);
    let mut v = vec![0u64; 3 * n];
    for (k, part) in triple.iter().enumerate() {
        for (m, c) in part {
            v[k * n + m.index()] = *c;
        }
    }
    v
}

/// All monomial multiples of the reduced generators landing in degree `r`.
fn multiples_mod(gens: &[(usize, ModTriple)], r: usize) -> impl Iterator<Item = Vec<u64>> + '_ {
    let n = monomial_basis_size(r);
    gens.iter().filter(move |(e, _)| *e <= r).flat_map(move |(e, triple)| {
        monomials(r - e).map(move |mu| {
            let mut v = vec![0u64; 3 * n];
            for (k, part) in triple.iter().enumerate() {
                for (m, c) in part {
                    v[k * n + mu.times(m).index()] = *c;
                }
            }
            v
        })
    })
}

/// Result of [`JacobianSyzygies::generator_degrees`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSearch {
    /// `dims[r] = dim AR(f)_r`.
    pub dims: Vec<usize>,
    /// Minimal generator degrees, sorted, with multiplicity.
    pub exponents: Vec<usize>,
    pub search_bound: usize,
    /// Exact relation vectors computed and re-substituted along the way.
    pub checked_relations: usize,
}

/// Default generator search bound `2d − 2`.
pub fn default_search_bound(d: usize) -> usize {
    (2 * d).saturating_sub(2)
}

/// Numerical test for minimal plus-one generation of a reduced curve with
/// `r = mdr(f) ≤ d/2`: `r² − r(d−1) + (d−1)² = τ + 2`.
pub fn mpog_identity(d: usize, r: usize, tau: usize) -> bool {
    let (d, r, tau) = (d as i64, r as i64, tau as i64);
    2 * r <= d && r * r - r * (d - 1) + (d - 1) * (d - 1) == tau + 2
}

/// Tjurina number forced on a plus-one generated curve with exponents
/// `(d1, d2, d3)`: `(d−1)² − d1(d−d1−1) − (d3−d2+1)`.
pub fn pog_tau(d: usize, exps: [usize; 3]) -> i64 {
    let (d, [d1, d2, d3]) = (d as i64, exps.map(|e| e as i64));
    (d - 1) * (d - 1) - d1 * (d - d1 - 1) - (d3 - d2 + 1)
}

/// Tjurina number of a free curve with exponents `(d1, d2)`.
pub fn free_tau(d: usize, d1: usize) -> i64 {
    let (d, d1) = (d as i64, d1 as i64);
    (d - 1) * (d - 1) - d1 * (d - 1 - d1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveClass {
    Free,
    NearlyFree,
    MinimalPlusOneGenerated,
    PlusOneGenerated,
    MSyzygy(usize),
    Unclassified,
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveClass::MSyzygy(m) => write!(f, "MSyzygy({m})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Generator search bound; `None` means [`default_search_bound`].
    pub r_max: Option<usize>,
    pub limits: EliminationLimits,
}

/// Everything known about the relation module of one curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyProfile {
    pub d: usize,
    /// `dims[r] = dim AR(f)_r` for `0 ≤ r ≤ search_bound`.
    pub dims: Vec<usize>,
    pub mdr: usize,
    pub exponents: Vec<usize>,
    pub search_bound: usize,
    /// True when the search stopped below the default bound `2d − 2`.
    pub truncated: bool,
    /// `d3 − d2` for three generators.
    pub delta_level: Option<i64>,
    pub tau: usize,
    pub curve_class: CurveClass,
    pub checked_relations: usize,
    /// Outcome of the numerical criterion `r² − r(d−1) + (d−1)² = τ + 2`
    /// (with `r ≤ d/2`).
    pub numerical_mpog: bool,
}

/// Classifies the curve `f = 0` whose total Tjurina number is `tau`.
pub fn classify_polynomial<F: Field>(
    f: HomPoly<F>,
    tau: usize,
    options: &ClassifyOptions,
) -> Result<SyzygyProfile, SyzygyError> {
    let d = f.degree();
    let engine = JacobianSyzygies::new(f)?.with_limits(options.limits);
    let default_bound = default_search_bound(d);
    let r_max = options.r_max.unwrap_or(default_bound);
    let search = engine.generator_degrees(r_max)?;
    let mdr = search
        .dims
        .iter()
        .position(|&n| n > 0)
        .ok_or_else(|| SyzygyError::Inconsistent("no relation up to d - 1".into()))?;
    let exps = &search.exponents;
    if exps.first() != Some(&mdr) {
        return Err(SyzygyError::Inconsistent(format!(
            "first generator degree {:?} differs from mdr {mdr}",
            exps.first()
        )));
    }
    if search.dims.windows(2).any(|w| w[1] < w[0]) {
        return Err(SyzygyError::Inconsistent("relation dimensions decrease".into()));
    }
    let truncated = r_max < default_bound;
    let numerical_mpog = mpog_identity(d, mdr, tau);
    let delta_level = (exps.len() == 3).then(|| exps[2] as i64 - exps[1] as i64);

    let class = match exps.len() {
        2 => {
            if exps[0] + exps[1] + 1 != d || free_tau(d, exps[0]) != tau as i64 {
                return Err(SyzygyError::Inconsistent(format!(
                    "two generators {exps:?} violate the free-curve identities for d = {d}, tau = {tau}"
                )));
            }
            CurveClass::Free
        }
        3 if exps[0] + exps[1] == d => {
            let expected = pog_tau(d, [exps[0], exps[1], exps[2]]);
            if expected != tau as i64 {
                return Err(SyzygyError::Inconsistent(format!(
                    "plus-one generated exponents {exps:?} force tau = {expected}, found {tau}"
                )));
            }
            match exps[2] - exps[1] {
                0 => CurveClass::NearlyFree,
                1 => CurveClass::MinimalPlusOneGenerated,
                _ => CurveClass::PlusOneGenerated,
            }
        }
        m if !truncated => CurveClass::MSyzygy(m),
        _ if numerical_mpog => CurveClass::MinimalPlusOneGenerated,
        _ => CurveClass::Unclassified,
    };
    if !truncated && numerical_mpog != (class == CurveClass::MinimalPlusOneGenerated) {
        return Err(SyzygyError::Inconsistent(format!(
            "numerical criterion says {numerical_mpog}, exponents {exps:?} give {class}"
        )));
    }
    Ok(SyzygyProfile {
        d,
        dims: search.dims,
        mdr,
        exponents: search.exponents,
        search_bound: r_max,
        truncated,
        delta_level,
        tau,
        curve_class: class,
        checked_relations: search.checked_relations,
        numerical_mpog,
    })
}

/// Classifies an arrangement, taking `τ` from its weak combinatorics.
pub fn classify<F: Field>(arr: &Arrangement<F>, options: &ClassifyOptions) -> Result<SyzygyProfile, SyzygyError> {
    classify_polynomial(arr.defining_polynomial(), arr.weak_combinatorics().tau, options)
}

/// Minimal degree of a Jacobian relation of the arrangement's defining form.
pub fn mdr<F: Field>(arr: &Arrangement<F>, limits: EliminationLimits) -> Result<usize, SyzygyError> {
    JacobianSyzygies::new(arr.defining_polynomial())?
        .with_limits(limits)
        .mdr()
}

/// [`mdr`] over `Q(t)`: elimination happens with polynomial coefficients in
/// `t`, so the answer holds for all but finitely many specializations.
pub fn mdr_generic(
    arr: &Arrangement<crate::field::RationalFunction>,
    limits: EliminationLimits,
) -> Result<usize, SyzygyError> {
    mdr(arr, limits)
}

impl crate::arrangement::DynArrangement {
    pub fn classify(&self, options: &ClassifyOptions) -> Result<SyzygyProfile, SyzygyError> {
        crate::with_arrangement!(self, a => classify(a, options))
    }

    pub fn mdr(&self, limits: EliminationLimits) -> Result<usize, SyzygyError> {
        crate::with_arrangement!(self, a => mdr(a, limits))
    }
}
