//! Exact fraction-free elimination.
//!
//! Rows are combined as `p·row − a·pivot` and then rescaled with
//! [`Field::normalize_vector`], so over `Q` (and `Q(t)`) every row stays a
//! primitive integer (polynomial) vector and no division happens inside the
//! elimination loop. Pivots are chosen by smallest [`Field::size`], ties
//! broken by row index, which makes the result fully deterministic.
//!
//! For `Q` and integral quadratic fields a checked `i128` path (see `fast`)
//! runs first and hands over to arbitrary precision on overflow.

use thiserror::Error;

use crate::field::Field;

mod fast;
mod modp;

pub use modp::{rank_mod, ModEchelon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("coefficient growth {observed} exceeds the cap {cap}")]
    GrowthCapExceeded { cap: usize, observed: usize },
}

/// Knobs for a single elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EliminationLimits {
    /// Maximal [`Field::growth`] of any intermediate entry.
    pub growth_cap: usize,
}

impl Default for EliminationLimits {
    fn default() -> Self {
        EliminationLimits { growth_cap: 200 }
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: Vec<Vec<F>>,
    ncols: usize,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(nrows: usize, ncols: usize, ctx: &F::Context) -> Self {
        Matrix {
            rows: vec![vec![F::zero(ctx); ncols]; nrows],
            ncols,
        }
    }

    pub fn from_rows(rows: Vec<Vec<F>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.rows[i][j] = v;
    }

    pub fn mul_vec(&self, v: &[F], ctx: &F::Context) -> Vec<F> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(ctx), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn transpose(&self, ctx: &F::Context) -> Self {
        let mut t = Matrix::zeros(self.ncols, self.rows.len(), ctx);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.rows[j][i] = v.clone();
            }
        }
        t
    }

    pub fn rank(&self, limits: EliminationLimits) -> Result<usize, LinalgError> {
        let mut work = self.rows.clone();
        Ok(eliminate(&mut work, self.ncols, false, limits)?.len())
    }

    /// Reduced echelon form (every pivot column cleared above and below).
    pub fn echelon(&self, limits: EliminationLimits) -> Result<Echelon<F>, LinalgError> {
        let mut work = self.rows.clone();
        let pivots = eliminate(&mut work, self.ncols, true, limits)?;
        work.truncate(pivots.len());
        Ok(Echelon {
            rows: work,
            pivots,
            ncols: self.ncols,
        })
    }

    pub fn kernel(&self, limits: EliminationLimits) -> Result<Vec<Vec<F>>, LinalgError> {
        Ok(self.echelon(limits)?.kernel_basis())
    }
}

/// Output of [`Matrix::echelon`]: the nonzero reduced rows and their pivot
/// columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One normalized kernel vector per free column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let Some(first) = self.rows.first().and_then(|r| r.first()) else {
            return Vec::new();
        };
        let ctx = first.context();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let pivot_inv: Vec<F> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| row[p].inv().expect("nonzero pivot"))
            .collect();
        (0..self.ncols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = vec![F::zero(&ctx); self.ncols];
                v[j] = F::one(&ctx);
                for ((row, &p), inv) in self.rows.iter().zip(&self.pivots).zip(&pivot_inv) {
                    if !row[j].is_zero() {
                        v[p] = row[j].mul(inv).neg();
                    }
                }
                F::normalize_vector(&mut v);
                v
            })
            .collect()
    }
}

/// Kernel of a matrix with no rows: the whole space.
pub fn identity_basis<F: Field>(n: usize, ctx: &F::Context) -> Vec<Vec<F>> {
    (0..n)
        .map(|j| {
            let mut v = vec![F::zero(ctx); n];
            v[j] = F::one(ctx);
            v
        })
        .collect()
}

/// Rank of a list of vectors.
pub fn span_rank<F: Field>(
    vectors: Vec<Vec<F>>,
    ncols: usize,
    limits: EliminationLimits,
) -> Result<usize, LinalgError> {
    let mut work = vectors;
    Ok(eliminate(&mut work, ncols, false, limits)?.len())
}

/// In-place elimination. Returns pivot columns; the first `pivots.len()`
/// rows of `rows` hold the echelon form afterwards.
fn eliminate<F: Field>(
    rows: &mut Vec<Vec<F>>,
    ncols: usize,
    reduce_above: bool,
    limits: EliminationLimits,
) -> Result<Vec<usize>, LinalgError> {
    if let Some(pivots) = fast::try_eliminate(rows, ncols, reduce_above) {
        return Ok(pivots);
    }
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    for r in rows.iter_mut() {
        F::normalize_vector(r);
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == rows.len() {
            break;
        }
        let best = (next..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| (rows[i][col].size(), i));
        let Some(best) = best else { continue };
        rows.swap(next, best);
        let (above, rest) = rows.split_at_mut(next);
        let (pivot_row, tail) = rest.split_first_mut().expect("pivot row exists");
        let pivot_row = &*pivot_row;
        let targets = if reduce_above {
            above.iter_mut().chain(tail.iter_mut()).collect::<Vec<_>>()
        } else {
            tail.iter_mut().collect()
        };
        for row in targets {
            if row[col].is_zero() {
                continue;
            }
            combine(row, pivot_row, col);
            check_growth(row, limits)?;
        }
        pivots.push(col);
        next += 1;
        if !reduce_above {
            // Rows that became zero are dead weight for the remaining columns.
            let mut k = next;
            while k < rows.len() {
                if rows[k].iter().all(F::is_zero) {
                    rows.swap_remove(k);
                } else {
                    k += 1;
                }
            }
        }
    }
    Ok(pivots)
}

/// `row ← p·row − a·pivot` where `p = pivot[col]`, `a = row[col]`, followed
/// by normalization.
fn combine<F: Field>(row: &mut [F], pivot: &[F], col: usize) {
    let p = &pivot[col];
    let a = row[col].clone();
    let p_is_one = p.is_one();
    for (x, y) in row.iter_mut().zip(pivot).skip(col) {
        let scaled = if x.is_zero() || p_is_one { None } else { Some(x.mul(p)) };
        if y.is_zero() {
            if let Some(s) = scaled {
                *x = s;
            }
            continue;
        }
        let base = scaled.unwrap_or_else(|| x.clone());
        *x = base.sub(&a.mul(y));
    }
    // Entries left of `col` are zero in the pivot row for echelon rows but
    // not necessarily in `row` when reducing above; scale them too.
    if !p_is_one {
        for x in row[..col].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(p);
            }
        }
    }
    F::normalize_vector(row);
}

fn check_growth<F: Field>(row: &[F], limits: EliminationLimits) -> Result<(), LinalgError> {
    let observed = row.iter().map(F::growth).max().unwrap_or(0);
    if observed > limits.growth_cap {
        Err(LinalgError::GrowthCapExceeded {
            cap: limits.growth_cap,
            observed,
        })
    } else {
        Ok(())
    }
}
