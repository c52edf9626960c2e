//! Fixed-width integer elimination for `Q` and for `Q(α)` with integral
//! `α² = pα + q`.
//!
//! Rows are scaled to integral coordinates and eliminated with the same
//! fraction-free rule and pivot choice as the generic path. Checked `i128`
//! arithmetic is tried first; on overflow the same loop reruns on `BigInt`,
//! which still avoids the gcd work of a rational entry per operation.

use std::any::Any;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::{Field, QuadraticElement, Rational};

/// Integral ring elements the fast path works with.
trait Ring: Clone + PartialEq + std::fmt::Debug {
    type Ctx;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self, ctx: &Self::Ctx) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn bits(&self) -> u64;
    /// Divides the row by the gcd of all integer coordinates.
    fn remove_content(row: &mut [Self]);
}

impl Ring for i128 {
    type Ctx = ();

    fn zero() -> Self {
        0
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn mul(&self, other: &Self, _: &()) -> Option<Self> {
        self.checked_mul(*other)
    }

    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }

    fn bits(&self) -> u64 {
        u64::from(128 - self.unsigned_abs().leading_zeros())
    }

    fn remove_content(row: &mut [Self]) {
        let g = small_content(row.iter().map(|x| x.unsigned_abs()));
        if g > 1 {
            let g = g as i128;
            row.iter_mut().for_each(|x| *x /= g);
        }
    }
}

impl Ring for BigInt {
    type Ctx = ();

    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn mul(&self, other: &Self, _: &()) -> Option<Self> {
        Some(self * other)
    }

    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }

    fn bits(&self) -> u64 {
        BigInt::bits(self)
    }

    fn remove_content(row: &mut [Self]) {
        if let Some(g) = big_content(row.iter()) {
            row.iter_mut().filter(|x| !Zero::is_zero(*x)).for_each(|x| *x /= &g);
        }
    }
}

/// gcd of the nonzero values, stopping early at one.
fn small_content(values: impl Iterator<Item = u128>) -> u128 {
    let mut g = 0u128;
    for v in values.filter(|&v| v != 0) {
        g = g.gcd(&v);
        if g == 1 {
            break;
        }
    }
    g
}

/// gcd of the nonzero values if it exceeds one.
fn big_content<'a>(values: impl Iterator<Item = &'a BigInt>) -> Option<BigInt> {
    let mut g = <BigInt as Zero>::zero();
    for v in values.filter(|v| !Zero::is_zero(*v)) {
        g = g.gcd(v);
        if g.is_one() {
            return None;
        }
    }
    (g > BigInt::one()).then_some(g)
}

/// `a + bα` over a ring of integers `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Quad<T> {
    a: T,
    b: T,
}

impl Ring for Quad<i128> {
    /// `(p, q)` with `α² = pα + q`.
    type Ctx = (i128, i128);

    fn zero() -> Self {
        Quad { a: 0, b: 0 }
    }

    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn mul(&self, o: &Self, &(p, q): &(i128, i128)) -> Option<Self> {
        let bb = self.b.checked_mul(o.b)?;
        let a = self.a.checked_mul(o.a)?.checked_add(bb.checked_mul(q)?)?;
        let b = self
            .a
            .checked_mul(o.b)?
            .checked_add(self.b.checked_mul(o.a)?)?
            .checked_add(bb.checked_mul(p)?)?;
        Some(Quad { a, b })
    }

    fn sub(&self, o: &Self) -> Option<Self> {
        Some(Quad {
            a: self.a.checked_sub(o.a)?,
            b: self.b.checked_sub(o.b)?,
        })
    }

    fn bits(&self) -> u64 {
        Ring::bits(&self.a) + Ring::bits(&self.b)
    }

    fn remove_content(row: &mut [Self]) {
        let g = small_content(row.iter().flat_map(|x| [x.a.unsigned_abs(), x.b.unsigned_abs()]));
        if g > 1 {
            let g = g as i128;
            for x in row.iter_mut() {
                x.a /= g;
                x.b /= g;
            }
        }
    }
}

impl Ring for Quad<BigInt> {
    type Ctx = (BigInt, BigInt);

    fn zero() -> Self {
        Quad {
            a: <BigInt as Zero>::zero(),
            b: <BigInt as Zero>::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }

    fn mul(&self, o: &Self, (p, q): &(BigInt, BigInt)) -> Option<Self> {
        let bb = &self.b * &o.b;
        Some(Quad {
            a: &self.a * &o.a + &bb * q,
            b: &self.a * &o.b + &self.b * &o.a + &bb * p,
        })
    }

    fn sub(&self, o: &Self) -> Option<Self> {
        Some(Quad {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        })
    }

    fn bits(&self) -> u64 {
        self.a.bits() + self.b.bits()
    }

    fn remove_content(row: &mut [Self]) {
        if let Some(g) = big_content(row.iter().flat_map(|x| [&x.a, &x.b])) {
            for x in row.iter_mut() {
                x.a /= &g;
                x.b /= &g;
            }
        }
    }
}

/// Entries above this many bits are refused up front, leaving headroom for
/// one multiplication step before the checked ops trip.
const INPUT_BITS: u64 = 60;

/// Tries the fast path on `rows`. On success `rows` holds the same output
/// the generic elimination would produce up to row scaling, and the pivot
/// columns are returned. `None` leaves `rows` untouched.
// `Vec` rather than a slice: the downcast needs a sized concrete type.
#[allow(clippy::ptr_arg)]
pub(super) fn try_eliminate<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize, reduce_above: bool) -> Option<Vec<usize>> {
    let any: &mut dyn Any = rows;
    if let Some(rows) = any.downcast_mut::<Vec<Vec<Rational>>>() {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| integral_row(r)).collect();
        let small: Option<Vec<Vec<i128>>> = big.iter().map(|r| r.iter().map(small).collect()).collect();
        let (pivots, out) = match small.and_then(|mut m| Some((eliminate(&mut m, ncols, reduce_above, &())?, m))) {
            Some((pivots, m)) => (
                pivots,
                m.into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect(),
            ),
            None => {
                let mut m = big;
                (eliminate(&mut m, ncols, reduce_above, &())?, m)
            }
        };
        *rows = out
            .into_iter()
            .map(|r: Vec<BigInt>| r.into_iter().map(Rational::from_integer).collect())
            .collect();
        return Some(pivots);
    }
    if let Some(rows) = any.downcast_mut::<Vec<Vec<QuadraticElement>>>() {
        let ctx = rows.iter().flatten().next()?.context();
        if !ctx.p().is_integer() || !ctx.q().is_integer() {
            return None;
        }
        let big: Vec<Vec<Quad<BigInt>>> = rows.iter().map(|r| quadratic_row(r)).collect();
        let small_ctx = small(ctx.p().numer()).zip(small(ctx.q().numer()));
        let small_rows: Option<Vec<Vec<Quad<i128>>>> = big
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        Some(Quad {
                            a: small(&x.a)?,
                            b: small(&x.b)?,
                        })
                    })
                    .collect()
            })
            .collect();
        let attempt = small_ctx
            .zip(small_rows)
            .and_then(|(pq, mut m)| Some((eliminate(&mut m, ncols, reduce_above, &pq)?, m)));
        let (pivots, out) = match attempt {
            Some((pivots, m)) => (
                pivots,
                m.into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|x| Quad {
                                a: BigInt::from(x.a),
                                b: BigInt::from(x.b),
                            })
                            .collect()
                    })
                    .collect(),
            ),
            None => {
                let pq = (ctx.p().numer().clone(), ctx.q().numer().clone());
                let mut m = big;
                (eliminate(&mut m, ncols, reduce_above, &pq)?, m)
            }
        };
        *rows = out
            .into_iter()
            .map(|r: Vec<Quad<BigInt>>| {
                r.into_iter()
                    .map(|x| QuadraticElement::new(Rational::from_integer(x.a), Rational::from_integer(x.b), &ctx))
                    .collect()
            })
            .collect();
        return Some(pivots);
    }
    None
}

fn small(n: &BigInt) -> Option<i128> {
    if n.bits() > INPUT_BITS {
        return None;
    }
    n.to_i128()
}

fn denominator_lcm<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(
        BigInt::one(),
        |l, v| if v.denom().is_one() { l } else { l.lcm(v.denom()) },
    )
}

fn scaled(v: &Rational, l: &BigInt) -> BigInt {
    v.numer() * (l / v.denom())
}

fn integral_row(row: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(row.iter());
    row.iter().map(|v| scaled(v, &l)).collect()
}

fn quadratic_row(row: &[QuadraticElement]) -> Vec<Quad<BigInt>> {
    let l = denominator_lcm(row.iter().flat_map(|x| [x.rational_part(), x.irrational_part()]));
    row.iter()
        .map(|x| Quad {
            a: scaled(x.rational_part(), &l),
            b: scaled(x.irrational_part(), &l),
        })
        .collect()
}

fn eliminate<R: Ring>(rows: &mut Vec<Vec<R>>, ncols: usize, reduce_above: bool, ctx: &R::Ctx) -> Option<Vec<usize>> {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    for r in rows.iter_mut() {
        R::remove_content(r);
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == rows.len() {
            break;
        }
        let best = (next..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| (rows[i][col].bits(), i));
        let Some(best) = best else { continue };
        rows.swap(next, best);
        let (above, rest) = rows.split_at_mut(next);
        let (pivot_row, tail) = rest.split_first_mut().expect("pivot row exists");
        let pivot_row = &*pivot_row;
        let targets: Vec<&mut Vec<R>> = if reduce_above {
            above.iter_mut().chain(tail.iter_mut()).collect()
        } else {
            tail.iter_mut().collect()
        };
        for row in targets {
            if !row[col].is_zero() {
                combine(row, pivot_row, col, ctx)?;
            }
        }
        pivots.push(col);
        next += 1;
        if !reduce_above {
            let mut k = next;
            while k < rows.len() {
                if rows[k].iter().all(|x| x.is_zero()) {
                    rows.swap_remove(k);
                } else {
                    k += 1;
                }
            }
        }
    }
    Some(pivots)
}

fn combine<R: Ring>(row: &mut [R], pivot: &[R], col: usize, ctx: &R::Ctx) -> Option<()> {
    let p = pivot[col].clone();
    let a = row[col].clone();
    for (j, x) in row.iter_mut().enumerate() {
        let y = if j >= col { &pivot[j] } else { &R::zero() };
        if x.is_zero() && y.is_zero() {
            continue;
        }
        let px = if x.is_zero() { R::zero() } else { x.mul(&p, ctx)? };
        *x = if y.is_zero() { px } else { px.sub(&a.mul(y, ctx)?)? };
    }
    R::remove_content(row);
    Some(())
}
