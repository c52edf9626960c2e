//! Exact coefficient fields.
//!
//! Three fields are supported: the rationals, a quadratic extension
//! `Q(α)` with `α² = pα + q`, and the rational function field `Q(t)`.
//! Generic code is written against the [`Field`] trait; the tagged
//! [`FieldScalar`] union is the dynamically typed face used by the parser
//! and the command line.

pub mod modp;
mod quadratic;
mod ratfunc;
mod rational;
mod scalar;
mod unipoly;

use std::fmt;
use std::hash::Hash;

pub use modp::Reduction;
pub use quadratic::{QuadraticContext, QuadraticElement};
pub use ratfunc::RationalFunction;
pub use rational::{ParseRationalError, Rational};
pub use scalar::{sample, FieldDescriptor, FieldError, FieldScalar};
pub use unipoly::UniPoly;

/// An exact field whose elements carry (or imply) their own context.
///
/// All operations return canonical forms, so `==` and `Hash` are
/// structural. Mixing elements of different contexts is a programming
/// error and panics; [`FieldScalar`] offers the checked variants.
pub trait Field: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Data shared by all elements of one field instance.
    type Context: Clone + Eq + fmt::Debug + Send + Sync;

    fn context(&self) -> Self::Context;
    fn zero(ctx: &Self::Context) -> Self;
    fn one(ctx: &Self::Context) -> Self;
    fn from_i64(n: i64, ctx: &Self::Context) -> Self;
    fn from_rational(r: &Rational, ctx: &Self::Context) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// `self / rhs`, `None` when `rhs` is zero.
    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// Rough bit size, used to prefer small pivots during elimination.
    fn size(&self) -> usize;

    /// Growth measure checked against elimination caps (degree in the
    /// parameter for function fields, zero otherwise).
    fn growth(&self) -> usize {
        0
    }

    /// The `attempt`-th homomorphism into a prime field used for rank
    /// bounds, or `None` when this attempt does not give one (say the prime
    /// does not split the defining polynomial of `α`).
    fn reduction(ctx: &Self::Context, attempt: usize) -> Option<Reduction>;

    /// Image under `red`, `None` if a denominator vanishes mod `p`.
    fn reduce(&self, red: &Reduction) -> Option<u64>;

    /// Rescales a vector by a nonzero scalar into a canonical, small
    /// representative of its projective class.
    ///
    /// The default makes the first nonzero entry one. Fields with a ring of
    /// integers override this to clear denominators and remove content,
    /// which keeps fraction-free elimination free of division.
    fn normalize_vector(row: &mut [Self]) {
        Self::monic_vector(row);
    }

    /// Makes the first nonzero entry of a vector equal to one.
    fn monic_vector(row: &mut [Self]) {
        if let Some(lead) = row.iter().find(|c| !c.is_zero()) {
            if lead.is_one() {
                return;
            }
            let scale = lead.inv().expect("nonzero lead");
            for c in row.iter_mut() {
                if !c.is_zero() {
                    *c = c.mul(&scale);
                }
            }
        }
    }
}
