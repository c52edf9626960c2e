use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Field, QuadraticContext, QuadraticElement, Rational, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("x^2 - ({p})x - ({q}) is reducible over Q")]
    Reducible { p: Box<Rational>, q: Box<Rational> },
}

/// Which coefficient field a computation lives in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FieldDescriptor {
    Rationals,
    Quadratic(Arc<QuadraticContext>),
    RationalFunctions { symbol: String },
}

impl FieldDescriptor {
    /// `Q(e)` with `e² = p·e + q`.
    pub fn quadratic(p: Rational, q: Rational) -> Result<Self, FieldError> {
        QuadraticContext::new(p.clone(), q.clone(), "e")
            .map(FieldDescriptor::Quadratic)
            .ok_or_else(|| FieldError::Reducible {
                p: Box::new(p),
                q: Box::new(q),
            })
    }

    pub fn gaussian() -> Self {
        FieldDescriptor::Quadratic(QuadraticContext::gaussian())
    }

    pub fn rational_functions(symbol: impl Into<String>) -> Self {
        FieldDescriptor::RationalFunctions { symbol: symbol.into() }
    }

    pub fn zero(&self) -> FieldScalar {
        self.from_rational(&Rational::zero())
    }

    pub fn one(&self) -> FieldScalar {
        self.from_rational(&Rational::one())
    }

    pub fn from_rational(&self, r: &Rational) -> FieldScalar {
        match self {
            FieldDescriptor::Rationals => FieldScalar::Rational(r.clone()),
            FieldDescriptor::Quadratic(ctx) => FieldScalar::Quadratic(QuadraticElement::from_rational(r, ctx)),
            FieldDescriptor::RationalFunctions { .. } => FieldScalar::Function(RationalFunction::constant(r.clone())),
        }
    }

    /// The adjoined symbol (`e` or the function-field parameter), if any.
    pub fn symbol(&self) -> Option<&str> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Quadratic(ctx) => Some(ctx.symbol()),
            FieldDescriptor::RationalFunctions { symbol } => Some(symbol),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Quadratic(ctx) => write!(
                f,
                "Q({s}), {s}^2 = ({p})*{s} + ({q})",
                s = ctx.symbol(),
                p = ctx.p(),
                q = ctx.q()
            ),
            FieldDescriptor::RationalFunctions { symbol } => write!(f, "Q({symbol})"),
        }
    }
}

/// A scalar in one of the supported fields, with checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldScalar {
    Rational(Rational),
    Quadratic(QuadraticElement),
    Function(RationalFunction),
}

macro_rules! checked_binop {
    ($name:ident) => {
        pub fn $name(&self, rhs: &FieldScalar) -> Result<FieldScalar, FieldError> {
            match (self, rhs) {
                (FieldScalar::Rational(a), FieldScalar::Rational(b)) => Ok(FieldScalar::Rational(Field::$name(a, b))),
                (FieldScalar::Quadratic(a), FieldScalar::Quadratic(b)) if a.context() == b.context() => {
                    Ok(FieldScalar::Quadratic(Field::$name(a, b)))
                }
                (FieldScalar::Function(a), FieldScalar::Function(b)) => Ok(FieldScalar::Function(Field::$name(a, b))),
                _ => Err(self.mismatch(rhs)),
            }
        }
    };
}

impl FieldScalar {
    checked_binop!(add);
    checked_binop!(sub);
    checked_binop!(mul);

    pub fn neg(&self) -> FieldScalar {
        match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(-a),
            FieldScalar::Quadratic(a) => FieldScalar::Quadratic(Field::neg(a)),
            FieldScalar::Function(a) => FieldScalar::Function(Field::neg(a)),
        }
    }

    pub fn inv(&self) -> Result<FieldScalar, FieldError> {
        let inv = match self {
            FieldScalar::Rational(a) => Field::inv(a).map(FieldScalar::Rational),
            FieldScalar::Quadratic(a) => Field::inv(a).map(FieldScalar::Quadratic),
            FieldScalar::Function(a) => Field::inv(a).map(FieldScalar::Function),
        };
        inv.ok_or(FieldError::DivisionByZero)
    }

    pub fn div(&self, rhs: &FieldScalar) -> Result<FieldScalar, FieldError> {
        // Check the field first so a mismatched zero reports the mismatch.
        self.sub(self)?;
        self.mul(&rhs.inv()?)
    }

    /// Non-negative integer power.
    pub fn pow(&self, exp: u32) -> FieldScalar {
        let mut acc = match self {
            FieldScalar::Rational(_) => FieldScalar::Rational(Rational::one()),
            FieldScalar::Quadratic(a) => FieldScalar::Quadratic(QuadraticElement::one(&a.context())),
            FieldScalar::Function(_) => FieldScalar::Function(RationalFunction::one(&())),
        };
        for _ in 0..exp {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(a) => Field::is_zero(a),
            FieldScalar::Quadratic(a) => a.is_zero(),
            FieldScalar::Function(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(a) => a.is_one(),
            FieldScalar::Quadratic(a) => a.is_one(),
            FieldScalar::Function(a) => a.is_one(),
        }
    }

    fn kind(&self) -> String {
        match self {
            FieldScalar::Rational(_) => "Q".into(),
            FieldScalar::Quadratic(a) => format!("Q({})", a.context().symbol()),
            FieldScalar::Function(_) => "Q(t)".into(),
        }
    }

    fn mismatch(&self, rhs: &FieldScalar) -> FieldError {
        FieldError::Mismatch(self.kind(), rhs.kind())
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(a) => a.fmt(f),
            FieldScalar::Quadratic(a) => a.fmt(f),
            FieldScalar::Function(a) => a.fmt(f),
        }
    }
}

/// Deterministic pseudo-random nonzero scalar.
///
/// For the function field the result is a constant different from 0 and 1,
/// so it can double as a specialization point.
pub fn sample(descriptor: &FieldDescriptor, seed: u64) -> FieldScalar {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| {
        Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=6)).expect("positive denominator")
    };
    loop {
        let a = small(&mut rng);
        match descriptor {
            FieldDescriptor::Rationals => {
                if !Field::is_zero(&a) {
                    return FieldScalar::Rational(a);
                }
            }
            FieldDescriptor::Quadratic(ctx) => {
                let b = small(&mut rng);
                let x = QuadraticElement::new(a, b, ctx);
                if !x.is_zero() {
                    return FieldScalar::Quadratic(x);
                }
            }
            FieldDescriptor::RationalFunctions { .. } => {
                if !Field::is_zero(&a) && !a.is_one() {
                    return FieldScalar::Function(RationalFunction::constant(a));
                }
            }
        }
    }
}
