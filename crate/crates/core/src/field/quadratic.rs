use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::rational::{primitive_integer_scale, Rational};
use super::{modp, Field, Reduction};

/// The defining relation `α² = p·α + q` of a quadratic extension of `Q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadraticContext {
    p: Rational,
    q: Rational,
    symbol: String,
}

impl QuadraticContext {
    /// Checks that `X² − pX − q` is irreducible over `Q`.
    pub fn new(p: Rational, q: Rational, symbol: impl Into<String>) -> Option<Arc<Self>> {
        let disc = &(&p * &p) + &(&Rational::from(4) * &q);
        if disc.sqrt_exact().is_some() {
            return None;
        }
        Some(Arc::new(QuadraticContext {
            p,
            q,
            symbol: symbol.into(),
        }))
    }

    /// `Q(e)` with `e² + 1 = 0`.
    pub fn gaussian() -> Arc<Self> {
        Self::new(Rational::zero(), Rational::from(-1), "e").expect("x^2+1 is irreducible")
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }
}

/// `a + b·α` in a quadratic extension.
#[derive(Clone)]
pub struct QuadraticElement {
    a: Rational,
    b: Rational,
    ctx: Arc<QuadraticContext>,
}

impl QuadraticElement {
    pub fn new(a: Rational, b: Rational, ctx: &Arc<QuadraticContext>) -> Self {
        QuadraticElement {
            a,
            b,
            ctx: Arc::clone(ctx),
        }
    }

    /// The generator `α`.
    pub fn generator(ctx: &Arc<QuadraticContext>) -> Self {
        Self::new(Rational::zero(), Rational::one(), ctx)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.b == Rational::zero()).then_some(&self.a)
    }

    fn check(&self, rhs: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &rhs.ctx) || self.ctx == rhs.ctx,
            "quadratic extension context mismatch"
        );
    }

    fn with(&self, a: Rational, b: Rational) -> Self {
        QuadraticElement {
            a,
            b,
            ctx: Arc::clone(&self.ctx),
        }
    }
}

impl PartialEq for QuadraticElement {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.ctx == other.ctx
    }
}

impl Eq for QuadraticElement {}

impl Hash for QuadraticElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl Field for QuadraticElement {
    type Context = Arc<QuadraticContext>;

    fn context(&self) -> Arc<QuadraticContext> {
        Arc::clone(&self.ctx)
    }

    fn zero(ctx: &Self::Context) -> Self {
        Self::new(Rational::zero(), Rational::zero(), ctx)
    }

    fn one(ctx: &Self::Context) -> Self {
        Self::new(Rational::one(), Rational::zero(), ctx)
    }

    fn from_i64(n: i64, ctx: &Self::Context) -> Self {
        Self::new(Rational::from(n), Rational::zero(), ctx)
    }

    fn from_rational(r: &Rational, ctx: &Self::Context) -> Self {
        Self::new(r.clone(), Rational::zero(), ctx)
    }

    fn is_zero(&self) -> bool {
        Field::is_zero(&self.a) && Field::is_zero(&self.b)
    }

    fn is_one(&self) -> bool {
        self.a.is_one() && Field::is_zero(&self.b)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        self.with(&self.a + &rhs.a, &self.b + &rhs.b)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        self.with(&self.a - &rhs.a, &self.b - &rhs.b)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let zero = Rational::zero();
        if self.b == zero && rhs.b == zero {
            return self.with(&self.a * &rhs.a, zero);
        }
        // (a + bα)(c + dα) = ac + bd·q + (ad + bc + bd·p)α
        let bd = &self.b * &rhs.b;
        let a = &(&self.a * &rhs.a) + &(&bd * &self.ctx.q);
        let b = &(&(&self.a * &rhs.b) + &(&self.b * &rhs.a)) + &(&bd * &self.ctx.p);
        self.with(a, b)
    }

    fn neg(&self) -> Self {
        self.with(-&self.a, -&self.b)
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(&self.b) {
            return Field::inv(&self.a).map(|a| self.with(a, Rational::zero()));
        }
        // Multiply by the conjugate a + b(p − α); the norm is rational.
        let conj_a = &self.a + &(&self.b * &self.ctx.p);
        let conj_b = -&self.b;
        let norm =
            &(&(&self.a * &self.a) + &(&(&self.a * &self.b) * &self.ctx.p)) - &(&(&self.b * &self.b) * &self.ctx.q);
        let norm_inv = Field::inv(&norm)?;
        Some(self.with(&conj_a * &norm_inv, &conj_b * &norm_inv))
    }

    /// Sends `α` to a root of `x² − px − q` mod a prime that splits it.
    fn reduction(ctx: &Arc<QuadraticContext>, attempt: usize) -> Option<Reduction> {
        let p = modp::nth_prime(attempt)?;
        let pc = modp::reduce_rational(&ctx.p, p)?;
        let qc = modp::reduce_rational(&ctx.q, p)?;
        let disc = modp::add_mod(modp::mul_mod(pc, pc, p), modp::mul_mod(4, qc, p), p);
        if disc == 0 {
            return None;
        }
        let s = modp::sqrt_mod(disc, p)?;
        let image = modp::mul_mod(modp::add_mod(pc, s, p), modp::inv_mod(2, p), p);
        Some(Reduction { p, image })
    }

    fn reduce(&self, red: &Reduction) -> Option<u64> {
        let a = modp::reduce_rational(&self.a, red.p)?;
        let b = modp::reduce_rational(&self.b, red.p)?;
        Some(modp::add_mod(a, modp::mul_mod(b, red.image, red.p), red.p))
    }

    fn size(&self) -> usize {
        self.a.size() + self.b.size()
    }

    fn normalize_vector(row: &mut [Self]) {
        let mut refs: Vec<&Rational> = Vec::with_capacity(2 * row.len() + 1);
        if let Some(first) = row.iter().find(|c| !c.is_zero()) {
            refs.push(if Field::is_zero(&first.a) { &first.b } else { &first.a });
        }
        for c in row.iter() {
            refs.push(&c.a);
            refs.push(&c.b);
        }
        let Some(scale) = primitive_integer_scale(&refs) else {
            return;
        };
        if scale.is_one() {
            return;
        }
        for c in row.iter_mut() {
            c.a = &c.a * &scale;
            c.b = &c.b * &scale;
        }
    }
}

impl fmt::Display for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = &self.ctx.symbol;
        let zero = Rational::zero();
        let coeff = |r: &Rational| {
            if r.is_integer() {
                r.to_string()
            } else {
                format!("({r})")
            }
        };
        match (self.a == zero, self.b == zero) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => {
                if self.b.is_one() {
                    write!(f, "{sym}")
                } else if self.b == Rational::from(-1) {
                    write!(f, "-{sym}")
                } else {
                    write!(f, "{}*{sym}", coeff(&self.b))
                }
            }
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                let mag = self.b.abs();
                if mag.is_one() {
                    write!(f, "{} {sign} {sym}", self.a)
                } else {
                    write!(f, "{} {sign} {}*{sym}", self.a, coeff(&mag))
                }
            }
        }
    }
}

impl fmt::Debug for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
