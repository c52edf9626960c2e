use std::fmt;

use super::rational::{primitive_integer_scale, Rational};
use super::unipoly::UniPoly;
use super::{modp, Field, Reduction};

/// Element of `Q(t)`: a reduced fraction with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numer: UniPoly,
    denom: UniPoly,
}

impl RationalFunction {
    /// Builds `numer / denom` in canonical form; `None` if `denom` is zero.
    pub fn new(numer: UniPoly, denom: UniPoly) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        Some(Self::reduce(numer, denom))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction {
            numer: p,
            denom: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The parameter `t` itself.
    pub fn parameter() -> Self {
        Self::from_poly(UniPoly::variable())
    }

    pub fn numer(&self) -> &UniPoly {
        &self.numer
    }

    pub fn denom(&self) -> &UniPoly {
        &self.denom
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.is_one()
    }

    /// Value at `t = t0`, or `None` when the denominator vanishes there.
    pub fn eval(&self, t0: &Rational) -> Option<Rational> {
        let d = self.denom.eval(t0);
        if d == Rational::zero() {
            return None;
        }
        Some(&self.numer.eval(t0) * &Field::inv(&d).unwrap())
    }

    /// The constant value, if this is a degree-zero function.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.numer.is_constant() && self.denom.is_one()).then(|| self.numer.constant_term())
    }

    pub fn display_with(&self, symbol: &str) -> String {
        let n = self.numer.display_with(symbol);
        if self.denom.is_one() {
            return n;
        }
        let wrap = |s: String, p: &UniPoly| {
            if p.coeffs().iter().filter(|c| **c != Rational::zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!(
            "{}/{}",
            wrap(n, &self.numer),
            wrap(self.denom.display_with(symbol), &self.denom)
        )
    }

    fn reduce(numer: UniPoly, denom: UniPoly) -> Self {
        if numer.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        let (numer, denom) = if denom.is_constant() {
            (numer, denom)
        } else {
            let g = numer.gcd(&denom);
            if g.is_one() {
                (numer, denom)
            } else {
                (numer.div_exact(&g), denom.div_exact(&g))
            }
        };
        let lead = denom.lead().unwrap().clone();
        if lead.is_one() {
            RationalFunction { numer, denom }
        } else {
            let s = Field::inv(&lead).unwrap();
            RationalFunction {
                numer: numer.scale(&s),
                denom: denom.scale(&s),
            }
        }
    }
}

impl Field for RationalFunction {
    type Context = ();

    fn context(&self) {}

    fn zero(_: &()) -> Self {
        Self::from_poly(UniPoly::zero())
    }

    fn one(_: &()) -> Self {
        Self::from_poly(UniPoly::one())
    }

    fn from_i64(n: i64, _: &()) -> Self {
        Self::constant(Rational::from(n))
    }

    fn from_rational(r: &Rational, _: &()) -> Self {
        Self::constant(r.clone())
    }

    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    fn is_one(&self) -> bool {
        self.numer.is_one() && self.denom.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.denom == rhs.denom {
            if self.denom.is_one() {
                return Self::from_poly(self.numer.add(&rhs.numer));
            }
            return Self::reduce(self.numer.add(&rhs.numer), self.denom.clone());
        }
        let numer = self.numer.mul(&rhs.denom).add(&rhs.numer.mul(&self.denom));
        Self::reduce(numer, self.denom.mul(&rhs.denom))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.denom.is_one() && rhs.denom.is_one() {
            return Self::from_poly(self.numer.mul(&rhs.numer));
        }
        // Cross-cancel before multiplying to keep degrees down.
        let g1 = self.numer.gcd(&rhs.denom);
        let g2 = rhs.numer.gcd(&self.denom);
        let n1 = if g1.is_one() {
            self.numer.clone()
        } else {
            self.numer.div_exact(&g1)
        };
        let d2 = if g1.is_one() {
            rhs.denom.clone()
        } else {
            rhs.denom.div_exact(&g1)
        };
        let n2 = if g2.is_one() {
            rhs.numer.clone()
        } else {
            rhs.numer.div_exact(&g2)
        };
        let d1 = if g2.is_one() {
            self.denom.clone()
        } else {
            self.denom.div_exact(&g2)
        };
        let numer = n1.mul(&n2);
        if numer.is_zero() {
            return Self::zero(&());
        }
        let denom = d1.mul(&d2);
        let lead = denom.lead().unwrap().clone();
        if lead.is_one() {
            RationalFunction { numer, denom }
        } else {
            let s = Field::inv(&lead).unwrap();
            RationalFunction {
                numer: numer.scale(&s),
                denom: denom.scale(&s),
            }
        }
    }

    fn neg(&self) -> Self {
        RationalFunction {
            numer: self.numer.neg(),
            denom: self.denom.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.numer.is_zero() {
            return None;
        }
        Some(Self::reduce(self.denom.clone(), self.numer.clone()))
    }

    /// Sends `t` to a fixed large residue that changes with the attempt.
    fn reduction(_: &(), attempt: usize) -> Option<Reduction> {
        let p = modp::nth_prime(attempt)?;
        Some(Reduction {
            p,
            image: (1_000_003 + 104_729 * attempt as u64) % p,
        })
    }

    fn reduce(&self, red: &Reduction) -> Option<u64> {
        let horner = |f: &UniPoly| -> Option<u64> {
            f.coeffs().iter().rev().try_fold(0u64, |acc, c| {
                Some(modp::add_mod(
                    modp::mul_mod(acc, red.image, red.p),
                    modp::reduce_rational(c, red.p)?,
                    red.p,
                ))
            })
        };
        let d = horner(&self.denom)?;
        if d == 0 {
            return None;
        }
        Some(modp::mul_mod(horner(&self.numer)?, modp::inv_mod(d, red.p), red.p))
    }

    fn size(&self) -> usize {
        self.numer.bits() + self.denom.bits()
    }

    fn growth(&self) -> usize {
        self.numer.degree().unwrap_or(0).max(self.denom.degree().unwrap_or(0))
    }

    /// Clears polynomial denominators, divides out the polynomial gcd of the
    /// numerators, then removes rational content.
    fn normalize_vector(row: &mut [Self]) {
        if row.iter().all(|c| c.is_zero()) {
            return;
        }
        let mut lcm = UniPoly::one();
        for c in row.iter().filter(|c| !c.is_zero()) {
            if !c.denom.is_one() {
                let g = lcm.gcd(&c.denom);
                lcm = lcm.mul(&c.denom.div_exact(&g));
            }
        }
        let mut numers: Vec<UniPoly> = row
            .iter()
            .map(|c| {
                if c.is_zero() || lcm.is_one() {
                    c.numer.clone()
                } else {
                    c.numer.mul(&lcm.div_exact(&c.denom))
                }
            })
            .collect();
        let mut g = UniPoly::zero();
        for n in numers.iter().filter(|n| !n.is_zero()) {
            g = if g.is_zero() { n.monic() } else { g.gcd(n) };
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() {
            for n in numers.iter_mut().filter(|n| !n.is_zero()) {
                *n = n.div_exact(&g);
            }
        }
        // First nonzero entry's leading coefficient decides the sign.
        let mut all: Vec<&Rational> = Vec::new();
        if let Some(first) = numers.iter().find(|n| !n.is_zero()) {
            all.push(first.lead().unwrap());
        }
        for n in &numers {
            all.extend(n.coeffs().iter());
        }
        let scale = primitive_integer_scale(&all).unwrap_or_else(Rational::one);
        for (slot, n) in row.iter_mut().zip(numers) {
            let n = if scale.is_one() { n } else { n.scale(&scale) };
            *slot = Self::from_poly(n);
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> RationalFunction {
        RationalFunction::parameter()
    }

    fn c(n: i64) -> RationalFunction {
        RationalFunction::from_i64(n, &())
    }

    #[test]
    fn common_denominator_cancels() {
        // (t-1)/t + 1/t = 1
        let lhs = t().sub(&c(1)).div(&t()).unwrap();
        let rhs = c(1).div(&t()).unwrap();
        assert!(lhs.add(&rhs).is_one());
    }

    #[test]
    fn inverse_swaps_fraction() {
        let x = t().sub(&c(1)).div(&t()).unwrap();
        let inv = x.inv().unwrap();
        assert_eq!(inv, t().div(&t().sub(&c(1))).unwrap());
        assert!(x.mul(&inv).is_one());
    }

    #[test]
    fn denominator_is_monic() {
        let x = c(1).div(&t().mul(&c(2))).unwrap();
        assert!(x.denom().lead().unwrap().is_one());
        assert_eq!(x.numer().constant_term(), Rational::new(1, 2).unwrap());
        assert_eq!(x.display_with("t"), "(1/2)/t");
    }

    #[test]
    fn evaluation_skips_poles() {
        let x = c(1).div(&t().sub(&c(2))).unwrap();
        assert_eq!(x.eval(&Rational::from(2)), None);
        assert_eq!(x.eval(&Rational::from(3)), Some(Rational::one()));
    }

    #[test]
    fn normalized_rows_are_primitive_polynomials() {
        let half = RationalFunction::constant(Rational::new(1, 2).unwrap());
        let mut row = vec![
            RationalFunction::zero(&()),
            t().div(&t().add(&c(1))).unwrap().mul(&half),
            c(3).div(&t().add(&c(1))).unwrap(),
        ];
        RationalFunction::normalize_vector(&mut row);
        assert!(row[0].is_zero());
        assert_eq!(row[1], t());
        assert_eq!(row[2], c(6));
    }
}
