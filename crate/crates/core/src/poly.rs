//! Dense homogeneous polynomials in `x, y, z`.
//!
//! A polynomial of degree `k` stores one coefficient per monomial of degree
//! `k`, in graded reverse-lexicographic order:
//! `x^k, x^(k-1)y, …, y^k, x^(k-1)z, …, z^k`.

use std::fmt;

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cannot differentiate a constant")]
    ConstantDerivative,
    #[error("product of an empty list of linear forms")]
    EmptyProduct,
    #[error("linear form {0} is identically zero")]
    ZeroForm(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }
}

/// Dimension of the space of degree-`k` forms, `C(k+2, 2)`.
pub fn monomial_basis_size(k: usize) -> usize {
    (k + 2) * (k + 1) / 2
}

/// Exponent vector `x^a y^b z^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Monomial {
    pub fn new(x: usize, y: usize, z: usize) -> Self {
        Monomial { x, y, z }
    }

    pub fn degree(&self) -> usize {
        self.x + self.y + self.z
    }

    /// Position within the degree-graded basis.
    pub fn index(&self) -> usize {
        let k = self.degree();
        let c = self.z;
        c * (k + 1) - c * c.saturating_sub(1) / 2 + self.y
    }

    /// Inverse of [`Monomial::index`] for degree `k`.
    pub fn from_index(k: usize, index: usize) -> Self {
        assert!(index < monomial_basis_size(k), "monomial index out of range");
        let mut c = 0;
        let mut start = 0;
        loop {
            let block = k - c + 1;
            if index < start + block {
                let b = index - start;
                return Monomial::new(k - c - b, b, c);
            }
            start += block;
            c += 1;
        }
    }

    pub fn exponent(&self, v: Var) -> usize {
        match v {
            Var::X => self.x,
            Var::Y => self.y,
            Var::Z => self.z,
        }
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn times_var(&self, v: Var) -> Monomial {
        let mut m = *self;
        match v {
            Var::X => m.x += 1,
            Var::Y => m.y += 1,
            Var::Z => m.z += 1,
        }
        m
    }
}

/// All degree-`k` monomials in basis order.
pub fn monomials(k: usize) -> impl Iterator<Item = Monomial> {
    (0..=k).flat_map(move |c| (0..=k - c).map(move |b| Monomial::new(k - c - b, b, c)))
}

/// A homogeneous form of fixed degree over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct HomPoly<F: Field> {
    degree: usize,
    coeffs: Vec<F>,
    ctx: F::Context,
}

impl<F: Field> HomPoly<F> {
    pub fn zero(degree: usize, ctx: &F::Context) -> Self {
        HomPoly {
            degree,
            coeffs: vec![F::zero(ctx); monomial_basis_size(degree)],
            ctx: ctx.clone(),
        }
    }

    /// Builds a form from its coefficient vector in basis order.
    pub fn from_coeffs(degree: usize, coeffs: Vec<F>, ctx: &F::Context) -> Self {
        assert_eq!(coeffs.len(), monomial_basis_size(degree), "coefficient count");
        HomPoly {
            degree,
            coeffs,
            ctx: ctx.clone(),
        }
    }

    pub fn monomial(m: Monomial, c: F, ctx: &F::Context) -> Self {
        let mut p = Self::zero(m.degree(), ctx);
        p.coeffs[m.index()] = c;
        p
    }

    pub fn variable(v: Var, ctx: &F::Context) -> Self {
        let m = match v {
            Var::X => Monomial::new(1, 0, 0),
            Var::Y => Monomial::new(0, 1, 0),
            Var::Z => Monomial::new(0, 0, 1),
        };
        Self::monomial(m, F::one(ctx), ctx)
    }

    /// `a·x + b·y + c·z`.
    pub fn linear(coeffs: &[F; 3], ctx: &F::Context) -> Self {
        Self::from_coeffs(1, coeffs.to_vec(), ctx)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn context(&self) -> &F::Context {
        &self.ctx
    }

    pub fn coeff(&self, m: &Monomial) -> &F {
        assert_eq!(m.degree(), self.degree);
        &self.coeffs[m.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &F)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (Monomial::from_index(self.degree, i), c))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.zip_with(rhs, F::add)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.zip_with(rhs, F::sub)
    }

    fn zip_with(&self, rhs: &Self, op: impl Fn(&F, &F) -> F) -> Result<Self, PolyError> {
        if self.degree != rhs.degree {
            return Err(PolyError::DegreeMismatch(self.degree, rhs.degree));
        }
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| op(a, b)).collect();
        Ok(HomPoly {
            degree: self.degree,
            coeffs,
            ctx: self.ctx.clone(),
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn multiply(&self, rhs: &Self) -> Self {
        let degree = self.degree + rhs.degree;
        let mut out = vec![F::zero(&self.ctx); monomial_basis_size(degree)];
        let lhs_terms: Vec<_> = self.terms().collect();
        let rhs_terms: Vec<_> = rhs.terms().collect();
        for (m, a) in &lhs_terms {
            for (n, b) in &rhs_terms {
                let slot = &mut out[m.times(n).index()];
                *slot = slot.add(&a.mul(b));
            }
        }
        HomPoly {
            degree,
            coeffs: out,
            ctx: self.ctx.clone(),
        }
    }

    /// Multiplication by one variable, a pure re-indexing.
    pub fn times_var(&self, v: Var) -> Self {
        let mut out = Self::zero(self.degree + 1, &self.ctx);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let m = Monomial::from_index(self.degree, i).times_var(v);
                out.coeffs[m.index()] = c.clone();
            }
        }
        out
    }

    pub fn partial_derivative(&self, v: Var) -> Result<Self, PolyError> {
        if self.degree == 0 {
            return Err(PolyError::ConstantDerivative);
        }
        let mut out = Self::zero(self.degree - 1, &self.ctx);
        for (m, c) in self.terms() {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut lowered = m;
            match v {
                Var::X => lowered.x -= 1,
                Var::Y => lowered.y -= 1,
                Var::Z => lowered.z -= 1,
            }
            out.coeffs[lowered.index()] = c.mul(&F::from_i64(e as i64, &self.ctx));
        }
        Ok(out)
    }

    pub fn jacobian(&self) -> Result<JacobianTriple<F>, PolyError> {
        Ok(JacobianTriple {
            fx: self.partial_derivative(Var::X)?,
            fy: self.partial_derivative(Var::Y)?,
            fz: self.partial_derivative(Var::Z)?,
        })
    }

    pub fn eval(&self, point: &[F; 3]) -> F {
        let mut acc = F::zero(&self.ctx);
        for (m, c) in self.terms() {
            let mut term = c.clone();
            for (v, p) in Var::ALL.iter().zip(point) {
                for _ in 0..m.exponent(*v) {
                    term = term.mul(p);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Applies a coefficient homomorphism into another field.
    pub fn map_coeffs<G: Field>(&self, ctx: &G::Context, f: impl Fn(&F) -> G) -> HomPoly<G> {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
            ctx: ctx.clone(),
        }
    }

    /// `x·∂x f + y·∂y f + z·∂z f − deg·f`, zero for every form.
    pub fn euler_defect(&self) -> Result<Self, PolyError> {
        let j = self.jacobian()?;
        let sum =
            j.fx.times_var(Var::X)
                .add(&j.fy.times_var(Var::Y))?
                .add(&j.fz.times_var(Var::Z))?;
        sum.sub(&self.scale(&F::from_i64(self.degree as i64, &self.ctx)))
    }
}

/// Product of the given linear forms `a·x + b·y + c·z`.
pub fn product_of_linear_forms<F: Field>(lines: &[[F; 3]], ctx: &F::Context) -> Result<HomPoly<F>, PolyError> {
    if lines.is_empty() {
        return Err(PolyError::EmptyProduct);
    }
    let mut acc = HomPoly::monomial(Monomial::new(0, 0, 0), F::one(ctx), ctx);
    for (i, l) in lines.iter().enumerate() {
        if l.iter().all(F::is_zero) {
            return Err(PolyError::ZeroForm(i));
        }
        acc = acc.multiply(&HomPoly::linear(l, ctx));
    }
    Ok(acc)
}

/// The three partial derivatives of a form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianTriple<F: Field> {
    pub fx: HomPoly<F>,
    pub fy: HomPoly<F>,
    pub fz: HomPoly<F>,
}

impl<F: Field> JacobianTriple<F> {
    pub fn get(&self, v: Var) -> &HomPoly<F> {
        match v {
            Var::X => &self.fx,
            Var::Y => &self.fy,
            Var::Z => &self.fz,
        }
    }

    /// `a·fx + b·fy + c·fz`.
    pub fn pair(&self, a: &HomPoly<F>, b: &HomPoly<F>, c: &HomPoly<F>) -> HomPoly<F> {
        let ab = a.multiply(&self.fx).add(&b.multiply(&self.fy)).expect("same degree");
        ab.add(&c.multiply(&self.fz)).expect("same degree")
    }
}

impl<F: Field> fmt::Display for HomPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for v in Var::ALL {
                match m.exponent(v) {
                    0 => {}
                    1 => write!(f, "*{}", v.name())?,
                    e => write!(f, "*{}^{e}", v.name())?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for HomPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly[{}]({self})", self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type P = HomPoly<Rational>;

    fn lin(a: i64, b: i64, c: i64) -> [Rational; 3] {
        [a.into(), b.into(), c.into()]
    }

    fn var(v: Var) -> P {
        P::variable(v, &())
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis_size(0), 1);
        assert_eq!(monomial_basis_size(4), 15);
        assert_eq!(monomial_basis_size(11), 78);
    }

    #[test]
    fn index_round_trip_and_order() {
        for k in 0..=18 {
            let ms: Vec<_> = monomials(k).collect();
            assert_eq!(ms.len(), monomial_basis_size(k));
            for (i, m) in ms.iter().enumerate() {
                assert_eq!(m.index(), i);
                assert_eq!(Monomial::from_index(k, i), *m);
            }
        }
        let deg2: Vec<_> = monomials(2).map(|m| (m.x, m.y, m.z)).collect();
        assert_eq!(
            deg2,
            vec![(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
        );
    }

    #[test]
    fn small_products() {
        let xy = var(Var::X).multiply(&var(Var::Y));
        assert_eq!(xy, P::monomial(Monomial::new(1, 1, 0), Rational::one(), &()));
        let p = P::linear(&lin(1, 1, 0), &()).multiply(&P::linear(&lin(1, -1, 0), &()));
        let expected = P::monomial(Monomial::new(2, 0, 0), Rational::one(), &())
            .sub(&P::monomial(Monomial::new(0, 2, 0), Rational::one(), &()))
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn derivatives() {
        let xyz = product_of_linear_forms(&[lin(1, 0, 0), lin(0, 1, 0), lin(0, 0, 1)], &()).unwrap();
        let yz = var(Var::Y).multiply(&var(Var::Z));
        assert_eq!(xyz.partial_derivative(Var::X).unwrap(), yz);
        let x3 = P::monomial(Monomial::new(3, 0, 0), Rational::one(), &());
        let d = x3.partial_derivative(Var::Y).unwrap();
        assert_eq!(d.degree(), 2);
        assert!(d.is_zero());
        let c = P::monomial(Monomial::new(0, 0, 0), Rational::one(), &());
        assert_eq!(c.partial_derivative(Var::X), Err(PolyError::ConstantDerivative));
    }

    #[test]
    fn product_errors() {
        assert_eq!(
            product_of_linear_forms::<Rational>(&[], &()),
            Err(PolyError::EmptyProduct)
        );
        assert_eq!(
            product_of_linear_forms(&[lin(1, 0, 0), lin(0, 0, 0)], &()),
            Err(PolyError::ZeroForm(1))
        );
    }

    #[test]
    fn sextic_euler_relation() {
        // y(x−z)(y−x−2z)(y+x−2z)(y−x+2z)(y+x+2z)
        let forms = [
            lin(0, 1, 0),
            lin(1, 0, -1),
            lin(-1, 1, -2),
            lin(1, 1, -2),
            lin(-1, 1, 2),
            lin(1, 1, 2),
        ];
        let q = product_of_linear_forms(&forms, &()).unwrap();
        assert_eq!(q.degree(), 6);
        assert!(q.euler_defect().unwrap().is_zero());
    }

    #[test]
    fn eval_matches_factors() {
        let forms = [lin(1, 2, 3), lin(-1, 0, 5), lin(0, 1, 1)];
        let q = product_of_linear_forms(&forms, &()).unwrap();
        let pt = lin(2, -3, 7);
        let direct = forms.iter().fold(Rational::one(), |acc, l| {
            let v = &(&(&l[0] * &pt[0]) + &(&l[1] * &pt[1])) + &(&l[2] * &pt[2]);
            &acc * &v
        });
        assert_eq!(q.eval(&pt), direct);
    }
}
