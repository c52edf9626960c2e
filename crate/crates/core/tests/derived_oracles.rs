//! Values re-derived here by independent means and compared with the library.

use std::collections::BTreeMap;

use arrcheck_core::arrangement::{builtin, BuiltinName, BuiltinParam};
use arrcheck_core::census::{discriminant_roots, mpog_quadratic};
use arrcheck_core::field::{Field, FieldScalar, RationalFunction};
use arrcheck_core::parse::parse_linear_form;
use arrcheck_core::poly::{HomPoly, Var};
use arrcheck_core::syzygy::{classify, ClassifyOptions, JacobianSyzygies};
use arrcheck_core::{CurveClass, DynArrangement, FieldDescriptor, Rational};
use num_rational::BigRational;
use num_traits::Zero;

type Naive = BTreeMap<[usize; 3], BigRational>;

fn big(r: &Rational) -> BigRational {
    BigRational::new(r.numer().clone(), r.denom().clone())
}

/// Expands a product of linear forms term by term.
fn naive_product(lines: &[[Rational; 3]]) -> Naive {
    let mut acc: Naive = BTreeMap::from([([0, 0, 0], BigRational::from_integer(1.into()))]);
    for l in lines {
        let mut next = Naive::new();
        for (e, c) in &acc {
            for v in 0..3 {
                let coeff = big(&l[v]);
                if coeff.is_zero() {
                    continue;
                }
                let mut e2 = *e;
                e2[v] += 1;
                *next.entry(e2).or_insert_with(BigRational::zero) += c * &coeff;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc
}

fn as_naive(f: &HomPoly<Rational>) -> Naive {
    f.terms()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| ([m.exponent(Var::X), m.exponent(Var::Y), m.exponent(Var::Z)], big(c)))
        .collect()
}

#[test]
fn l6_defining_polynomial_by_expansion() {
    let q = FieldDescriptor::Rationals;
    let lines: Vec<[Rational; 3]> = BuiltinName::L6
        .forms()
        .iter()
        .map(|s| {
            parse_linear_form(s, &q).unwrap().map(|c| match c {
                FieldScalar::Rational(r) => r,
                _ => unreachable!(),
            })
        })
        .collect();
    let DynArrangement::Rational(a) = builtin(BuiltinName::L6, None).unwrap() else {
        unreachable!()
    };
    let f = as_naive(&a.defining_polynomial());
    let g = naive_product(&lines);
    // the library may rescale each line; compare up to one overall constant
    let (m0, c0) = g.iter().next().unwrap();
    let ratio = &f[m0] / c0;
    assert_eq!(f.len(), g.len());
    for (m, c) in &g {
        assert_eq!(f[m], c * &ratio, "monomial {m:?}");
    }
}

fn proportional(f: &HomPoly<Rational>, g: &HomPoly<Rational>) -> bool {
    let (f, g) = (as_naive(f), as_naive(g));
    let Some((m0, c0)) = g.iter().next() else {
        return f.is_empty();
    };
    let Some(ratio) = f.get(m0).map(|c| c / c0) else {
        return false;
    };
    f.len() == g.len() && g.iter().all(|(m, c)| f.get(m) == Some(&(c * &ratio)))
}

fn generic_lt() -> arrcheck_core::Arrangement<RationalFunction> {
    let DynArrangement::Function(a) = builtin(BuiltinName::Lt, None).unwrap() else {
        unreachable!()
    };
    a
}

fn at(f: &HomPoly<RationalFunction>, t0: &Rational) -> HomPoly<Rational> {
    f.map_coeffs(&(), |c| c.eval(t0).expect("no pole at the sample"))
}

#[test]
fn lt_specialize_then_multiply_equals_multiply_then_specialize() {
    let family = generic_lt();
    let f = family.defining_polynomial();
    for t in [2i64, 3, -1, 5, 7] {
        let t0 = Rational::from(t);
        let DynArrangement::Rational(s) = builtin(BuiltinName::Lt, Some(&BuiltinParam::Value(t0.clone()))).unwrap()
        else {
            unreachable!()
        };
        assert!(proportional(&s.defining_polynomial(), &at(&f, &t0)), "t = {t}");
        assert_eq!(s.weak_combinatorics().tau, 46);
    }
}

#[test]
fn generic_relation_specializes_to_a_relation() {
    let family = generic_lt();
    let f = family.defining_polynomial();
    let engine = JacobianSyzygies::new(f.clone()).unwrap();
    let basis = engine.relation_basis(4).unwrap();
    assert!(!basis.is_empty());
    let t0 = Rational::from(2);
    let special = JacobianSyzygies::new(at(&f, &t0)).unwrap();
    let j = special.jacobian();
    for v in &basis {
        // clear poles at t = 2 first by scaling with the common denominator
        let [a, b, c] = v.components().map(|p| p.clone());
        let denom = [&a, &b, &c]
            .iter()
            .flat_map(|p| p.coeffs().iter())
            .fold(RationalFunction::constant(Rational::from(1)), |acc, x| {
                acc.mul(&RationalFunction::from_poly(x.denom().clone()))
            });
        let [a, b, c] = [a, b, c].map(|p| at(&p.scale(&denom), &t0));
        assert!(!(a.is_zero() && b.is_zero() && c.is_zero()));
        let sum = a
            .multiply(&j.fx)
            .add(&b.multiply(&j.fy))
            .unwrap()
            .add(&c.multiply(&j.fz))
            .unwrap();
        assert!(sum.is_zero());
    }
}

/// `xyz` is free with exponents `(1, 1)`: `dim AR_r = 2·C(r+1, 2)`.
#[test]
fn coordinate_triangle_dimensions() {
    let q = FieldDescriptor::Rationals;
    let forms = ["x", "y", "z"]
        .iter()
        .map(|s| parse_linear_form(s, &q).unwrap())
        .collect();
    let DynArrangement::Rational(a) = DynArrangement::from_scalars(forms, q).unwrap() else {
        unreachable!()
    };
    let engine = JacobianSyzygies::new(a.defining_polynomial()).unwrap();
    for r in 0..=6 {
        assert_eq!(engine.relation_dim(r).unwrap(), (r + 1) * r, "r = {r}");
    }
    let p = classify(&a, &ClassifyOptions::default()).unwrap();
    assert_eq!(p.exponents, vec![1, 1]);
    assert_eq!(p.curve_class, CurveClass::Free);
}

#[test]
fn discriminant_roots_by_search() {
    for (d, n3) in [(6i64, 2i64), (7, 4), (8, 7), (9, 10), (5, 0), (10, 14), (12, 23)] {
        let found: Vec<i64> = (-30..=30).filter(|&r| mpog_quadratic(d, r, n3) == 0).collect();
        match discriminant_roots(d, n3) {
            Some((lo, hi)) => {
                let mut expected = vec![lo, hi];
                expected.dedup();
                assert_eq!(found, expected, "(d, n3) = ({d}, {n3})");
            }
            None => assert!(found.is_empty(), "(d, n3) = ({d}, {n3})"),
        }
    }
}
