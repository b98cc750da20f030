use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::domain::{IntegerRing, PrimeField, RationalField};

fn zring(vars: &[&str]) -> PolyRing<IntegerRing> {
    PolyRing::new(IntegerRing, vars)
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

#[test]
fn difference_of_squares() {
    let r = zring(&["x"]);
    let x = r.var("x").unwrap();
    let p = (&x + &r.one()) * (&x - &r.one());
    assert_eq!(p.to_string(), "x^2 - 1");
    assert_eq!(&p + &r.zero(), p);
}

#[test]
fn mismatched_rings_are_rejected() {
    let a = zring(&["x"]).var("x").unwrap();
    let b = zring(&["y"]).var("y").unwrap();
    assert_eq!(arith(&a, &b, ArithOp::Add), Err(Error::ContextMismatch));
    assert_eq!(a.try_mul(&b), Err(Error::ContextMismatch));
}

#[test]
fn septic_expansion_by_repeated_multiplication() {
    let r = zring(&["b", "u"]);
    let u = r.var("u").unwrap();
    let b = r.var("b").unwrap();
    let lin = &u - &b;
    let mut p = &u + &b.scale(&int(6));
    for _ in 0..6 {
        p = &p * &lin;
    }
    let expect = r
        .parse("u^7 - 21*b^2*u^5 + 70*b^3*u^4 - 105*b^4*u^3 + 84*b^5*u^2 - 35*b^6*u + 6*b^7")
        .unwrap();
    assert_eq!(p, expect);
}

#[test]
fn evaluation_examples() {
    let r = zring(&["x", "y", "z"]);
    let p = r.parse("x^2 - 1").unwrap();
    let v = p.eval(&[("x", Value::Scalar(int(3)))]).unwrap();
    assert_eq!(v.constant_value(), Some(int(8)));

    let q = r.parse("x^7 + y^3 + z^2").unwrap();
    let at = q
        .eval(&[
            ("x", Value::Scalar(int(0))),
            ("y", Value::Scalar(int(-1))),
            ("z", Value::Scalar(int(1))),
        ])
        .unwrap();
    assert!(at.is_zero());

    assert!(matches!(
        p.eval(&[("q", Value::Scalar(int(1)))]),
        Err(Error::UnknownVariable(_))
    ));
}

#[test]
fn polynomial_substitution() {
    let r = zring(&["x", "y"]);
    let p = r.parse("x^2 + y").unwrap();
    let s = r.parse("y + 1").unwrap();
    assert_eq!(p.eval(&[("x", Value::Poly(s))]).unwrap(), r.parse("y^2 + 3*y + 1").unwrap());
}

#[test]
fn exact_division() {
    let r = zring(&["x"]);
    let q = r.parse("x^2 - 1").unwrap().exact_div(&r.parse("x - 1").unwrap()).unwrap();
    assert_eq!(q, r.parse("x + 1").unwrap());
    assert_eq!(r.parse("x^2 + 1").unwrap().exact_div(&r.parse("x - 1").unwrap()), Err(Error::NotDivisible));
    assert!(matches!(r.one().exact_div(&r.zero()), Err(Error::Undefined(_))));
}

#[test]
fn multiplicity_bookkeeping() {
    let r = zring(&["a", "b", "s"]);
    let lin = r.parse("a - b").unwrap();
    let s = r.parse("s + a").unwrap();
    let mut cur = &lin.pow(4) * &s;
    for _ in 0..3 {
        cur = cur.exact_div(&lin).unwrap();
    }
    assert_eq!(cur, &lin * &s);
    let cofactor = cur.exact_div(&lin).unwrap();
    assert_eq!(cofactor.exact_div(&lin), Err(Error::NotDivisible));
}

#[test]
fn derivatives() {
    let r = zring(&["x", "u", "c"]);
    assert_eq!(r.parse("x^3").unwrap().derivative("x").unwrap(), r.parse("3*x^2").unwrap());
    assert_eq!(r.parse("u^7 + c").unwrap().derivative("u").unwrap(), r.parse("7*u^6").unwrap());
    let p = r.parse("4*x^3").unwrap() + r.parse("x + c").unwrap().pow(2).scale(&int(27));
    let expect = r.parse("12*x^2").unwrap() + r.parse("x + c").unwrap().scale(&int(54));
    assert_eq!(p.derivative("x").unwrap(), expect);
    assert!(p.derivative("nope").is_err());
}

#[test]
fn gcd_of_univariate_polynomials() {
    let r = zring(&["x"]);
    let g = univariate_gcd(&r.parse("x^2 - 1").unwrap(), &r.parse("x - 1").unwrap(), "x").unwrap();
    assert_eq!(g, r.parse("x - 1").unwrap());
    let g = univariate_gcd(&r.parse("x^2").unwrap(), &r.parse("x^3").unwrap(), "x").unwrap();
    assert_eq!(g, r.parse("x^2").unwrap());
    assert!(univariate_gcd(&r.zero(), &r.zero(), "x").is_err());

    let two = zring(&["x", "y"]);
    assert!(two.parse("x*y").unwrap().univariate_gcd(&two.parse("x").unwrap(), "x").is_err());
}

#[test]
fn canonical_printing() {
    let r = zring(&["b", "u"]);
    let p = r.parse("70*b^3*u^4 - 21*b^2*u^5 + 0*u - 7").unwrap();
    assert_eq!(p.to_string(), "70*b^3*u^4 - 21*b^2*u^5 - 7");
    // with u declared first, ties in degree favour lower powers of b
    let r2 = zring(&["u", "b"]);
    assert_eq!(p.embed(&r2).unwrap().to_string(), "-21*u^5*b^2 + 70*u^4*b^3 - 7");
    assert_eq!(r.zero().to_string(), "0");
    assert_eq!(r.parse("-u + b").unwrap().to_string(), "b - u");

    let q = PolyRing::new(RationalField, &["x"]);
    assert_eq!(q.parse("3/4*x - 1/2").unwrap().to_string(), "3/4*x - 1/2");
}

#[test]
fn parse_errors_carry_positions() {
    let r = zring(&["x"]);
    assert!(matches!(r.parse("x + * 2"), Err(Error::Parse { pos: 4, .. })));
    assert!(matches!(r.parse(""), Err(Error::Parse { .. })));
    assert!(matches!(r.parse("x $"), Err(Error::Parse { pos: 2, .. })));
    assert!(matches!(r.parse("y"), Err(Error::UnknownVariable(_))));
}

#[test]
fn inferred_variables() {
    let (ring, p) = parse_with_inferred_vars(IntegerRing, "b*u^2 - 3*u + 1").unwrap();
    assert_eq!(ring.vars(), ["b", "u"]);
    assert_eq!(p.num_terms(), 3);
}

#[test]
fn grevlex_order() {
    // degree first, then the smaller power of the last variable wins
    let r = zring(&["x", "y", "z"]);
    let p = r.parse("z^2 + x*z + y^2 + x^2 + x + 1").unwrap();
    assert_eq!(p.to_string(), "x^2 + y^2 + x*z + z^2 + x + 1");
}

fn arb_poly() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    proptest::collection::vec((proptest::collection::vec(0u32..4, 3), -50i64..50), 0..8)
}

fn build(r: &PolyRing<IntegerRing>, terms: Vec<(Vec<u32>, i64)>) -> MultiPoly<IntegerRing> {
    r.from_terms(terms.into_iter().map(|(e, c)| (e, int(c))))
}

proptest! {
    #[test]
    fn additive_and_multiplicative_identities(a in arb_poly(), b in arb_poly()) {
        let r = zring(&["x", "y", "z"]);
        let (p, q) = (build(&r, a), build(&r, b));
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert_eq!(&p * &r.one(), p);
    }

    #[test]
    fn text_round_trip(a in arb_poly()) {
        let r = zring(&["x", "y", "z"]);
        let p = build(&r, a);
        let text = p.to_string();
        prop_assert_eq!(r.parse(&text).unwrap().to_string(), text.clone());
        let spaced = text.replace('*', " *\t").replace('^', "^ ").replace(" - ", "-");
        prop_assert_eq!(r.parse(&spaced).unwrap(), p);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in arb_poly(), b in arb_poly(), s in -5i64..5, t in arb_poly()) {
        let r = zring(&["x", "y", "z"]);
        let (p, q) = (build(&r, a), build(&r, b));
        let sub = [("x", Value::Scalar(int(s))), ("y", Value::Poly(build(&r, t)))];
        let lhs = (&p * &q).eval(&sub).unwrap();
        let rhs = &p.eval(&sub).unwrap() * &q.eval(&sub).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
        let r = zring(&["x", "y", "z"]);
        let (p, q) = (build(&r, a), build(&r, b));
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
    }

    #[test]
    fn reduction_mod_prime_commutes(a in arb_poly(), b in arb_poly(), prime in prop::sample::select(vec![2u64, 3, 101, 65537])) {
        let r = zring(&["x", "y", "z"]);
        let f = PrimeField::new(prime);
        let rp = r.with_domain(f);
        let red = |p: &MultiPoly<IntegerRing>| p.map_into(&rp, |c| f.from_bigint(c)).unwrap();
        let (p, q) = (build(&r, a), build(&r, b));
        prop_assert_eq!(red(&(&p * &q)), &red(&p) * &red(&q));
        prop_assert_eq!(red(&(&p - &q)), &red(&p) - &red(&q));
    }

    #[test]
    fn leibniz_rule(a in arb_poly(), b in arb_poly()) {
        let r = zring(&["x", "y", "z"]);
        let (p, q) = (build(&r, a), build(&r, b));
        let lhs = (&p * &q).derivative("y").unwrap();
        let rhs = &p.derivative("y").unwrap() * &q + &p * &q.derivative("y").unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
