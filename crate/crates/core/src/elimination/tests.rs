use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use super::Strategy;
use crate::domain::{IntegerRing, RationalField};
use crate::domain::PrimeField as Fp;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn zring(vars: &[&str]) -> PolyRing<IntegerRing> {
    PolyRing::new(IntegerRing, vars)
}

const BOTH: [Strategy; 2] = [Strategy::FractionFree, Strategy::ModularInterp];

#[test]
fn linear_sylvester_and_resultant() {
    let r = zring(&["x", "alpha", "beta"]);
    let p = r.parse("x - alpha").unwrap();
    let q = r.parse("x - beta").unwrap();
    let s = sylvester(&p, &q, "x").unwrap();
    assert_eq!(s.matrix().to_string(), "[1, -alpha]\n[1, -beta]");
    for st in BOTH {
        assert_eq!(resultant(&p, &q, "x", st).unwrap(), r.parse("alpha - beta").unwrap());
    }
}

#[test]
fn sylvester_of_monomial_slice() {
    let r = zring(&["u", "c"]);
    let s = sylvester(&r.parse("u^4").unwrap(), &r.parse("u^7 + c").unwrap(), "u").unwrap();
    assert_eq!(s.size(), 11);
    let c = r.var("c").unwrap();
    for row in s.matrix().rows() {
        for e in row {
            assert!(e.is_zero() || e == &r.one() || e == &c, "unexpected entry {e}");
        }
    }
    // band structure: 7 rows of the quartic, 4 of the septic
    for i in 0..7 {
        assert_eq!(s.matrix().get(i, i), &r.one());
    }
    for i in 0..4 {
        assert_eq!(s.matrix().get(7 + i, i), &r.one());
        assert_eq!(s.matrix().get(7 + i, i + 7), &c);
    }
}

#[test]
fn sylvester_rejects_constants() {
    let r = zring(&["x", "y"]);
    assert!(matches!(sylvester(&r.parse("y").unwrap(), &r.parse("2").unwrap(), "x"), Err(Error::Undefined(_))));
    assert!(matches!(sylvester(&r.zero(), &r.parse("x").unwrap(), "x"), Err(Error::Undefined(_))));
}

/// `lc(p)^deg q * prod q(root)` over the listed roots of `p`.
fn product_over_roots(
    lc: &MultiPoly<IntegerRing>,
    roots: &[MultiPoly<IntegerRing>],
    q: &MultiPoly<IntegerRing>,
    var: &str,
) -> MultiPoly<IntegerRing> {
    let n = q.degree(var).unwrap().unwrap();
    roots.iter().fold(lc.pow(n), |acc, root| {
        acc * q.eval(&[(var, crate::poly::Value::Poly(root.clone()))]).unwrap()
    })
}

#[test]
fn monomial_slice_resultant() {
    let r = zring(&["u", "t4", "t42"]);
    let p = r.parse("t4*u^4").unwrap();
    let q = r.parse("u^7 + t42").unwrap();
    let zero = r.zero();
    let oracle = product_over_roots(&r.var("t4").unwrap(), &[zero.clone(), zero.clone(), zero.clone(), zero], &q, "u");
    assert_eq!(oracle, r.parse("t4^7*t42^4").unwrap());
    for st in BOTH {
        assert_eq!(resultant(&p, &q, "u", st).unwrap(), oracle);
    }
}

#[test]
fn classic_discriminants() {
    let r = zring(&["x", "b", "c"]);
    assert_eq!(discriminant(&r.parse("x^2 + b*x + c").unwrap(), "x").unwrap(), r.parse("b^2 - 4*c").unwrap());
    let r = zring(&["y", "p", "q"]);
    assert_eq!(
        discriminant(&r.parse("y^3 + p*y + q").unwrap(), "y").unwrap(),
        r.parse("-4*p^3 - 27*q^2").unwrap()
    );
    assert!(discriminant(&r.parse("y + p").unwrap(), "y").is_err());
}

/// `b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2 + 18 a b c d` for `a x^3 + b x^2 + c x + d`.
fn cubic_disc_oracle(p: &MultiPoly<IntegerRing>, var: &str) -> MultiPoly<IntegerRing> {
    let cs = p.coefficients_in(p.ring().var_index(var).unwrap());
    let (d, c, b, a) = (&cs[0], &cs[1], &cs[2], &cs[3]);
    let k = |n: i64| p.ring().int(n);
    b.pow(2) * c.pow(2) - k(4) * a * c.pow(3) - k(4) * b.pow(3) * d - k(27) * a.pow(2) * d.pow(2)
        + k(18) * a * b * c * d
}

#[test]
fn lemma_cubic_vanishes_to_order_three() {
    let r = zring(&["x", "c"]);
    let p = r.parse("4*x^3").unwrap() + r.parse("x + c").unwrap().pow(2).scale(&BigInt::from(27));
    let disc = discriminant(&p, "x").unwrap();
    assert_eq!(disc, cubic_disc_oracle(&p, "x"));
    assert_eq!(vanishing_order(&disc, &r.var("c").unwrap()).unwrap(), 3);

    let r = zring(&["x", "alpha", "beta"]);
    let a = r.parse("x - alpha").unwrap();
    let b = r.parse("x - beta").unwrap();
    let p = a.pow(3).scale(&BigInt::from(4)) + b.pow(2).scale(&BigInt::from(27));
    let disc = discriminant(&p, "x").unwrap();
    assert_eq!(vanishing_order(&disc, &r.parse("alpha - beta").unwrap()).unwrap(), 3);
}

#[test]
fn remark_orders_for_unequal_exponents() {
    let r = zring(&["x", "alpha", "beta"]);
    let a = r.parse("x - alpha").unwrap();
    let b = r.parse("x - beta").unwrap();
    let lin = r.parse("alpha - beta").unwrap();
    for (n, m) in [(3u32, 2u32), (4, 3), (5, 2)] {
        let p = a.pow(n) - b.pow(m);
        let disc = discriminant_formal(&p, "x", n as usize, Strategy::FractionFree).unwrap();
        assert_eq!(vanishing_order(&disc, &lin).unwrap(), n * (m - 1), "(n, m) = ({n}, {m})");
    }
}

#[test]
fn formal_degree_with_vanishing_top_coefficient() {
    let r = zring(&["x", "a", "b", "c"]);
    let generic = discriminant(&r.parse("a*x^2 + b*x + c").unwrap(), "x").unwrap();
    let at_zero = generic.eval(&[("a", crate::poly::Value::Scalar(BigInt::from(0)))]).unwrap();
    let formal = discriminant_formal(&r.parse("b*x + c").unwrap(), "x", 2, Strategy::FractionFree).unwrap();
    assert_eq!(formal, at_zero);
    assert_eq!(formal, r.parse("b^2").unwrap());
    // double root at infinity
    assert!(discriminant_formal(&r.parse("c").unwrap(), "x", 2, Strategy::FractionFree).unwrap().is_zero());
}

#[test]
fn dense_discriminant_matches_symbolic() {
    let f = PrimeField::default();
    let coeffs: Vec<u64> = [5i64, -3, 0, 7, 2].iter().map(|&c| f.from_i64(c)).collect();
    let r = PolyRing::new(f, &["x"]);
    let p = MultiPoly::from_univariate(&r, "x", &UniPoly::new(f, coeffs.clone())).unwrap();
    let sym = discriminant(&p, "x").unwrap().constant_value().unwrap();
    assert_eq!(discriminant_dense(&f, &coeffs, 4).unwrap(), sym);
    let z = IntegerRing;
    let zc: Vec<BigInt> = [0i64, 0, 1, 2].iter().map(|&c| BigInt::from(c)).collect();
    assert_eq!(discriminant_dense(&z, &zc, 3).unwrap(), BigInt::from(0));
}

#[test]
fn vanishing_order_examples() {
    let r = zring(&["alpha", "beta"]);
    let lin = r.parse("alpha - beta").unwrap();
    let p = lin.pow(3) * r.parse("alpha + beta").unwrap();
    assert_eq!(vanishing_order(&p, &lin).unwrap(), 3);
    assert_eq!(vanishing_order(&r.parse("alpha").unwrap(), &lin).unwrap(), 0);
    assert_eq!(vanishing_order(&r.zero(), &lin), Err(Error::ZeroPolynomial));
}

#[test]
fn univariate_interpolation() {
    let f = PrimeField::default();
    let p = interp_univariate(|s| f.add(&f.mul(&s, &s), &1), 2, f).unwrap();
    assert_eq!(p, UniPoly::from_i64s(f, &[1, 0, 1]));
    assert!(interp_univariate(|_| 0, 7, f).unwrap().is_zero());
    let small = PrimeField::new(5);
    assert!(matches!(interp_univariate(|s| s, 6, small), Err(Error::Sampling(_))));
}

#[test]
fn modular_reconstruction_reports_budget() {
    let f = PrimeField::new(7);
    let r = PolyRing::new(f, &["x", "y"]);
    let p = r.parse("x^2 - y^9").unwrap();
    let q = r.parse("x - y").unwrap();
    // degree in y of the resultant is 9, more than F_7 has nodes
    assert!(matches!(resultant(&p, &q, "x", Strategy::ModularInterp), Err(Error::NeedsMorePoints(_))));
    let zr = zring(&["x", "y"]);
    let s = sylvester(&zr.parse("x^2 - y^9").unwrap(), &zr.parse("x - y").unwrap(), "x").unwrap();
    let tiny = ModularConfig { max_points: 3, max_primes: 4 };
    assert!(matches!(IntegerRing::det_modular(s.matrix(), &tiny), Err(Error::NeedsMorePoints(_))));
}

#[test]
fn rational_resultants_agree() {
    let r = PolyRing::new(RationalField, &["x", "y"]);
    let p = r.parse("1/2*x^2 + 3/4*y*x - 1/3").unwrap();
    let q = r.parse("2/5*x - y^2").unwrap();
    let a = resultant(&p, &q, "x", Strategy::FractionFree).unwrap();
    let b = resultant(&p, &q, "x", Strategy::ModularInterp).unwrap();
    assert_eq!(a, b);
    assert!(a.terms().any(|(_, c)| c != &BigRational::from_integer(c.to_integer())));
}

fn arb_bivariate(max_deg: u32) -> impl proptest::strategy::Strategy<Value = Vec<(u32, u32, i64)>> {
    proptest::collection::vec((0..=max_deg, 0u32..4, -9i64..10), 1..8)
}

fn build(r: &PolyRing<IntegerRing>, t: &[(u32, u32, i64)]) -> MultiPoly<IntegerRing> {
    r.from_terms(t.iter().map(|&(a, b, c)| (vec![a, b], BigInt::from(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strategies_agree(a in arb_bivariate(6), b in arb_bivariate(6)) {
        let r = zring(&["x", "y"]);
        let (p, q) = (build(&r, &a), build(&r, &b));
        prop_assume!(sylvester(&p, &q, "x").is_ok());
        let ff = resultant(&p, &q, "x", Strategy::FractionFree).unwrap();
        let mi = resultant(&p, &q, "x", Strategy::ModularInterp).unwrap();
        prop_assert_eq!(&ff, &mi);

        let f = PrimeField::new(1_000_003);
        let rf = r.with_domain(f);
        let red = |p: &MultiPoly<IntegerRing>| p.map_into(&rf, |c| f.from_bigint(c)).unwrap();
        let fp = resultant_formal(&red(&p), &red(&q), "x", s_deg(&p), s_deg(&q), Strategy::ModularInterp).unwrap();
        prop_assert_eq!(fp, red(&ff));
    }

    #[test]
    fn transposition_sign(a in arb_bivariate(5), b in arb_bivariate(5)) {
        let r = zring(&["x", "y"]);
        let (p, q) = (build(&r, &a), build(&r, &b));
        prop_assume!(sylvester(&p, &q, "x").is_ok());
        let pq = resultant(&p, &q, "x", Strategy::FractionFree).unwrap();
        let qp = resultant(&q, &p, "x", Strategy::FractionFree).unwrap();
        let sign = (s_deg(&p) * s_deg(&q)) % 2 == 1;
        prop_assert_eq!(pq, if sign { -qp } else { qp });
    }

    #[test]
    fn product_over_roots_oracle(roots in proptest::collection::vec(-5i64..6, 1..5), lc in 1i64..4, b in arb_bivariate(4)) {
        let r = zring(&["x", "y"]);
        let x = r.var("x").unwrap();
        let p = roots.iter().fold(r.int(lc), |acc, &z| acc * (&x - &r.int(z)));
        let q = build(&r, &b);
        prop_assume!(matches!(q.degree("x").unwrap(), Some(d) if d > 0));
        let root_polys: Vec<_> = roots.iter().map(|&z| r.int(z)).collect();
        let oracle = product_over_roots(&r.int(lc), &root_polys, &q, "x");
        prop_assert_eq!(resultant(&p, &q, "x", Strategy::FractionFree).unwrap(), oracle);
    }

    #[test]
    fn resultant_vanishes_iff_common_root(z in -5i64..6, w in -5i64..6, a in arb_bivariate(3), b in arb_bivariate(3)) {
        let r = zring(&["x", "y"]);
        let lin = r.parse("x").unwrap() - r.int(z);
        let (s, t) = (build(&r, &a), build(&r, &b));
        prop_assume!(!s.is_zero() && !t.is_zero());
        let shared = resultant(&(&lin * &s), &(&lin * &t), "x", Strategy::FractionFree).unwrap();
        prop_assert!(shared.is_zero());
        // x - z and x - w are coprime exactly when z != w
        let other = r.parse("x").unwrap() - r.int(w);
        let res = resultant(&lin, &other, "x", Strategy::FractionFree).unwrap();
        prop_assert_eq!(res.is_zero(), z == w);
    }

    #[test]
    fn discriminant_detects_repeated_roots(z in -5i64..6, a in arb_bivariate(3)) {
        let r = zring(&["x", "y"]);
        let lin = r.parse("x").unwrap() - r.int(z);
        let s = build(&r, &a);
        prop_assume!(!s.is_zero());
        let p = lin.pow(2) * &s;
        prop_assert!(discriminant(&p, "x").unwrap().is_zero());
        // squarefree instance: distinct linear factors
        let q = &lin * (r.parse("x").unwrap() - r.int(z + 1)) * (r.parse("x").unwrap() - r.int(z + 2));
        prop_assert!(!discriminant(&q, "x").unwrap().is_zero());
    }

    #[test]
    fn vanishing_order_is_additive(a in arb_bivariate(3), b in arb_bivariate(3), i in 0u32..3, j in 0u32..3) {
        let r = zring(&["x", "y"]);
        let c = r.parse("x - y").unwrap();
        let (s, t) = (build(&r, &a), build(&r, &b));
        prop_assume!(!s.is_zero() && !t.is_zero());
        let (s, t) = (s * c.pow(i), t * c.pow(j));
        let total = vanishing_order(&(&s * &t), &c).unwrap();
        prop_assert_eq!(total, vanishing_order(&s, &c).unwrap() + vanishing_order(&t, &c).unwrap());
    }
}

fn s_deg<D: Domain>(p: &MultiPoly<D>) -> usize {
    p.degree("x").unwrap().unwrap_or(0) as usize
}

#[test]
fn coprime_certificates() {
    let r = zring(&["a", "b", "c"]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = Fp::default();
    let p = r.parse("a^7*c^4 + b^7").unwrap();
    let q = r.parse("a^3 - 2*b*c + 5").unwrap();
    assert!(coprime_certificate(&q, &p, f, 8, &mut rng).unwrap());
    let shared = (&q * &p).exact_div(&r.int(1)).unwrap();
    assert!(!coprime_certificate(&shared, &p, f, 8, &mut rng).unwrap());
    assert!(coprime_certificate(&q, &r.int(3), f, 8, &mut rng).unwrap());
}
