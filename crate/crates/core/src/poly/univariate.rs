//! Dense univariate polynomials.
//!
//! Used whenever a computation is genuinely one-variable: gcds, root finding,
//! interpolation, local orders at a point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{Domain, GcdDomain, IntegerRing, PrimeField, RationalField};
use crate::error::{Error, Result};
use crate::modular;

/// Order of vanishing; `Infinite` for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(n) => Some(n),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(self, n: u32) -> bool {
        match self {
            Valuation::Finite(k) => k >= n,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(n) => write!(f, "{n}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Coefficients stored low degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<D: Domain> {
    domain: D,
    coeffs: Vec<D::Elem>,
}

impl<D: Domain> fmt::Debug for UniPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| self.domain.fmt_elem(c)).collect();
        write!(f, "UniPoly[{}]", parts.join(", "))
    }
}

impl<D: Domain> UniPoly<D> {
    pub fn new(domain: D, mut coeffs: Vec<D::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| domain.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { domain, coeffs }
    }

    pub fn from_i64s(domain: D, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| domain.from_i64(n)).collect();
        Self::new(domain, c)
    }

    pub fn zero(domain: D) -> Self {
        UniPoly { domain, coeffs: Vec::new() }
    }

    pub fn constant(domain: D, c: D::Elem) -> Self {
        Self::new(domain, vec![c])
    }

    /// `x - a`.
    pub fn linear_root(domain: D, a: &D::Elem) -> Self {
        let c = vec![domain.neg(a), domain.one()];
        Self::new(domain, c)
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn coeffs(&self) -> &[D::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> D::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&D::Elem> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &D::Elem) -> D::Elem {
        let d = &self.domain;
        self.coeffs
            .iter()
            .rev()
            .fold(d.zero(), |acc, c| d.add(&d.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let d = &self.domain;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| d.mul(c, &d.from_i64(i as i64)))
            .collect();
        Self::new(d.clone(), c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = &self.domain;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| d.add(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(d.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = &self.domain;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| d.sub(&self.coeff(i), &other.coeff(i))).collect();
        Self::new(d.clone(), c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = &self.domain;
        if self.is_zero() || other.is_zero() {
            return Self::zero(d.clone());
        }
        let mut c = vec![d.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if d.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = d.mul(a, b);
                d.add_assign(&mut c[i + j], &t);
            }
        }
        Self::new(d.clone(), c)
    }

    pub fn scale(&self, s: &D::Elem) -> Self {
        let c = self.coeffs.iter().map(|c| self.domain.mul(c, s)).collect();
        Self::new(self.domain.clone(), c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.domain.clone(), self.domain.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Division with remainder; `None` when some quotient coefficient is not
    /// exactly divisible by the divisor's leading coefficient.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let d = &self.domain;
        let db = divisor.degree()?;
        let lc = divisor.lc()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Some((Self::zero(d.clone()), self.clone()));
        }
        let mut quot = vec![d.zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + db];
            if d.is_zero(top) {
                continue;
            }
            let q = d.div_exact(top, &lc)?;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = d.mul(&q, b);
                rem[k + j] = d.sub(&rem[k + j], &t);
            }
            quot[k] = q;
        }
        Some((Self::new(d.clone(), quot), Self::new(d.clone(), rem)))
    }

    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::Undefined("division by the zero polynomial".into()));
        }
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::NotDivisible),
        }
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b`, valid in any integral domain.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let d = &self.domain;
        let (Some(da), Some(db)) = (self.degree(), divisor.degree()) else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let lc = divisor.lc().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        for k in (db..=da).rev() {
            let top = rem[k].clone();
            for c in rem.iter_mut().take(k + 1) {
                *c = d.mul(c, &lc);
            }
            if d.is_zero(&top) {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = d.mul(&top, b);
                rem[k - db + j] = d.sub(&rem[k - db + j], &t);
            }
        }
        rem.truncate(db);
        Self::new(d.clone(), rem)
    }

    /// Multiplicity of `a` as a root.
    pub fn order_at(&self, a: &D::Elem) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let d = &self.domain;
        let mut cur = self.coeffs.clone();
        let mut order = 0;
        loop {
            // Synthetic division by (x - a).
            let n = cur.len();
            let mut q = vec![d.zero(); n.saturating_sub(1)];
            let mut acc = d.zero();
            for i in (0..n).rev() {
                acc = d.add(&d.mul(&acc, a), &cur[i]);
                if i > 0 {
                    q[i - 1] = acc.clone();
                }
            }
            if !d.is_zero(&acc) || q.is_empty() {
                return Valuation::Finite(order);
            }
            order += 1;
            cur = q;
        }
    }

    /// Degree in the homogeneous sense: `formal - deg`, i.e. order at infinity
    /// of the degree-`formal` binary form.
    pub fn order_at_infinity(&self, formal: usize) -> Valuation {
        match self.degree() {
            None => Valuation::Infinite,
            Some(deg) => Valuation::Finite((formal - deg) as u32),
        }
    }
}

impl<D: GcdDomain> UniPoly<D> {
    pub fn content(&self) -> D::Elem {
        let d = &self.domain;
        self.coeffs.iter().fold(d.zero(), |g, c| d.gcd(&g, c))
    }

    /// Primitive part with unit-normal leading coefficient (monic over fields).
    pub fn normalized(&self) -> Self {
        let d = &self.domain;
        let Some(lc) = self.lc() else {
            return self.clone();
        };
        let mut scale = self.content();
        if !d.is_field() {
            scale = d.mul(&scale, &d.unit_of(lc));
        } else {
            scale = lc.clone();
        }
        let c = self
            .coeffs
            .iter()
            .map(|c| d.div_exact(c, &scale).expect("content divides every coefficient"))
            .collect();
        Self::new(d.clone(), c)
    }

    /// Greatest common divisor: monic over fields, primitive with positive
    /// leading coefficient over the integers. Uses the subresultant PRS.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let d = &self.domain;
        if self.is_zero() && other.is_zero() {
            return Err(Error::Undefined("gcd(0, 0)".into()));
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.normalized(), other.normalized())
        } else {
            (other.normalized(), self.normalized())
        };
        if b.is_zero() {
            return Ok(a);
        }
        let mut g = d.one();
        let mut h = d.one();
        loop {
            let delta = (a.degree().expect("nonzero") - b.degree().expect("nonzero")) as u64;
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return Ok(b.normalized());
            }
            if r.degree() == Some(0) {
                return Ok(Self::constant(d.clone(), d.one()));
            }
            let denom = d.mul(&g, &d.pow(&h, delta));
            let c = r
                .coeffs
                .iter()
                .map(|c| d.div_exact(c, &denom).expect("subresultant division is exact"))
                .collect();
            a = b;
            b = Self::new(d.clone(), c);
            g = a.lc().expect("nonzero").clone();
            // h <- g^delta / h^(delta - 1)
            if delta > 0 {
                let num = d.pow(&g, delta);
                let den = d.pow(&h, delta - 1);
                h = d.div_exact(&num, &den).expect("subresultant division is exact");
            }
        }
    }

    /// `p / gcd(p, p')`, normalized.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(self.normalized());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.normalized().exact_div(&g)?.normalized())
    }
}

impl<D: Domain> fmt::Display for UniPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.domain.is_zero(c) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", self.domain.fmt_elem(c))?,
                1 => write!(f, "{}*x", self.domain.fmt_elem(c))?,
                _ => write!(f, "{}*x^{}", self.domain.fmt_elem(c), i)?,
            }
        }
        Ok(())
    }
}

/// Interpolating polynomial through `(nodes[i], values[i])` over a field,
/// by Newton divided differences.
pub fn interpolate<D: Domain>(domain: &D, nodes: &[D::Elem], values: &[D::Elem]) -> Result<UniPoly<D>> {
    assert_eq!(nodes.len(), values.len());
    let d = domain;
    let n = nodes.len();
    for i in 0..n {
        if nodes[..i].contains(&nodes[i]) {
            return Err(Error::Sampling(format!("duplicate node {}", d.fmt_elem(&nodes[i]))));
        }
    }
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = d.sub(&dd[i], &dd[i - 1]);
            let den = d.sub(&nodes[i], &nodes[i - level]);
            dd[i] = d
                .div_exact(&num, &den)
                .ok_or_else(|| Error::Sampling("interpolation needs a field".into()))?;
        }
    }
    // Horner in the Newton basis.
    let mut acc = UniPoly::zero(d.clone());
    for i in (0..n).rev() {
        acc = acc.mul(&UniPoly::linear_root(d.clone(), &nodes[i]));
        acc = acc.add(&UniPoly::constant(d.clone(), dd[i].clone()));
    }
    Ok(acc)
}

/// Finding the roots of a univariate polynomial that lie in the domain itself.
pub trait RootFinding: GcdDomain {
    /// Distinct roots in the domain, in a deterministic order.
    fn roots(&self, p: &UniPoly<Self>) -> Vec<Self::Elem>;
}

fn mulmod(a: &UniPoly<PrimeField>, b: &UniPoly<PrimeField>, m: &UniPoly<PrimeField>) -> UniPoly<PrimeField> {
    a.mul(b).div_rem(m).expect("monic modulus").1
}

fn powmod(base: &UniPoly<PrimeField>, mut e: u64, m: &UniPoly<PrimeField>) -> UniPoly<PrimeField> {
    let f = *m.domain();
    let mut acc = UniPoly::constant(f, 1);
    let mut b = base.div_rem(m).expect("monic modulus").1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(&b, &b, m);
        }
    }
    acc
}

/// Splits a monic product of distinct linear factors into its roots.
fn split_linear(g: &UniPoly<PrimeField>, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    let f = *g.domain();
    let p = f.modulus();
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let c = g.coeffs();
            out.push(f.neg(&f.div_exact(&c[0], &c[1]).expect("nonzero lc")));
            return;
        }
        _ => {}
    }
    loop {
        let a = rng.random_range(0..p);
        let shifted = UniPoly::new(f, vec![a, 1]);
        let t = powmod(&shifted, (p - 1) / 2, g).sub(&UniPoly::constant(f, 1));
        let h = match g.gcd(&t) {
            Ok(h) => h,
            Err(_) => continue,
        };
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < g.degree().expect("nonzero") {
            let other = g.exact_div(&h).expect("factor divides").normalized();
            split_linear(&h, rng, out);
            split_linear(&other, rng, out);
            return;
        }
    }
}

impl RootFinding for PrimeField {
    fn roots(&self, p: &UniPoly<Self>) -> Vec<u64> {
        let Some(deg) = p.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let q = self.modulus();
        let mut out = Vec::new();
        if q < 256 {
            out.extend((0..q).filter(|x| p.eval(x) == 0));
            return out;
        }
        let monic = p.normalized();
        let x = UniPoly::new(*self, vec![0, 1]);
        let xp = powmod(&x, q, &monic);
        let g = monic.gcd(&xp.sub(&x)).expect("nonzero");
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_7007);
        split_linear(&g, &mut rng, &mut out);
        out.sort_unstable();
        out
    }
}

/// Integer polynomial with the same roots as a rational one.
fn clear_denominators(p: &UniPoly<RationalField>) -> UniPoly<IntegerRing> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let c = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    UniPoly::new(IntegerRing, c)
}

/// Rational reconstruction: `n/d` with `n ≡ d * r (mod m)` and `|n|, d` below
/// `sqrt(m/2)`.
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1) = (r1, r2);
        (s0, s1) = (s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

impl RootFinding for RationalField {
    /// Roots are found modulo a prime where the squarefree part stays
    /// squarefree, Newton-lifted, and recovered by rational reconstruction.
    fn roots(&self, p: &UniPoly<Self>) -> Vec<BigRational> {
        if p.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut sqf = clear_denominators(&p.squarefree_part().expect("nonzero")).normalized();
        let mut out = Vec::new();
        if sqf.coeff(0).is_zero() {
            out.push(BigRational::zero());
            sqf = sqf.exact_div(&UniPoly::from_i64s(IntegerRing, &[0, 1])).expect("x divides");
        }
        if sqf.degree().unwrap_or(0) == 0 {
            return out;
        }
        let lc = sqf.lc().expect("nonzero").abs();
        let a0 = sqf.coeff(0).abs();
        let size = lc.clone().max(a0);
        let target: BigInt = &size * &size * 4 + 1;

        for ell in modular::primes_from(1009, 200) {
            let f = PrimeField::new(ell);
            let reduced = UniPoly::new(f, sqf.coeffs().iter().map(|c| f.from_bigint(c)).collect());
            if reduced.degree() != sqf.degree() {
                continue;
            }
            let dg = reduced.gcd(&reduced.derivative()).expect("nonzero");
            if dg.degree() != Some(0) {
                continue;
            }
            let dsqf = sqf.derivative();
            for r0 in f.roots(&reduced) {
                let mut r = BigInt::from(r0);
                let mut m = BigInt::from(ell);
                while m < target {
                    m = &m * &m;
                    let fr = eval_int(&sqf, &r).mod_floor(&m);
                    let dfr = eval_int(&dsqf, &r).mod_floor(&m);
                    let inv = mod_inverse(&dfr, &m).expect("simple root mod ell");
                    r = (&r - fr * inv).mod_floor(&m);
                }
                if let Some(q) = rational_reconstruct(&r, &m) {
                    let qq = UniPoly::new(*self, sqf.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect());
                    if qq.eval(&q).is_zero() {
                        out.push(q);
                    }
                }
            }
            out.sort();
            return out;
        }
        panic!("no suitable prime found for rational root search");
    }
}

fn eval_int(p: &UniPoly<IntegerRing>, x: &BigInt) -> BigInt {
    p.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}
