//! Sparse multivariate polynomials over a pluggable coefficient domain.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded reverse-lexicographic order with respect to the ring's declared
//! variable order. No zero coefficient is ever stored.

mod text;
pub mod univariate;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::domain::{Domain, GcdDomain};
use crate::error::{Error, Result};

pub use text::parse_with_inferred_vars;
pub use univariate::UniPoly;

/// An exponent vector of fixed arity with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; nvars] }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial { degree: self.degree - other.degree, exps })
    }

    fn with_exp(&self, var: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        let old = std::mem::replace(&mut exps[var], e);
        Monomial { degree: self.degree - old + e, exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct RingData<D> {
    domain: D,
    vars: Vec<String>,
}

/// Ring context: coefficient domain plus ordered variable names. Cheap to clone.
pub struct PolyRing<D: Domain>(Arc<RingData<D>>);

impl<D: Domain> Clone for PolyRing<D> {
    fn clone(&self) -> Self {
        PolyRing(Arc::clone(&self.0))
    }
}

impl<D: Domain> PartialEq for PolyRing<D> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.domain == other.0.domain && self.0.vars == other.0.vars)
    }
}

impl<D: Domain> fmt::Debug for PolyRing<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.0.domain, self.0.vars.join(", "))
    }
}

impl<D: Domain> PolyRing<D> {
    /// Panics on duplicate variable names.
    pub fn new<S: AsRef<str>>(domain: D, vars: &[S]) -> Self {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            assert!(!vars[..i].contains(v), "duplicate variable `{v}`");
        }
        PolyRing(Arc::new(RingData { domain, vars }))
    }

    pub fn domain(&self) -> &D {
        &self.0.domain
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.0
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.0.vars.iter().any(|v| v == name)
    }

    pub fn zero(&self) -> MultiPoly<D> {
        MultiPoly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> MultiPoly<D> {
        self.constant(self.domain().one())
    }

    pub fn constant(&self, c: D::Elem) -> MultiPoly<D> {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn int(&self, n: i64) -> MultiPoly<D> {
        self.constant(self.domain().from_i64(n))
    }

    pub fn term(&self, m: Monomial, c: D::Elem) -> MultiPoly<D> {
        debug_assert_eq!(m.exps.len(), self.nvars());
        let mut terms = BTreeMap::new();
        if !self.domain().is_zero(&c) {
            terms.insert(m, c);
        }
        MultiPoly { ring: self.clone(), terms }
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly<D>> {
        let i = self.var_index(name)?;
        Ok(self.var_pow(i, 1))
    }

    pub fn var_pow(&self, index: usize, e: u32) -> MultiPoly<D> {
        let mut exps = vec![0; self.nvars()];
        exps[index] = e;
        self.term(Monomial::new(exps), self.domain().one())
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(&self, terms: I) -> MultiPoly<D>
    where
        I: IntoIterator<Item = (Vec<u32>, D::Elem)>,
    {
        let d = self.domain();
        let mut map: BTreeMap<Monomial, D::Elem> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), self.nvars(), "exponent vector arity");
            map.entry(Monomial::new(exps))
                .and_modify(|acc| d.add_assign(acc, &c))
                .or_insert(c);
        }
        map.retain(|_, c| !d.is_zero(c));
        MultiPoly { ring: self.clone(), terms: map }
    }

    /// Same domain with different variables.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> PolyRing<D> {
        PolyRing::new(self.domain().clone(), vars)
    }

    /// Same variables over a different domain.
    pub fn with_domain<D2: Domain>(&self, domain: D2) -> PolyRing<D2> {
        PolyRing::new(domain, self.vars())
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly<D>> {
        text::parse(self, text)
    }
}

/// A value substituted for a variable.
#[derive(Clone, Debug)]
pub enum Value<D: Domain> {
    Scalar(D::Elem),
    Poly(MultiPoly<D>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub struct MultiPoly<D: Domain> {
    ring: PolyRing<D>,
    terms: BTreeMap<Monomial, D::Elem>,
}

impl<D: Domain> Clone for MultiPoly<D> {
    fn clone(&self) -> Self {
        MultiPoly { ring: self.ring.clone(), terms: self.terms.clone() }
    }
}

impl<D: Domain> PartialEq for MultiPoly<D> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<D: Domain> Eq for MultiPoly<D> {}

impl<D: Domain> Hash for MultiPoly<D> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<D: Domain> fmt::Debug for MultiPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

/// Applies a ring operation, checking that both operands share a context.
pub fn arith<D: Domain>(a: &MultiPoly<D>, b: &MultiPoly<D>, op: ArithOp) -> Result<MultiPoly<D>> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

impl<D: Domain> MultiPoly<D> {
    pub fn ring(&self) -> &PolyRing<D> {
        &self.ring
    }

    pub fn domain(&self) -> &D {
        self.ring.domain()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value if the polynomial has no variable part.
    pub fn constant_value(&self) -> Option<D::Elem> {
        match self.terms.len() {
            0 => Some(self.domain().zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &D::Elem)> + '_ {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &D::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exps: &[u32]) -> D::Elem {
        self.terms
            .get(&Monomial::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.domain().zero())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn combine(&self, other: &Self, negate: bool) -> MultiPoly<D> {
        let d = self.domain();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if negate { d.neg(c) } else { c.clone() };
            match terms.get_mut(m) {
                Some(acc) => {
                    d.add_assign(acc, &c);
                    if d.is_zero(acc) {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c);
                }
            }
        }
        MultiPoly { ring: self.ring.clone(), terms }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.combine(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.domain();
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = small.terms.iter().next().expect("one term");
            return large.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, D::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let c = d.mul(ca, cb);
                acc.entry(ma.mul(mb))
                    .and_modify(|x| d.add_assign(x, &c))
                    .or_insert(c);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !d.is_zero(c)).collect();
        MultiPoly { ring: self.ring.clone(), terms }
    }

    /// Multiplies by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &D::Elem) -> Self {
        let d = self.domain();
        let terms = self
            .terms
            .iter()
            .filter_map(|(mm, cc)| {
                let p = d.mul(cc, c);
                (!d.is_zero(&p)).then(|| (mm.mul(m), p))
            })
            .collect();
        MultiPoly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &D::Elem) -> Self {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn neg(&self) -> Self {
        let d = self.domain();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), d.neg(c))).collect();
        MultiPoly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.total_degree())
    }

    /// Degree in the variable at `index`; `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps[index]).max()
    }

    pub fn degree(&self, var: &str) -> Result<Option<u32>> {
        Ok(self.degree_in(self.ring.var_index(var)?))
    }

    /// Indices of variables that occur with positive exponent.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exps[i] > 0))
            .collect()
    }

    /// Coefficients with respect to one variable: entry `i` multiplies `v^i`.
    pub fn coefficients_in(&self, index: usize) -> Vec<MultiPoly<D>> {
        let deg = self.degree_in(index).unwrap_or(0) as usize;
        let mut out: Vec<BTreeMap<Monomial, D::Elem>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exps[index] as usize].insert(m.with_exp(index, 0), c.clone());
        }
        out.into_iter()
            .map(|terms| MultiPoly { ring: self.ring.clone(), terms })
            .collect()
    }

    /// Substitutes values for variables. Unassigned variables are kept.
    pub fn eval(&self, assignment: &[(&str, Value<D>)]) -> Result<MultiPoly<D>> {
        let d = self.domain();
        let n = self.ring.nvars();
        let mut scalars: Vec<Option<&D::Elem>> = vec![None; n];
        let mut polys: Vec<Option<&MultiPoly<D>>> = vec![None; n];
        for (name, value) in assignment {
            let i = self.ring.var_index(name)?;
            match value {
                Value::Scalar(c) => scalars[i] = Some(c),
                Value::Poly(p) => {
                    self.check_ring(p)?;
                    polys[i] = Some(p);
                }
            }
        }
        let mut power_cache: HashMap<(usize, u32), MultiPoly<D>> = HashMap::new();
        let mut result: BTreeMap<Monomial, D::Elem> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exps.clone();
            for (i, s) in scalars.iter().enumerate() {
                if let Some(s) = s {
                    if exps[i] > 0 {
                        coeff = d.mul(&coeff, &d.pow(s, exps[i] as u64));
                        exps[i] = 0;
                    }
                }
            }
            if d.is_zero(&coeff) {
                continue;
            }
            let mut poly_exps = Vec::new();
            for (i, p) in polys.iter().enumerate() {
                if let Some(p) = p {
                    if exps[i] > 0 {
                        poly_exps.push((i, exps[i], *p));
                        exps[i] = 0;
                    }
                }
            }
            let mut term = self.ring.term(Monomial::new(exps), coeff);
            for (i, e, p) in poly_exps {
                let pw = power_cache.entry((i, e)).or_insert_with(|| p.pow(e));
                term = term.mul_unchecked(pw);
            }
            for (mm, cc) in term.terms {
                match result.get_mut(&mm) {
                    Some(acc) => {
                        d.add_assign(acc, &cc);
                        if d.is_zero(acc) {
                            result.remove(&mm);
                        }
                    }
                    None => {
                        result.insert(mm, cc);
                    }
                }
            }
        }
        Ok(MultiPoly { ring: self.ring.clone(), terms: result })
    }

    /// Evaluates at a full assignment given in ring variable order.
    pub fn eval_all(&self, values: &[D::Elem]) -> D::Elem {
        assert_eq!(values.len(), self.ring.nvars());
        let d = self.domain();
        let mut acc = d.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = d.mul(&t, &d.pow(&values[i], e as u64));
                }
            }
            d.add_assign(&mut acc, &t);
        }
        acc
    }

    /// Exact quotient `self / divisor`; fails when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_ring(divisor)?;
        let d = self.domain();
        let Some((lm_b, lc_b)) = divisor.leading_term() else {
            return Err(Error::Undefined("division by the zero polynomial".into()));
        };
        if self.is_zero() {
            return Ok(self.ring.zero());
        }
        for i in 0..self.ring.nvars() {
            if divisor.degree_in(i) > self.degree_in(i) {
                return Err(Error::NotDivisible);
            }
        }
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Monomial, D::Elem> = BTreeMap::new();
        while let Some((lm_r, lc_r)) = rem.iter().next_back() {
            let m = lm_r.div(lm_b).ok_or(Error::NotDivisible)?;
            let c = d.div_exact(lc_r, lc_b).ok_or(Error::NotDivisible)?;
            for (mb, cb) in &divisor.terms {
                let key = m.mul(mb);
                let delta = d.mul(&c, cb);
                match rem.get_mut(&key) {
                    Some(acc) => {
                        *acc = d.sub(acc, &delta);
                        if d.is_zero(acc) {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, d.neg(&delta));
                    }
                }
            }
            quot.insert(m, c);
        }
        Ok(MultiPoly { ring: self.ring.clone(), terms: quot })
    }

    pub fn derivative(&self, var: &str) -> Result<Self> {
        let i = self.ring.var_index(var)?;
        Ok(self.derivative_at(i))
    }

    pub fn derivative_at(&self, index: usize) -> Self {
        let d = self.domain();
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exps[index];
                if e == 0 {
                    return None;
                }
                let nc = d.mul(c, &d.from_i64(e as i64));
                (!d.is_zero(&nc)).then(|| (m.with_exp(index, e - 1), nc))
            })
            .collect();
        MultiPoly { ring: self.ring.clone(), terms }
    }

    /// Moves the polynomial into `target`, matching variables by name and
    /// mapping each coefficient through `f`.
    pub fn map_into<D2: Domain>(
        &self,
        target: &PolyRing<D2>,
        f: impl Fn(&D::Elem) -> D2::Elem,
    ) -> Result<MultiPoly<D2>> {
        let mut index_map = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars().iter().enumerate() {
            match target.var_index(v) {
                Ok(j) => index_map.push(Some(j)),
                Err(e) => {
                    if self.degree_in(i).unwrap_or(0) > 0 {
                        return Err(e);
                    }
                    index_map.push(None);
                }
            }
        }
        let d2 = target.domain();
        let mut terms: BTreeMap<Monomial, D2::Elem> = BTreeMap::new();
        for (m, c) in &self.terms {
            let c2 = f(c);
            if d2.is_zero(&c2) {
                continue;
            }
            let mut exps = vec![0; target.nvars()];
            for (i, &e) in m.exps.iter().enumerate() {
                if let Some(j) = index_map[i] {
                    exps[j] = e;
                }
            }
            let key = Monomial::new(exps);
            match terms.get_mut(&key) {
                Some(acc) => {
                    d2.add_assign(acc, &c2);
                    if d2.is_zero(acc) {
                        terms.remove(&key);
                    }
                }
                None => {
                    terms.insert(key, c2);
                }
            }
        }
        Ok(MultiPoly { ring: target.clone(), terms })
    }

    /// Same-domain move into a ring that names every used variable.
    pub fn embed(&self, target: &PolyRing<D>) -> Result<MultiPoly<D>> {
        self.map_into(target, |c| c.clone())
    }

    /// Dense view in `var`; fails if any other variable occurs.
    pub fn to_univariate(&self, var: &str) -> Result<UniPoly<D>> {
        let i = self.ring.var_index(var)?;
        if self.vars_used().iter().any(|&j| j != i) {
            return Err(Error::Undefined(format!("polynomial is not univariate in `{var}`")));
        }
        let coeffs = self
            .coefficients_in(i)
            .into_iter()
            .map(|c| c.constant_value().expect("constant coefficient"))
            .collect();
        Ok(UniPoly::new(self.domain().clone(), coeffs))
    }

    pub fn from_univariate(ring: &PolyRing<D>, var: &str, p: &UniPoly<D>) -> Result<Self> {
        let i = ring.var_index(var)?;
        Ok(ring.from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            let mut exps = vec![0; ring.nvars()];
            exps[i] = k as u32;
            (exps, c.clone())
        })))
    }
}

impl<D: GcdDomain> MultiPoly<D> {
    /// Gcd of two polynomials univariate in `var`, see [`UniPoly::gcd`].
    pub fn univariate_gcd(&self, other: &Self, var: &str) -> Result<Self> {
        self.check_ring(other)?;
        let g = self.to_univariate(var)?.gcd(&other.to_univariate(var)?)?;
        Self::from_univariate(&self.ring, var, &g)
    }
}

/// Free-function form of [`MultiPoly::univariate_gcd`].
pub fn univariate_gcd<D: GcdDomain>(a: &MultiPoly<D>, b: &MultiPoly<D>, var: &str) -> Result<MultiPoly<D>> {
    a.univariate_gcd(b, var)
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<D: Domain> $tr<&MultiPoly<D>> for &MultiPoly<D> {
            type Output = MultiPoly<D>;
            /// Panics when the operands live in different rings; use the
            /// `try_*` methods to get an error instead.
            fn $method(self, rhs: &MultiPoly<D>) -> MultiPoly<D> {
                self.$try(rhs).expect("ring context mismatch")
            }
        }
        impl<D: Domain> $tr<MultiPoly<D>> for MultiPoly<D> {
            type Output = MultiPoly<D>;
            fn $method(self, rhs: MultiPoly<D>) -> MultiPoly<D> {
                (&self).$method(&rhs)
            }
        }
        impl<D: Domain> $tr<&MultiPoly<D>> for MultiPoly<D> {
            type Output = MultiPoly<D>;
            fn $method(self, rhs: &MultiPoly<D>) -> MultiPoly<D> {
                (&self).$method(rhs)
            }
        }
        impl<D: Domain> $tr<MultiPoly<D>> for &MultiPoly<D> {
            type Output = MultiPoly<D>;
            fn $method(self, rhs: MultiPoly<D>) -> MultiPoly<D> {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);

impl<D: Domain> Neg for &MultiPoly<D> {
    type Output = MultiPoly<D>;
    fn neg(self) -> MultiPoly<D> {
        MultiPoly::neg(self)
    }
}

impl<D: Domain> Neg for MultiPoly<D> {
    type Output = MultiPoly<D>;
    fn neg(self) -> MultiPoly<D> {
        MultiPoly::neg(&self)
    }
}

/// Polynomials over `D` form a domain themselves, so matrices and
/// determinants can be taken with polynomial entries.
impl<D: Domain> Domain for PolyRing<D> {
    type Elem = MultiPoly<D>;

    fn zero(&self) -> MultiPoly<D> {
        PolyRing::zero(self)
    }
    fn one(&self) -> MultiPoly<D> {
        PolyRing::one(self)
    }
    fn is_zero(&self, a: &MultiPoly<D>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MultiPoly<D>, b: &MultiPoly<D>) -> MultiPoly<D> {
        a + b
    }
    fn sub(&self, a: &MultiPoly<D>, b: &MultiPoly<D>) -> MultiPoly<D> {
        a - b
    }
    fn mul(&self, a: &MultiPoly<D>, b: &MultiPoly<D>) -> MultiPoly<D> {
        a * b
    }
    fn neg(&self, a: &MultiPoly<D>) -> MultiPoly<D> {
        a.neg()
    }
    fn from_i64(&self, n: i64) -> MultiPoly<D> {
        self.int(n)
    }
    fn from_bigint(&self, n: &num_bigint::BigInt) -> MultiPoly<D> {
        self.constant(self.domain().from_bigint(n))
    }
    fn characteristic(&self) -> u64 {
        self.domain().characteristic()
    }
    fn is_field(&self) -> bool {
        false
    }
    fn inv(&self, a: &MultiPoly<D>) -> Option<MultiPoly<D>> {
        a.constant_value()
            .and_then(|c| self.domain().inv(&c))
            .map(|c| self.constant(c))
    }
    fn div_exact(&self, a: &MultiPoly<D>, b: &MultiPoly<D>) -> Option<MultiPoly<D>> {
        a.exact_div(b).ok()
    }
    fn pow(&self, a: &MultiPoly<D>, e: u64) -> MultiPoly<D> {
        a.pow(u32::try_from(e).expect("exponent fits in u32"))
    }
    fn size_hint(&self, a: &MultiPoly<D>) -> usize {
        a.num_terms()
    }
    fn fmt_elem(&self, a: &MultiPoly<D>) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Option<MultiPoly<D>> {
        self.parse(s).ok()
    }
}

#[cfg(test)]
mod tests;
