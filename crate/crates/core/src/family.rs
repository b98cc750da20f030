//! The weighted elliptic K3 family
//! `f = z^2 + y^3 + g2(x, w; t) y + g3(x, w; t)` on `P(6, 14, 21, 1)`,
//! and everything derived from it: `h = 4 g2^3 + 27 g3^2`, the discriminant
//! `k(t)` of `h` in `u = x / w^6`, the resultant `r(t) = Res_u(g2, g3)` and the
//! quotient `k / r^3`.
//!
//! Parameters are carried as polynomials in a coefficient ring, so the same
//! code handles numeric points (a ring without variables) and symbolic slices.

use rand::Rng;
use serde_json::{Map, Value as Json};

use crate::domain::{Domain, PrimeField};
use crate::elimination::{self, ModularBackend, Strategy};
use crate::error::{Error, Result};
use crate::poly::univariate::{RootFinding, Valuation};
use crate::poly::{MultiPoly, PolyRing, UniPoly, Value};

pub use crate::grading::{param_name, WEIGHTS};

/// Weights whose parameter enters `g2`, from `u^4` down to `u^0`.
const G2_WEIGHTS: [u32; 5] = [4, 10, 16, 22, 28];
/// Weights whose parameter enters `g3`, from `u^5` down to `u^0`.
const G3_WEIGHTS: [u32; 6] = [12, 18, 24, 30, 36, 42];

/// Slices small enough for fully symbolic `k`.
pub const DEFAULT_SLICES: [&[u32]; 3] = [&[4, 42], &[4, 28, 42], &[10, 36]];

fn weight_index(w: u32) -> Result<usize> {
    WEIGHTS
        .iter()
        .position(|&x| x == w)
        .ok_or_else(|| Error::UnknownVariable(param_name(w)))
}

/// A parameter vector `t = (t4, ..., t42)` with entries in a coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyPoint<D: Domain> {
    ring: PolyRing<D>,
    values: Vec<MultiPoly<D>>,
}

impl<D: Domain> FamilyPoint<D> {
    /// Fails unless there are 11 entries, not all zero.
    pub fn new(ring: PolyRing<D>, values: Vec<MultiPoly<D>>) -> Result<Self> {
        if values.len() != WEIGHTS.len() {
            return Err(Error::Undefined(format!("expected 11 parameters, got {}", values.len())));
        }
        if values.iter().any(|v| v.ring() != &ring) {
            return Err(Error::ContextMismatch);
        }
        if values.iter().all(MultiPoly::is_zero) {
            return Err(Error::Undefined("the zero parameter vector is excluded".into()));
        }
        Ok(FamilyPoint { ring, values })
    }

    pub fn numeric(domain: D, values: &[D::Elem]) -> Result<Self> {
        let ring = PolyRing::new(domain, &[] as &[&str]);
        let values = values.iter().map(|c| ring.constant(c.clone())).collect();
        Self::new(ring, values)
    }

    /// Every parameter a variable of its own.
    pub fn symbolic(domain: D) -> Self {
        Self::slice(domain, &WEIGHTS).expect("all weights are valid")
    }

    /// Parameters of the listed weights are variables, the rest are zero.
    pub fn slice(domain: D, active: &[u32]) -> Result<Self> {
        for &w in active {
            weight_index(w)?;
        }
        let names: Vec<String> = WEIGHTS.iter().filter(|w| active.contains(w)).map(|&w| param_name(w)).collect();
        let ring = PolyRing::new(domain, &names);
        let values = WEIGHTS
            .iter()
            .map(|&w| if active.contains(&w) { ring.var(&param_name(w)).expect("declared") } else { ring.zero() })
            .collect();
        Self::new(ring, values)
    }

    pub fn ring(&self) -> &PolyRing<D> {
        &self.ring
    }

    pub fn values(&self) -> &[MultiPoly<D>] {
        &self.values
    }

    pub fn get(&self, weight: u32) -> Result<&MultiPoly<D>> {
        Ok(&self.values[weight_index(weight)?])
    }

    /// Scalar entries when the point is numeric.
    pub fn scalars(&self) -> Option<Vec<D::Elem>> {
        self.values.iter().map(MultiPoly::constant_value).collect()
    }

    pub fn to_json(&self) -> Json {
        let mut map = Map::new();
        for (w, v) in WEIGHTS.iter().zip(&self.values) {
            map.insert(param_name(*w), Json::String(v.to_string()));
        }
        Json::Object(map)
    }
}

impl<D: Domain> FamilyPoint<D> {
    /// Reads `{"t4": "3", "t10": -1, ...}`; absent keys are zero.
    pub fn from_json(domain: D, json: &Json) -> Result<Self> {
        let obj = json
            .as_object()
            .ok_or_else(|| Error::Parse { pos: 0, msg: "expected a JSON object".into() })?;
        let mut values = vec![domain.zero(); WEIGHTS.len()];
        for (key, v) in obj {
            let w: u32 = key
                .strip_prefix('t')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::UnknownVariable(key.clone()))?;
            let text = match v {
                Json::String(s) => s.clone(),
                Json::Number(n) => n.to_string(),
                _ => return Err(Error::Parse { pos: 0, msg: format!("`{key}` must be a number or string") }),
            };
            values[weight_index(w)?] = domain
                .parse_elem(text.trim())
                .ok_or_else(|| Error::Parse { pos: 0, msg: format!("bad value `{text}` for `{key}`") })?;
        }
        Self::numeric(domain, &values)
    }
}

impl FamilyPoint<PrimeField> {
    pub fn random<R: Rng>(field: PrimeField, rng: &mut R) -> Self {
        loop {
            let v: Vec<u64> = (0..WEIGHTS.len()).map(|_| rng.random_range(0..field.modulus())).collect();
            if let Ok(p) = Self::numeric(field, &v) {
                return p;
            }
        }
    }
}

/// `g2` coefficients, lowest power of `u` first: `[t28, t22, t16, t10, t4]`.
pub fn g2_coeffs<E: Clone>(t: &[E]) -> Vec<E> {
    G2_WEIGHTS.iter().rev().map(|&w| t[weight_index(w).expect("known")].clone()).collect()
}

/// `g3` coefficients, lowest power first: `[t42, t36, t30, t24, t18, t12, 0, 1]`.
pub fn g3_coeffs<D: Domain>(d: &D, t: &[D::Elem]) -> Vec<D::Elem> {
    let mut c: Vec<D::Elem> = G3_WEIGHTS.iter().rev().map(|&w| t[weight_index(w).expect("known")].clone()).collect();
    c.push(d.zero());
    c.push(d.one());
    c
}

/// Dense `h = 4 g2^3 + 27 g3^2` in `u` over any domain.
pub fn h_uni<D: Domain>(d: &D, t: &[D::Elem]) -> UniPoly<D> {
    let g2 = UniPoly::new(d.clone(), g2_coeffs(t));
    let g3 = UniPoly::new(d.clone(), g3_coeffs(d, t));
    g2.pow(3).scale(&d.from_i64(4)).add(&g3.pow(2).scale(&d.from_i64(27)))
}

/// `r(t)` as the determinant of the 11 x 11 Sylvester matrix of the forms of
/// degrees 4 and 7.
pub fn r_value<D: Domain>(d: &D, t: &[D::Elem]) -> Result<D::Elem> {
    let m = elimination::sylvester_dense(d, &g2_coeffs(t), &g3_coeffs(d, t), 4, 7);
    if d.is_field() {
        m.det_field()
    } else {
        m.det_bareiss()
    }
}

/// `k(t)`, the discriminant of `h` as a form of degree 14.
pub fn k_value<D: Domain>(d: &D, t: &[D::Elem]) -> Result<D::Elem> {
    elimination::discriminant_dense(d, h_uni(d, t).coeffs(), 14)
}

/// Homogeneous objects in `(x, y, z, w)` over the point's coefficient ring.
#[derive(Debug, Clone)]
pub struct Family<D: Domain> {
    pub f: MultiPoly<D>,
    pub g2: MultiPoly<D>,
    pub g3: MultiPoly<D>,
}

impl<D: Domain> Family<D> {
    pub fn ring(&self) -> &PolyRing<D> {
        self.f.ring()
    }

    /// `4 g2^3 + 27 g3^2`, of degree 84 in `(x, w)`.
    pub fn h(&self) -> MultiPoly<D> {
        let r = self.ring();
        self.g2.pow(3) * r.int(4) + self.g3.pow(2) * r.int(27)
    }
}

pub(crate) fn extend_ring<D: Domain>(ring: &PolyRing<D>, extra: &[&str]) -> PolyRing<D> {
    let mut vars: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
    vars.extend_from_slice(extra);
    ring.with_vars(&vars)
}

/// `f`, `g2`, `g3` as homogeneous forms.
pub fn build_family<D: Domain>(t: &FamilyPoint<D>) -> Family<D> {
    let ring = extend_ring(&t.ring, &["x", "y", "z", "w"]);
    let lift = |p: &MultiPoly<D>| p.embed(&ring).expect("extension of the parameter ring");
    let var = |n: &str| ring.var(n).expect("declared");
    let (x, y, z, w) = (var("x"), var("y"), var("z"), var("w"));
    let mut g2 = ring.zero();
    for (k, &wt) in G2_WEIGHTS.iter().enumerate() {
        g2 = g2 + lift(t.get(wt).expect("known")) * x.pow(4 - k as u32) * w.pow(wt);
    }
    let mut g3 = x.pow(7);
    for (k, &wt) in G3_WEIGHTS.iter().enumerate() {
        g3 = g3 + lift(t.get(wt).expect("known")) * x.pow(5 - k as u32) * w.pow(wt);
    }
    let f = z.pow(2) + y.pow(3) + &g2 * &y + &g3;
    Family { f, g2, g3 }
}

/// `g2`, `g3` in the affine base coordinate `u = x / w^6`.
#[derive(Debug, Clone)]
pub struct WeierstrassData<D: Domain> {
    pub g2: MultiPoly<D>,
    pub g3: MultiPoly<D>,
    base: String,
}

impl<D: Domain> WeierstrassData<D> {
    pub fn new(g2: MultiPoly<D>, g3: MultiPoly<D>, base: &str) -> Result<Self> {
        if g2.ring() != g3.ring() {
            return Err(Error::ContextMismatch);
        }
        g2.ring().var_index(base)?;
        Ok(WeierstrassData { g2, g3, base: base.to_string() })
    }

    pub fn ring(&self) -> &PolyRing<D> {
        self.g2.ring()
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn h(&self) -> MultiPoly<D> {
        let r = self.ring();
        self.g2.pow(3) * r.int(4) + self.g3.pow(2) * r.int(27)
    }

    /// Dense forms of `(g2, g3, h)`; only for scalar coefficients.
    pub fn univariate(&self) -> Result<(UniPoly<D>, UniPoly<D>, UniPoly<D>)> {
        Ok((
            self.g2.to_univariate(&self.base)?,
            self.g3.to_univariate(&self.base)?,
            self.h().to_univariate(&self.base)?,
        ))
    }

    /// Orders of `(g2, g3, h)` at `u = u0`.
    pub fn orders_at(&self, u0: &D::Elem) -> Result<(Valuation, Valuation, Valuation)> {
        let (g2, g3, h) = self.univariate()?;
        Ok((g2.order_at(u0), g3.order_at(u0), h.order_at(u0)))
    }

    /// Orders at `w = 0` on the model with `g2, g3, h` of degrees 8, 12, 24 in `u`.
    pub fn orders_at_infinity(&self) -> Result<(Valuation, Valuation, Valuation)> {
        let (g2, g3, h) = self.univariate()?;
        Ok((g2.order_at_infinity(8), g3.order_at_infinity(12), h.order_at_infinity(24)))
    }
}

/// The Weierstrass data in `u` over the point's coefficient ring.
pub fn weierstrass<D: Domain>(t: &FamilyPoint<D>) -> WeierstrassData<D> {
    let ring = extend_ring(&t.ring, &["u"]);
    let coeffs: Vec<MultiPoly<D>> = t.values.iter().map(|v| v.embed(&ring).expect("extension")).collect();
    let u_index = ring.var_index("u").expect("declared");
    let build = |cs: Vec<MultiPoly<D>>| {
        cs.iter().enumerate().fold(ring.zero(), |acc, (k, c)| acc + c * &ring.var_pow(u_index, k as u32))
    };
    let g2 = build(g2_coeffs(&coeffs));
    let g3 = build(g3_coeffs(&ring, &coeffs));
    WeierstrassData { g2, g3, base: "u".into() }
}

/// Sets `w = 1` and renames `x` to `u` in a form on `(x, w)`.
pub fn dehomogenize<D: Domain>(p: &MultiPoly<D>) -> Result<MultiPoly<D>> {
    let ring = p.ring();
    let (xi, wi) = (ring.var_index("x")?, ring.var_index("w")?);
    for n in ["y", "z"] {
        if ring.has_var(n) && p.degree(n)?.unwrap_or(0) > 0 {
            return Err(Error::Undefined(format!("form involves `{n}`")));
        }
    }
    let keep: Vec<usize> = (0..ring.nvars())
        .filter(|&i| i != wi && !["y", "z"].contains(&ring.vars()[i].as_str()))
        .collect();
    let names: Vec<&str> = keep.iter().map(|&i| if i == xi { "u" } else { ring.vars()[i].as_str() }).collect();
    let target = ring.with_vars(&names);
    Ok(target.from_terms(p.terms().map(|(m, c)| (keep.iter().map(|&i| m.exps()[i]).collect(), c.clone()))))
}

fn drop_base<D: Domain>(p: &MultiPoly<D>, ring: &PolyRing<D>) -> Result<MultiPoly<D>> {
    p.embed(ring)
}

/// `r(t) = Res_u(g2, g3)` with `g2` read as a quartic form.
pub fn compute_r<D: ModularBackend>(t: &FamilyPoint<D>, strategy: Strategy) -> Result<MultiPoly<D>> {
    let wd = weierstrass(t);
    let r = elimination::resultant_formal(&wd.g2, &wd.g3, "u", 4, 7, strategy)?;
    drop_base(&r, &t.ring)
}

/// `k(t) = disc_u(h)` with `h` of degree 14.
pub fn compute_k<D: ModularBackend>(t: &FamilyPoint<D>, strategy: Strategy) -> Result<MultiPoly<D>> {
    let wd = weierstrass(t);
    let h = wd.h();
    if h.degree("u")? != Some(14) {
        return Err(Error::Internal("h does not have degree 14 in u".into()));
    }
    let k = elimination::discriminant_formal(&h, "u", 14, strategy)?;
    drop_base(&k, &t.ring)
}

/// `k / r^3`; a remainder means the factorization claim fails on this restriction.
pub fn delta_t_on_restriction<D: Domain>(k: &MultiPoly<D>, r: &MultiPoly<D>) -> Result<MultiPoly<D>> {
    k.exact_div(&r.pow(3))
}

/// Univariate analogue of [`delta_t_on_restriction`].
pub fn delta_t_univariate<D: Domain>(k: &UniPoly<D>, r: &UniPoly<D>) -> Result<UniPoly<D>> {
    k.exact_div(&r.pow(3))
}

/// Point of the non-RDP locus for `[a : b]`:
/// `g2 = a (u - b)^4`, `g3 = (u - b)^6 (u + 6b)`.
pub fn nonrdp_param<D: Domain>(d: &D, a: &D::Elem, b: &D::Elem) -> Result<FamilyPoint<D>> {
    let bp = |e: u64| d.pow(b, e);
    let ab = |c: i64, e: u64| d.mul(&d.from_i64(c), &d.mul(a, &bp(e)));
    let b_only = |c: i64, e: u64| d.mul(&d.from_i64(c), &bp(e));
    let values = [
        a.clone(),
        ab(-4, 1),
        b_only(-21, 2),
        ab(6, 2),
        b_only(70, 3),
        ab(-4, 3),
        b_only(-105, 4),
        ab(1, 4),
        b_only(84, 5),
        b_only(-35, 6),
        b_only(6, 7),
    ];
    FamilyPoint::numeric(d.clone(), &values)
}

/// A place where `ord g2 >= 4` and `ord g3 >= 6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonRdpPoint<E> {
    pub u0: E,
    pub orders: (Valuation, Valuation),
}

/// All base points in the coefficient field with `ord g2 >= 4`, `ord g3 >= 6`.
/// Candidates are the roots of `gcd(g3, g3', g2)`.
pub fn detect_nonrdp<D: RootFinding>(wd: &WeierstrassData<D>) -> Result<Vec<NonRdpPoint<D::Elem>>> {
    let (g2, g3, _) = wd.univariate()?;
    let mut cand = g3.gcd(&g3.derivative())?;
    if !g2.is_zero() {
        cand = cand.gcd(&g2)?;
    }
    let d = g3.domain().clone();
    let mut out = Vec::new();
    for u0 in d.roots(&cand) {
        let orders = (g2.order_at(&u0), g3.order_at(&u0));
        if orders.0.at_least(4) && orders.1.at_least(6) {
            out.push(NonRdpPoint { u0, orders });
        }
    }
    Ok(out)
}

/// `f` at the three points `[0:-1:1:0]`, `[-1:0:1:0]`, `[1:-1:0:0]`, for
/// symbolic `t`. Each entry is true when `f` vanishes identically there.
pub fn generic_point_membership() -> [bool; 3] {
    let fam = build_family(&FamilyPoint::symbolic(crate::domain::IntegerRing));
    let pts: [[i64; 4]; 3] = [[0, -1, 1, 0], [-1, 0, 1, 0], [1, -1, 0, 0]];
    pts.map(|p| {
        let assign: Vec<(&str, Value<_>)> =
            ["x", "y", "z", "w"].iter().zip(p).map(|(n, v)| (*n, Value::Scalar(v.into()))).collect();
        fam.f.eval(&assign).expect("ambient variables").is_zero()
    })
}

/// Builds the parameter vector of a normalized pair `(g2, g3)` given by dense
/// coefficients; fails unless `deg g2 <= 4`, `g3` is monic of degree 7 with
/// vanishing `u^6` term.
pub fn point_from_weierstrass<D: Domain>(g2: &UniPoly<D>, g3: &UniPoly<D>) -> Result<FamilyPoint<D>> {
    let d = g2.domain();
    if g2.degree().unwrap_or(0) > 4 || g3.degree() != Some(7) || !d.is_one(&g3.coeff(7)) || !d.is_zero(&g3.coeff(6)) {
        return Err(Error::Undefined("pair is not in the normalized family form".into()));
    }
    let mut values = vec![d.zero(); WEIGHTS.len()];
    for (k, &w) in G2_WEIGHTS.iter().enumerate() {
        values[weight_index(w)?] = g2.coeff(4 - k);
    }
    for (k, &w) in G3_WEIGHTS.iter().enumerate() {
        values[weight_index(w)?] = g3.coeff(5 - k);
    }
    FamilyPoint::numeric(d.clone(), &values)
}

/// A point over `F_p` whose `h` has a double root `u0` with `g2(u0) = -3c^2`,
/// `g3(u0) = 2c^3`, `c != 0`, so that neither `g2` nor `g3` vanishes there.
/// Returns the point and `u0`.
pub fn construct_double_root<R: Rng>(field: PrimeField, rng: &mut R) -> (FamilyPoint<PrimeField>, u64) {
    let f = field;
    let p = f.modulus();
    loop {
        let base = FamilyPoint::random(f, rng);
        let mut t = base.scalars().expect("numeric");
        let u0 = rng.random_range(0..p);
        let c = rng.random_range(1..p);
        let idx = |w: u32| weight_index(w).expect("known");
        // g3'(u0) = -c g2'(u0); t36 enters g3' with coefficient 1 and g2' not at all
        t[idx(36)] = 0;
        let g2 = UniPoly::new(f, g2_coeffs(&t));
        let g3 = UniPoly::new(f, g3_coeffs(&f, &t));
        let want = f.neg(&f.mul(&c, &g2.derivative().eval(&u0)));
        t[idx(36)] = f.sub(&want, &g3.derivative().eval(&u0));
        // g2(u0) = -3c^2 and g3(u0) = 2c^3 through the constant terms
        t[idx(28)] = 0;
        t[idx(42)] = 0;
        let g2 = UniPoly::new(f, g2_coeffs(&t));
        let g3 = UniPoly::new(f, g3_coeffs(&f, &t));
        t[idx(28)] = f.sub(&f.mul(&f.from_i64(-3), &f.pow(&c, 2)), &g2.eval(&u0));
        t[idx(42)] = f.sub(&f.mul(&f.from_i64(2), &f.pow(&c, 3)), &g3.eval(&u0));
        let point = FamilyPoint::numeric(f, &t).expect("nonzero");
        let (_, _, h) = weierstrass(&point).orders_at(&u0).expect("numeric");
        if h == Valuation::Finite(2) {
            return (point, u0);
        }
    }
}

/// A point with `t28 = t42 = 0` and `t36 != 0`, so `g2` and `g3` both vanish
/// simply at `u = 0`.
pub fn construct_double_vanishing<R: Rng>(field: PrimeField, rng: &mut R) -> FamilyPoint<PrimeField> {
    loop {
        let mut t = FamilyPoint::random(field, rng).scalars().expect("numeric");
        t[weight_index(28).expect("known")] = 0;
        t[weight_index(42).expect("known")] = 0;
        if t[weight_index(36).expect("known")] != 0 {
            return FamilyPoint::numeric(field, &t).expect("nonzero");
        }
    }
}

/// `g2 = -3 c^2`, `g3 = c^3 (u - 3 c1)` for `c = (u - rho1)(u - rho2) = u^2 + c1 u + c0`.
/// Then `h = 27 c^6 (u - 3 c1 - 2)(u - 3 c1 + 2)` splits over the prime field,
/// with two fibers `I0*`, two `I1` and `II*` at infinity.
pub fn construct_split(field: PrimeField, rho1: i64, rho2: i64) -> Result<FamilyPoint<PrimeField>> {
    let f = field;
    let c = UniPoly::linear_root(f, &f.from_i64(rho1)).mul(&UniPoly::linear_root(f, &f.from_i64(rho2)));
    let c1 = c.coeff(1);
    let g2 = c.pow(2).scale(&f.from_i64(-3));
    let shift = f.mul(&f.from_i64(3), &c1);
    let g3 = c.pow(3).mul(&UniPoly::linear_root(f, &shift));
    point_from_weierstrass(&g2, &g3)
}
