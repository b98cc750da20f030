//! Sylvester matrices, resultants, discriminants and vanishing orders.

mod modular;

use rand::Rng;
use rayon::prelude::*;

use crate::domain::{Domain, IntegerRing, PrimeField};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::univariate::interpolate;
use crate::poly::{MultiPoly, PolyRing, UniPoly, Value};

pub use modular::{ModularBackend, ModularConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Single-step fraction-free elimination over the polynomial ring.
    #[default]
    FractionFree,
    /// Evaluation at points (and primes over Z or Q), then reconstruction.
    ModularInterp,
}

/// Banded Sylvester matrix of `p` and `q` with respect to one variable.
#[derive(Debug, Clone)]
pub struct SylvesterMatrix<D: Domain> {
    matrix: Matrix<PolyRing<D>>,
    p: MultiPoly<D>,
    q: MultiPoly<D>,
    var: String,
    degrees: (usize, usize),
}

impl<D: Domain> SylvesterMatrix<D> {
    pub fn matrix(&self) -> &Matrix<PolyRing<D>> {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    /// The (formal) degrees of `p` and `q` used to build the bands.
    pub fn degrees(&self) -> (usize, usize) {
        self.degrees
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn inputs(&self) -> (&MultiPoly<D>, &MultiPoly<D>) {
        (&self.p, &self.q)
    }

    pub fn determinant(&self, strategy: Strategy) -> Result<MultiPoly<D>>
    where
        D: ModularBackend,
    {
        match strategy {
            Strategy::FractionFree => self.matrix.det_bareiss(),
            Strategy::ModularInterp => D::det_modular(&self.matrix, &ModularConfig::default()),
        }
    }
}

/// Sylvester matrix from coefficient lists (lowest degree first) with
/// formal degrees `m` and `n`: `n` shifted rows of `p`, then `m` of `q`.
pub fn sylvester_dense<D: Domain>(domain: &D, p: &[D::Elem], q: &[D::Elem], m: usize, n: usize) -> Matrix<D> {
    let size = m + n;
    let mut mat = Matrix::zeros(domain.clone(), size, size);
    let coeff = |c: &[D::Elem], i: usize| c.get(i).cloned().unwrap_or_else(|| domain.zero());
    for row in 0..n {
        for k in 0..=m {
            mat.set(row, row + k, coeff(p, m - k));
        }
    }
    for row in 0..m {
        for k in 0..=n {
            mat.set(n + row, row + k, coeff(q, n - k));
        }
    }
    mat
}

/// Sylvester matrix using the actual degrees in `var`.
pub fn sylvester<D: Domain>(p: &MultiPoly<D>, q: &MultiPoly<D>, var: &str) -> Result<SylvesterMatrix<D>> {
    let i = p.ring().var_index(var)?;
    let (Some(m), Some(n)) = (p.degree_in(i), q.degree_in(i)) else {
        return Err(Error::Undefined("Sylvester matrix of the zero polynomial".into()));
    };
    if m == 0 && n == 0 {
        return Err(Error::Undefined(format!("both polynomials have degree 0 in `{var}`")));
    }
    sylvester_formal(p, q, var, m as usize, n as usize)
}

/// Sylvester matrix with formal degrees `m >= deg p`, `n >= deg q`.
pub fn sylvester_formal<D: Domain>(
    p: &MultiPoly<D>,
    q: &MultiPoly<D>,
    var: &str,
    m: usize,
    n: usize,
) -> Result<SylvesterMatrix<D>> {
    if p.ring() != q.ring() {
        return Err(Error::ContextMismatch);
    }
    let i = p.ring().var_index(var)?;
    if p.degree_in(i).unwrap_or(0) as usize > m || q.degree_in(i).unwrap_or(0) as usize > n {
        return Err(Error::Undefined("formal degree below the actual degree".into()));
    }
    if m + n == 0 {
        return Err(Error::Undefined(format!("both polynomials have degree 0 in `{var}`")));
    }
    let matrix = sylvester_dense(p.ring(), &p.coefficients_in(i), &q.coefficients_in(i), m, n);
    Ok(SylvesterMatrix { matrix, p: p.clone(), q: q.clone(), var: var.to_string(), degrees: (m, n) })
}

pub fn resultant<D: ModularBackend>(
    p: &MultiPoly<D>,
    q: &MultiPoly<D>,
    var: &str,
    strategy: Strategy,
) -> Result<MultiPoly<D>> {
    sylvester(p, q, var)?.determinant(strategy)
}

/// Resultant of the degree-`m` and degree-`n` forms defined by `p` and `q`.
pub fn resultant_formal<D: ModularBackend>(
    p: &MultiPoly<D>,
    q: &MultiPoly<D>,
    var: &str,
    m: usize,
    n: usize,
    strategy: Strategy,
) -> Result<MultiPoly<D>> {
    sylvester_formal(p, q, var, m, n)?.determinant(strategy)
}

fn sign_flip(n: usize) -> bool {
    (n * n.saturating_sub(1) / 2) % 2 == 1
}

/// Discriminant with respect to `var` at the actual degree:
/// `(-1)^(n(n-1)/2) * Res(p, p') / lc(p)`.
pub fn discriminant<D: ModularBackend>(p: &MultiPoly<D>, var: &str) -> Result<MultiPoly<D>> {
    let i = p.ring().var_index(var)?;
    let n = p.degree_in(i).unwrap_or(0) as usize;
    if n < 2 {
        return Err(Error::Undefined(format!("discriminant needs degree at least 2 in `{var}`")));
    }
    discriminant_formal(p, var, n, Strategy::FractionFree)
}

/// Discriminant of `p` read as a binary form of degree `n >= deg p`.
///
/// When the top coefficient vanishes identically the form has a root at
/// infinity, and `disc_n = a_(n-1)^2 * disc_(n-1)`.
pub fn discriminant_formal<D: ModularBackend>(
    p: &MultiPoly<D>,
    var: &str,
    n: usize,
    strategy: Strategy,
) -> Result<MultiPoly<D>> {
    let ring = p.ring();
    let i = ring.var_index(var)?;
    let coeffs = p.coefficients_in(i);
    if coeffs.len() > n + 1 {
        return Err(Error::Undefined("formal degree below the actual degree".into()));
    }
    if n <= 1 {
        return Ok(ring.one());
    }
    let top = coeffs.get(n).cloned().unwrap_or_else(|| ring.zero());
    if top.is_zero() {
        let next = coeffs.get(n - 1).cloned().unwrap_or_else(|| ring.zero());
        if next.is_zero() {
            return Ok(ring.zero());
        }
        return Ok(next.pow(2) * discriminant_formal(p, var, n - 1, strategy)?);
    }
    let dp = p.derivative_at(i);
    let res = resultant_formal(p, &dp, var, n, n - 1, strategy)?;
    let res = if sign_flip(n) { -res } else { res };
    res.exact_div(&top).map_err(|e| match e {
        Error::NotDivisible => Error::Internal("resultant not divisible by the leading coefficient".into()),
        other => other,
    })
}

/// Discriminant over a coefficient domain from a dense coefficient list.
pub fn discriminant_dense<D: Domain>(domain: &D, coeffs: &[D::Elem], n: usize) -> Result<D::Elem> {
    let d = domain;
    let c = |i: usize| coeffs.get(i).cloned().unwrap_or_else(|| d.zero());
    if coeffs.iter().skip(n + 1).any(|x| !d.is_zero(x)) {
        return Err(Error::Undefined("formal degree below the actual degree".into()));
    }
    if n <= 1 {
        return Ok(d.one());
    }
    let top = c(n);
    if d.is_zero(&top) {
        let next = c(n - 1);
        if d.is_zero(&next) {
            return Ok(d.zero());
        }
        let rest = discriminant_dense(d, coeffs, n - 1)?;
        return Ok(d.mul(&d.mul(&next, &next), &rest));
    }
    let deriv: Vec<D::Elem> = (1..=n).map(|k| d.mul(&c(k), &d.from_i64(k as i64))).collect();
    let mat = sylvester_dense(d, coeffs, &deriv, n, n - 1);
    let res = if d.is_field() { mat.det_field()? } else { mat.det_bareiss()? };
    let res = if sign_flip(n) { d.neg(&res) } else { res };
    d.div_exact(&res, &top)
        .ok_or_else(|| Error::Internal("resultant not divisible by the leading coefficient".into()))
}

/// Largest `e` with `along^e` dividing `p`.
pub fn vanishing_order<D: Domain>(p: &MultiPoly<D>, along: &MultiPoly<D>) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if along.is_constant() {
        return Err(Error::Undefined("vanishing order along a constant".into()));
    }
    let mut cur = p.clone();
    let mut e = 0;
    loop {
        match cur.exact_div(along) {
            Ok(q) => {
                cur = q;
                e += 1;
            }
            Err(Error::NotDivisible) => return Ok(e),
            Err(other) => return Err(other),
        }
    }
}

/// Recovers a univariate polynomial of degree at most `degree_bound` over
/// `F_p` from its values at the consecutive nodes `0, 1, ..., degree_bound`.
pub fn interp_univariate<F>(eval: F, degree_bound: usize, field: PrimeField) -> Result<UniPoly<PrimeField>>
where
    F: Fn(u64) -> u64 + Sync,
{
    let nodes: Vec<u64> = (0..=degree_bound as u64).map(|s| s % field.modulus()).collect();
    let values: Vec<u64> = nodes.par_iter().map(|&s| eval(s)).collect();
    interpolate(&field, &nodes, &values)
}

/// Certifies that `a` and `b` share no nonconstant factor.
///
/// For each variable `v` of `b`, the other variables are set to random values
/// mod `p` that keep both degrees in `v`; a common factor involving `v` would
/// survive as a nontrivial univariate gcd. `Ok(false)` means no certificate
/// was found within `tries` attempts per variable, not that a factor exists.
pub fn coprime_certificate<R: Rng>(
    a: &MultiPoly<IntegerRing>,
    b: &MultiPoly<IntegerRing>,
    field: PrimeField,
    tries: usize,
    rng: &mut R,
) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::ContextMismatch);
    }
    let ring = a.ring().with_domain(field);
    let (fa, fb) = (a.map_into(&ring, |c| field.from_bigint(c))?, b.map_into(&ring, |c| field.from_bigint(c))?);
    let names = ring.vars();
    'vars: for v in b.vars_used() {
        let (da, db) = (fa.degree_in(v).unwrap_or(0), fb.degree_in(v).unwrap_or(0));
        if da == 0 {
            continue;
        }
        for _ in 0..tries {
            let subs: Vec<(&str, Value<PrimeField>)> = (0..names.len())
                .filter(|&i| i != v)
                .map(|i| (names[i].as_str(), Value::Scalar(rng.random_range(0..field.modulus()))))
                .collect();
            let (sa, sb) = (fa.eval(&subs)?, fb.eval(&subs)?);
            if sa.degree_in(v).unwrap_or(0) != da || sb.degree_in(v).unwrap_or(0) != db {
                continue;
            }
            let g = sa.to_univariate(&names[v])?.gcd(&sb.to_univariate(&names[v])?)?;
            if g.degree() == Some(0) {
                continue 'vars;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
