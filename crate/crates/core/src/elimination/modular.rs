//! Determinants of polynomial matrices by evaluation and interpolation.
//!
//! Over `F_p` the determinant is interpolated one variable at a time at
//! consecutive integer nodes. Over `Z` the same is done modulo 62-bit primes
//! and the images are combined by Chinese remaindering; over `Q` each row is
//! first cleared of denominators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::domain::{Domain, IntegerRing, PrimeField, RationalField};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::modular::{self, Crt};
use crate::poly::univariate::interpolate;
use crate::poly::{Monomial, MultiPoly, PolyRing, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularConfig {
    /// Cap on scalar determinants per prime.
    pub max_points: usize,
    /// Cap on primes used for integer reconstruction.
    pub max_primes: usize,
}

impl Default for ModularConfig {
    fn default() -> Self {
        ModularConfig { max_points: 1 << 22, max_primes: 64 }
    }
}

/// Coefficient domains whose polynomial determinants can be reconstructed
/// from modular images.
pub trait ModularBackend: Domain {
    fn det_modular(m: &Matrix<PolyRing<Self>>, cfg: &ModularConfig) -> Result<MultiPoly<Self>>;
}

/// Per-variable degree bound of the determinant: the smaller of the row-wise
/// and column-wise sums of maximal entry degrees.
fn degree_bound<D: Domain>(m: &Matrix<PolyRing<D>>, var: usize) -> usize {
    let n = m.nrows();
    let deg = |i: usize, j: usize| m.get(i, j).degree_in(var).unwrap_or(0) as usize;
    let rows: usize = (0..n).map(|i| (0..n).map(|j| deg(i, j)).max().unwrap_or(0)).sum();
    let cols: usize = (0..n).map(|j| (0..n).map(|i| deg(i, j)).max().unwrap_or(0)).sum();
    rows.min(cols)
}

fn used_vars<D: Domain>(m: &Matrix<PolyRing<D>>) -> Vec<usize> {
    let ring = m.domain();
    (0..ring.nvars())
        .filter(|&v| m.rows().any(|row| row.iter().any(|e| e.degree_in(v).unwrap_or(0) > 0)))
        .collect()
}

fn det_fp(m: &Matrix<PolyRing<PrimeField>>, cfg: &ModularConfig) -> Result<MultiPoly<PrimeField>> {
    let ring = m.domain().clone();
    let field = *ring.domain();
    let vars = used_vars(m);
    let bounds: Vec<usize> = vars.iter().map(|&v| degree_bound(m, v)).collect();
    let points = bounds.iter().try_fold(1usize, |acc, b| acc.checked_mul(b + 1));
    match points {
        Some(p) if p <= cfg.max_points => {}
        _ => {
            return Err(Error::NeedsMorePoints(format!(
                "degree bounds {bounds:?} exceed the budget of {} points",
                cfg.max_points
            )))
        }
    }
    if bounds.iter().any(|&b| b as u64 >= field.modulus()) {
        return Err(Error::NeedsMorePoints(format!(
            "prime {} has too few nodes for degree bounds {bounds:?}",
            field.modulus()
        )));
    }
    let plan: Vec<(usize, usize)> = vars.into_iter().zip(bounds).collect();
    interp_rec(m, &plan)
}

fn interp_rec(m: &Matrix<PolyRing<PrimeField>>, plan: &[(usize, usize)]) -> Result<MultiPoly<PrimeField>> {
    let ring = m.domain().clone();
    let field = *ring.domain();
    let Some((&(var, bound), rest)) = plan.split_first() else {
        let scalar = m.map(field, |e| e.constant_value().expect("all variables substituted"));
        return Ok(ring.constant(scalar.det_field()?));
    };
    let name = ring.vars()[var].clone();
    let nodes: Vec<u64> = (0..=bound as u64).collect();
    let images = nodes
        .par_iter()
        .map(|&s| {
            let sub = [(name.as_str(), Value::Scalar(s))];
            let ms = m.map(ring.clone(), |e| e.eval(&sub).expect("variable in ring"));
            interp_rec(&ms, rest)
        })
        .collect::<Result<Vec<_>>>()?;
    // Interpolate coefficientwise in `var`.
    let mut by_mono: BTreeMap<Monomial, Vec<u64>> = BTreeMap::new();
    for (k, img) in images.iter().enumerate() {
        for (mono, c) in img.terms() {
            by_mono.entry(mono.clone()).or_insert_with(|| vec![0; nodes.len()])[k] = *c;
        }
    }
    let mut terms = Vec::new();
    for (mono, values) in by_mono {
        let uni = interpolate(&field, &nodes, &values)?;
        for (e, c) in uni.coeffs().iter().enumerate() {
            let mut exps = mono.exps().to_vec();
            exps[var] = e as u32;
            terms.push((exps, *c));
        }
    }
    Ok(ring.from_terms(terms))
}

impl ModularBackend for PrimeField {
    fn det_modular(m: &Matrix<PolyRing<PrimeField>>, cfg: &ModularConfig) -> Result<MultiPoly<PrimeField>> {
        det_fp(m, cfg)
    }
}

fn l1_norm(p: &MultiPoly<IntegerRing>) -> BigInt {
    p.terms().map(|(_, c)| c.abs()).sum()
}

impl ModularBackend for IntegerRing {
    fn det_modular(m: &Matrix<PolyRing<IntegerRing>>, cfg: &ModularConfig) -> Result<MultiPoly<IntegerRing>> {
        let ring = m.domain().clone();
        // |coefficient of det| <= prod_i sum_j |a_ij|_1
        let bound: BigInt = m.rows().map(|row| row.iter().map(l1_norm).sum::<BigInt>()).product();
        let target: BigInt = bound * 2 + 1;
        let mut crt: BTreeMap<Monomial, Crt> = BTreeMap::new();
        let mut modulus = BigInt::one();
        let mut seen: Vec<u64> = Vec::new();
        for ell in modular::primes_below(1 << 62, cfg.max_primes) {
            if modulus >= target {
                break;
            }
            let f = PrimeField::new(ell);
            let rf = ring.with_domain(f);
            let reduced = m.map(rf.clone(), |e| e.map_into(&rf, |c| f.from_bigint(c)).expect("same variables"));
            let image = det_fp(&reduced, cfg)?;
            let residues: BTreeMap<&Monomial, u64> = image.terms().map(|(mono, c)| (mono, *c)).collect();
            // Monomials new at this prime had residue 0 at all earlier ones.
            for mono in residues.keys() {
                crt.entry((*mono).clone()).or_insert_with(|| {
                    let mut c = Crt::default();
                    for &q in &seen {
                        c.push(0, q);
                    }
                    c
                });
            }
            for (mono, c) in crt.iter_mut() {
                c.push(residues.get(mono).copied().unwrap_or(0), ell);
            }
            seen.push(ell);
            modulus *= BigInt::from(ell);
        }
        if modulus < target {
            return Err(Error::NeedsMorePoints(format!(
                "coefficient bound needs more than {} primes",
                cfg.max_primes
            )));
        }
        Ok(ring.from_terms(crt.into_iter().map(|(mono, c)| (mono.exps().to_vec(), c.symmetric()))))
    }
}

impl ModularBackend for RationalField {
    fn det_modular(m: &Matrix<PolyRing<RationalField>>, cfg: &ModularConfig) -> Result<MultiPoly<RationalField>> {
        let ring = m.domain().clone();
        let zring = ring.with_domain(IntegerRing);
        let mut scale = BigInt::one();
        let mut rows = Vec::with_capacity(m.nrows());
        for row in m.rows() {
            let l = row
                .iter()
                .flat_map(|e| e.terms().map(|(_, c)| c.denom().clone()).collect::<Vec<_>>())
                .fold(BigInt::one(), |acc, d| acc.lcm(&d));
            let lq = BigRational::from_integer(l.clone());
            rows.push(
                row.iter()
                    .map(|e| e.map_into(&zring, |c| (c * &lq).to_integer()).expect("same variables"))
                    .collect(),
            );
            scale *= l;
        }
        let zdet = IntegerRing::det_modular(&Matrix::from_rows(zring, rows), cfg)?;
        let inv = BigRational::new(BigInt::one(), scale);
        zdet.map_into(&ring, |c| BigRational::from_integer(c.clone()) * &inv)
    }
}
