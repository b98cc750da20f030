//! Weighted degrees, homogeneity and torus scaling.
//!
//! Two gradings are in play and are kept apart: the ambient weights on
//! `(x, y, z, w)` and the parameter weights on the `t_i`. The torus acts on
//! both at once with opposite signs on `w`, see [`family_action`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::domain::{Domain, PrimeField};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, PolyRing, Value};

/// Weights of the eleven family parameters `t4, t10, ..., t42`.
pub const WEIGHTS: [u32; 11] = [4, 10, 12, 16, 18, 22, 24, 28, 30, 36, 42];

/// Variable name of the parameter of weight `w`.
pub fn param_name(w: u32) -> String {
    format!("t{w}")
}

/// Positive integer weights attached to named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    entries: Vec<(String, u32)>,
}

impl WeightVector {
    pub fn new<S: AsRef<str>>(entries: &[(S, u32)]) -> Self {
        WeightVector {
            entries: entries.iter().map(|(n, w)| (n.as_ref().to_string(), *w)).collect(),
        }
    }

    /// `x:6, y:14, z:21, w:1`.
    pub fn ambient() -> Self {
        Self::new(&[("x", 6), ("y", 14), ("z", 21), ("w", 1)])
    }

    /// `t_i : i` for the eleven family parameters.
    pub fn parameters() -> Self {
        WeightVector { entries: WEIGHTS.iter().map(|&w| (param_name(w), w)).collect() }
    }

    pub fn entries(&self) -> &[(String, u32)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Weight of `name`, 0 when it carries none.
    pub fn weight(&self, name: &str) -> u32 {
        self.entries.iter().find(|(n, _)| n == name).map_or(0, |(_, w)| *w)
    }

    /// Checks that every weighted variable belongs to `ring`.
    pub fn check_ring<D: Domain>(&self, ring: &PolyRing<D>) -> Result<()> {
        for (n, _) in &self.entries {
            ring.var_index(n)?;
        }
        Ok(())
    }

    /// Only the entries whose variable belongs to `ring`.
    pub fn restricted_to<D: Domain>(&self, ring: &PolyRing<D>) -> Self {
        WeightVector {
            entries: self.entries.iter().filter(|(n, _)| ring.has_var(n)).cloned().collect(),
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(n, w)| format!("{n}:{w}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for WeightVector {
    type Err = Error;

    /// Parses `name:weight` comma lists such as `x:6,y:14`.
    fn from_str(s: &str) -> Result<Self> {
        let mut entries: Vec<(String, u32)> = Vec::new();
        for (k, item) in s.split(',').enumerate() {
            let bad = |msg: &str| Error::Parse { pos: k, msg: format!("`{item}`: {msg}") };
            let (name, w) = item.split_once(':').ok_or_else(|| bad("expected name:weight"))?;
            let name = name.trim();
            if name.is_empty() {
                return Err(bad("empty name"));
            }
            let w: u32 = w.trim().parse().map_err(|_| bad("weight must be a positive integer"))?;
            if w == 0 {
                return Err(bad("weight must be positive"));
            }
            if entries.iter().any(|(n, _)| n == name) {
                return Err(bad("duplicate name"));
            }
            entries.push((name.to_string(), w));
        }
        Ok(WeightVector { entries })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct WeightedDegree {
    /// Maximum weighted degree over all terms.
    pub degree: u64,
    pub homogeneous: bool,
}

/// Weighted degree of a nonzero polynomial; unweighted variables count 0.
pub fn weighted_degree<D: Domain>(p: &MultiPoly<D>, w: &WeightVector) -> Result<WeightedDegree> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let weights: Vec<u64> = p.ring().vars().iter().map(|v| w.weight(v) as u64).collect();
    let mut min = u64::MAX;
    let mut max = 0;
    for (m, _) in p.terms() {
        let deg: u64 = m.exps().iter().zip(&weights).map(|(&e, &wt)| e as u64 * wt).sum();
        min = min.min(deg);
        max = max.max(deg);
    }
    Ok(WeightedDegree { degree: max, homogeneous: min == max })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Plus,
    Minus,
}

/// Names of the torus symbol and its inverse inside a ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Torus {
    pub alpha: String,
    pub alpha_inv: String,
}

impl Default for Torus {
    fn default() -> Self {
        Torus { alpha: "alpha".into(), alpha_inv: "alpha_inv".into() }
    }
}

impl Torus {
    /// Cancels `alpha * alpha_inv` in every term.
    pub fn normalize<D: Domain>(&self, p: &MultiPoly<D>) -> Result<MultiPoly<D>> {
        let ring = p.ring();
        let a = ring.var_index(&self.alpha)?;
        let b = ring.var_index(&self.alpha_inv)?;
        Ok(ring.from_terms(p.terms().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            let k = e[a].min(e[b]);
            e[a] -= k;
            e[b] -= k;
            (e, c.clone())
        })))
    }
}

/// Substitutes `v -> alpha^(±weight(v)) * v` for every weighted variable and
/// reduces with `alpha * alpha_inv = 1`.
pub fn scale_action<D: Domain>(
    p: &MultiPoly<D>,
    w: &WeightVector,
    direction: Direction,
    torus: &Torus,
) -> Result<MultiPoly<D>> {
    let ring = p.ring();
    w.check_ring(ring)?;
    let symbol = match direction {
        Direction::Plus => ring.var(&torus.alpha)?,
        Direction::Minus => ring.var(&torus.alpha_inv)?,
    };
    let subs = w
        .entries()
        .iter()
        .map(|(n, k)| Ok((n.as_str(), Value::Poly(&symbol.pow(*k) * &ring.var(n)?))))
        .collect::<Result<Vec<_>>>()?;
    torus.normalize(&p.eval(&subs)?)
}

/// The family's torus action: `t_i -> alpha^i t_i` together with `w -> alpha^-1 w`.
pub fn family_action<D: Domain>(p: &MultiPoly<D>, torus: &Torus) -> Result<MultiPoly<D>> {
    let params = WeightVector::parameters().restricted_to(p.ring());
    let up = scale_action(p, &params, Direction::Plus, torus)?;
    scale_action(&up, &WeightVector::new(&[("w", 1)]), Direction::Minus, torus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeOutcome {
    pub holds: bool,
    /// Trials with `F(t) != 0`.
    pub conclusive: usize,
    /// Samples discarded because `F(t) = 0`.
    pub zero_hits: usize,
}

/// Tests `F(alpha . t) = alpha^claimed * F(t)` at random points of `F_p`.
///
/// `eval` receives coordinates in the order of `w`'s entries. Each trial
/// resamples up to 8 times when it lands on a zero of `F`.
pub fn numeric_degree_probe<F>(
    eval: F,
    w: &WeightVector,
    claimed_degree: u64,
    trials: usize,
    field: PrimeField,
    seed: u64,
) -> Result<ProbeOutcome>
where
    F: Fn(&[u64]) -> u64 + Sync,
{
    const RESAMPLES: usize = 8;
    let p = field.modulus();
    let results: Vec<(Option<bool>, usize)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut zeros = 0;
            for _ in 0..RESAMPLES {
                let t: Vec<u64> = (0..w.len()).map(|_| rng.random_range(0..p)).collect();
                let alpha = rng.random_range(1..p);
                let base = eval(&t);
                if base == 0 {
                    zeros += 1;
                    continue;
                }
                let scaled: Vec<u64> = t
                    .iter()
                    .zip(w.entries())
                    .map(|(ti, (_, k))| field.mul(ti, &field.pow(&alpha, *k as u64)))
                    .collect();
                let lhs = eval(&scaled);
                let rhs = field.mul(&field.pow(&alpha, claimed_degree), &base);
                return (Some(lhs == rhs), zeros);
            }
            (None, zeros)
        })
        .collect();
    let conclusive = results.iter().filter(|(r, _)| r.is_some()).count();
    let zero_hits = results.iter().map(|(_, z)| z).sum();
    if conclusive == 0 {
        return Err(Error::Inconclusive(format!(
            "all {trials} trials evaluated to zero"
        )));
    }
    let holds = results.iter().all(|(r, _)| r.unwrap_or(true));
    Ok(ProbeOutcome { holds, conclusive, zero_hits })
}
