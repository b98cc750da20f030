//! Gram matrices of simply laced Coxeter-Dynkin diagrams and their
//! determinant, signature and parity.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::domain::{Domain, IntegerRing};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// A simple graph on nodes `0..nodes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl DynkinDiagram {
    /// Rejects self-loops, repeated edges and out-of-range endpoints.
    pub fn new(nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidDiagram(format!("self-loop at node {a}")));
            }
            if a >= nodes || b >= nodes {
                return Err(Error::InvalidDiagram(format!("edge {a}-{b} leaves the {nodes} nodes")));
            }
            let e = (a.min(b), a.max(b));
            if seen.contains(&e) {
                return Err(Error::InvalidDiagram(format!("repeated edge {a}-{b}")));
            }
            seen.push(e);
        }
        Ok(DynkinDiagram { nodes, edges: seen })
    }

    /// A path `0 - 1 - ... - (len-1)` with one extra node joined to `branch`.
    pub fn path_with_branch(len: usize, branch: usize) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
        edges.push((branch, len));
        Self::new(len + 1, &edges)
    }

    /// Nine nodes in a row with a tenth joined to the third.
    pub fn t237() -> Self {
        Self::path_with_branch(9, 2).expect("valid shape")
    }

    /// Seven nodes in a row with an eighth joined to the fifth.
    pub fn e8() -> Self {
        Self::path_with_branch(7, 4).expect("valid shape")
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

impl FromStr for DynkinDiagram {
    type Err = Error;

    /// Edge lists like `0-1, 1-2` or one `a b` pair per line. An optional
    /// `nodes N` line fixes the node count, otherwise it is one more than the
    /// largest index. `#` starts a comment.
    fn from_str(s: &str) -> Result<Self> {
        let mut nodes: Option<usize> = None;
        let mut edges = Vec::new();
        let bad = |item: &str| Error::Parse { pos: 0, msg: format!("bad edge `{item}`") };
        for line in s.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if let Some(n) = line.strip_prefix("nodes") {
                nodes = Some(n.trim().parse().map_err(|_| bad(line))?);
                continue;
            }
            for item in line.split(',').map(str::trim).filter(|i| !i.is_empty()) {
                let parts: Vec<&str> = item.split(|c: char| c == '-' || c.is_whitespace()).filter(|p| !p.is_empty()).collect();
                let [a, b] = parts.as_slice() else {
                    return Err(bad(item));
                };
                edges.push((a.parse().map_err(|_| bad(item))?, b.parse().map_err(|_| bad(item))?));
            }
        }
        let n = nodes.unwrap_or_else(|| edges.iter().map(|&(a, b): &(usize, usize)| a.max(b) + 1).max().unwrap_or(0));
        Self::new(n, &edges)
    }
}

/// Symmetric integer matrix of a root basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(Matrix<IntegerRing>);

impl GramMatrix {
    pub fn new(m: Matrix<IntegerRing>) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::Undefined("Gram matrix must be square and symmetric".into()));
        }
        Ok(GramMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix<IntegerRing> {
        &self.0
    }

    /// `U^T G U`.
    pub fn conjugate(&self, u: &Matrix<IntegerRing>) -> Result<Self> {
        GramMatrix::new(u.transpose().mul(&self.0)?.mul(u)?)
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `-2` on the diagonal, `1` for each edge.
pub fn gram_from_diagram(d: &DynkinDiagram) -> GramMatrix {
    let z = IntegerRing;
    let mut m = Matrix::zeros(z, d.nodes, d.nodes);
    for i in 0..d.nodes {
        m.set(i, i, BigInt::from(-2));
    }
    for &(a, b) in &d.edges {
        m.set(a, b, BigInt::from(1));
        m.set(b, a, BigInt::from(1));
    }
    GramMatrix(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeInvariants {
    pub determinant: BigInt,
    /// Counts of positive and negative pivots.
    pub signature: (usize, usize),
    /// Dimension of the radical; nonzero exactly when the determinant is 0.
    pub radical: usize,
    pub even: bool,
}

/// Determinant by fraction-free elimination, signature by congruence
/// diagonalization over the rationals.
pub fn lattice_invariants(g: &GramMatrix) -> Result<LatticeInvariants> {
    let m = g.matrix();
    let n = m.nrows();
    let determinant = m.det_bareiss()?;
    let even = (0..n).all(|i| (m.get(i, i) % BigInt::from(2)).is_zero());

    let mut a: Vec<Vec<BigRational>> =
        m.rows().map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let (mut pos, mut neg, mut radical) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, k, p);
        } else if let Some((_, j)) = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) {
            // All remaining diagonals vanish: e_i + e_j has norm 2 a_ij != 0.
            let i = (k..n).find(|&i| !a[i][j].is_zero() && i != j).expect("found above");
            add_sym(&mut a, i, j);
            swap_sym(&mut a, k, i);
        } else {
            radical = n - k;
            break;
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
            for r in a.iter_mut().skip(k) {
                let t = &f * &r[k];
                r[i] -= t;
            }
        }
        k += 1;
    }
    Ok(LatticeInvariants { determinant, signature: (pos, neg), radical, even })
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Basis change `e_i <- e_i + e_j`.
fn add_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let t = a[j][c].clone();
        a[i][c] += t;
    }
    for row in a.iter_mut() {
        let t = row[j].clone();
        row[i] += t;
    }
}

/// Product of random elementary integer matrices; determinant `±1`.
pub fn random_unimodular<R: Rng>(n: usize, steps: usize, rng: &mut R) -> Matrix<IntegerRing> {
    let z = IntegerRing;
    let mut u = Matrix::identity(z, n);
    if n < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        match rng.random_range(0..3) {
            0 => {
                let c = BigInt::from(rng.random_range(-3i64..=3));
                for r in 0..n {
                    let v = z.add(u.get(r, i), &(&c * u.get(r, j)));
                    u.set(r, i, v);
                }
            }
            1 => {
                for r in 0..n {
                    let (a, b) = (u.get(r, i).clone(), u.get(r, j).clone());
                    u.set(r, i, b);
                    u.set(r, j, a);
                }
            }
            _ => {
                for r in 0..n {
                    let v = -u.get(r, i);
                    u.set(r, i, v);
                }
            }
        }
    }
    u
}
