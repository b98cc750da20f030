//! Dense matrices over a [`Domain`], with fraction-free determinants.

use std::fmt;

use crate::domain::Domain;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix<D: Domain> {
    domain: D,
    rows: usize,
    cols: usize,
    data: Vec<D::Elem>,
}

impl<D: Domain> Matrix<D> {
    pub fn zeros(domain: D, rows: usize, cols: usize) -> Self {
        let data = vec![domain.zero(); rows * cols];
        Matrix { domain, rows, cols, data }
    }

    pub fn identity(domain: D, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m.set(i, i, m.domain.one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(domain: D, rows: Vec<Vec<D::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { domain, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &D::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: D::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[D::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[D::Elem]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.domain.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Undefined("matrix dimensions do not match".into()));
        }
        let d = &self.domain;
        let mut out = Self::zeros(d.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = d.zero();
                for k in 0..self.cols {
                    let t = d.mul(self.get(i, k), other.get(k, j));
                    d.add_assign(&mut acc, &t);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn map<D2: Domain>(&self, domain: D2, f: impl Fn(&D::Elem) -> D2::Elem) -> Matrix<D2> {
        Matrix {
            domain,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by single-step fraction-free elimination. Every division is
    /// exact, so this works over any integral domain with exact division,
    /// including polynomial rings. The pivot in each column is the nonzero
    /// candidate of smallest `size_hint`.
    pub fn det_bareiss(&self) -> Result<D::Elem> {
        if !self.is_square() {
            return Err(Error::Undefined("determinant of a non-square matrix".into()));
        }
        let d = &self.domain;
        let n = self.rows;
        if n == 0 {
            return Ok(d.one());
        }
        let mut a: Vec<Vec<D::Elem>> = self.rows().map(<[D::Elem]>::to_vec).collect();
        let mut prev = d.one();
        let mut negate = false;
        for k in 0..n - 1 {
            let pivot = (k..n)
                .filter(|&r| !d.is_zero(&a[r][k]))
                .min_by_key(|&r| d.size_hint(&a[r][k]));
            let Some(p) = pivot else {
                return Ok(d.zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in rest.iter_mut() {
                for j in k + 1..n {
                    let lhs = d.mul(&pivot_row[k], &row[j]);
                    let rhs = d.mul(&row[k], &pivot_row[j]);
                    let num = d.sub(&lhs, &rhs);
                    row[j] = d.div_exact(&num, &prev).ok_or_else(|| {
                        Error::Internal("fraction-free elimination step was not exact".into())
                    })?;
                }
                row[k] = d.zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg(&det) } else { det })
    }

    /// Determinant by Gaussian elimination; the domain must be a field.
    pub fn det_field(&self) -> Result<D::Elem> {
        if !self.is_square() {
            return Err(Error::Undefined("determinant of a non-square matrix".into()));
        }
        let d = &self.domain;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = d.one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !d.is_zero(&a[r * n + k])) else {
                return Ok(d.zero());
            };
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                det = d.neg(&det);
            }
            let piv = a[k * n + k].clone();
            det = d.mul(&det, &piv);
            let inv = d
                .inv(&piv)
                .ok_or_else(|| Error::Undefined("pivot is not invertible".into()))?;
            for r in k + 1..n {
                let f = d.mul(&a[r * n + k], &inv);
                if d.is_zero(&f) {
                    continue;
                }
                for j in k + 1..n {
                    let t = d.mul(&f, &a[k * n + j]);
                    a[r * n + j] = d.sub(&a[r * n + j], &t);
                }
            }
        }
        Ok(det)
    }
}

impl<D: Domain> fmt::Display for Matrix<D> {
    /// One bracketed row per line, entries in the domain's canonical text form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|c| self.domain.fmt_elem(c)).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<D: Domain> fmt::Debug for Matrix<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}
