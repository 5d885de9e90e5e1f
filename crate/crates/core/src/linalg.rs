//! Exact dense and sparse linear algebra over a [`Field`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { rows: n, cols, entries })
    }

    /// Builds a matrix with an explicit column count, so that zero-row matrices keep their width.
    pub fn from_row_slices(cols: usize, rows: &[Vec<F>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            entries.extend(row.iter().cloned());
        }
        Ok(Self { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Block-diagonal matrix with `k` copies of `self`.
    pub fn block_diagonal(&self, k: usize) -> Self {
        let mut out = Self::zeros(self.rows * k, self.cols * k);
        for b in 0..k {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    out[(b * self.rows + i, b * self.cols + j)] = self[(i, j)].clone();
                }
            }
        }
        out
    }

    /// Appends the columns of `other` on the right.
    pub fn augment(&self, other: &Self) -> Result<Self> {
        if other.rows != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend(self.row(i).iter().cloned());
            entries.extend(other.row(i).iter().cloned());
        }
        Ok(Self { rows: self.rows, cols, entries })
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = F::one() / m[(r, c)].clone();
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The nonzero rows of the rref: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Self {
        let (m, pivots) = self.rref();
        Self {
            rows: pivots.len(),
            cols: m.cols,
            entries: m.entries[..pivots.len() * m.cols].to_vec(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.entries[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.entries[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> =
                self.entries[i * self.cols..(i + 1) * self.cols].iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// True iff `f = c·g` for some nonzero scalar `c`. Rejects all-zero inputs.
pub fn proportional<F: Field>(f: &[F], g: &[F]) -> Result<bool> {
    if f.len() != g.len() {
        return Err(Error::DimensionMismatch { expected: f.len(), found: g.len() });
    }
    let lead = |v: &[F]| v.iter().position(|x| !x.is_zero());
    let (Some(i), Some(j)) = (lead(f), lead(g)) else {
        return Err(Error::ZeroForm(None));
    };
    if i != j {
        return Ok(false);
    }
    let c = f[i].clone() / g[i].clone();
    Ok(f.iter().zip(g).all(|(a, b)| *a == c.clone() * b.clone()))
}

/// Incrementally maintained echelon basis of sparse vectors.
///
/// Each stored row has leading coefficient one at its pivot key and is
/// reduced against every other stored pivot, so membership tests are a single
/// forward sweep.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K, F> {
    rows: BTreeMap<K, BTreeMap<K, F>>,
}

impl<K: Ord + Clone, F: Field> Default for SparseEchelon<K, F> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, F: Field> SparseEchelon<K, F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` modulo the current span. The result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: BTreeMap<K, F>) -> BTreeMap<K, F> {
        v.retain(|_, x| !x.is_zero());
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.rows.contains_key(*k))
                    .cloned(),
            };
            let Some(key) = next else { break };
            let factor = v[&key].clone();
            for (k, x) in &self.rows[&key] {
                let entry = v.entry(k.clone()).or_insert_with(F::zero);
                *entry = entry.clone() - factor.clone() * x.clone();
                if entry.is_zero() {
                    v.remove(k);
                }
            }
            cursor = Some(key);
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: BTreeMap<K, F>) -> bool {
        let mut v = self.reduce(v);
        let Some((pivot, lead)) = v.iter().next().map(|(k, x)| (k.clone(), x.clone())) else {
            return false;
        };
        let inv = F::one() / lead;
        for x in v.values_mut() {
            *x = x.clone() * inv.clone();
        }
        // keep the basis fully reduced so that `reduce` needs one forward pass
        for row in self.rows.values_mut() {
            if let Some(factor) = row.get(&pivot).cloned() {
                for (k, x) in &v {
                    let entry = row.entry(k.clone()).or_insert_with(F::zero);
                    *entry = entry.clone() - factor.clone() * x.clone();
                    if entry.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        self.rows.insert(pivot, v);
        true
    }

    pub fn contains(&self, v: BTreeMap<K, F>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn basis(&self) -> impl Iterator<Item = &BTreeMap<K, F>> {
        self.rows.values()
    }
}
