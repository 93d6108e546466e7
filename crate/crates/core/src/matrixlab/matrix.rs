//! Sparse exact matrices.

use super::field::{ExactField, Scalar};
use std::collections::BTreeMap;

/// A matrix over an [`ExactField`] storing only nonzero entries, so equal
/// matrices have equal contents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: ExactField,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn zeros(field: ExactField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(field: ExactField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// The matrix unit `E_ij` of size `n`.
    pub fn unit(field: ExactField, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    pub fn from_rows(field: ExactField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    /// Diagonal matrix with the given 0/1 pattern.
    pub fn diagonal(field: ExactField, diag: &[i64]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, field.from_i64(v));
        }
        m
    }

    pub fn field(&self) -> ExactField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let sum = match self.entries.get(&(i, j)) {
            Some(old) => old.add(v),
            None => v.clone(),
        };
        self.set(i, j, sum);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let entries = self.entries.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect();
        Self { field: self.field, rows: self.cols, cols: self.rows, entries }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (i, j, v) in other.nonzeros() {
            out.add_at(i, j, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zeros(self.field, self.rows, self.cols);
        if c.is_zero() {
            return out;
        }
        for (i, j, v) in self.nonzeros() {
            out.set(i, j, v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut by_row: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); other.rows];
        for (k, j, v) in other.nonzeros() {
            by_row[k].push((j, v));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for (i, k, a) in self.nonzeros() {
            for &(j, b) in &by_row[k] {
                out.add_at(i, j, &a.mul(b));
            }
        }
        out
    }

    /// Writes `block` with its top-left corner at `(row, col)`.
    pub fn place(&mut self, block: &Self, row: usize, col: usize) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols, "block does not fit");
        for (i, j, v) in block.nonzeros() {
            self.set(row + i, col + j, v.clone());
        }
    }

    /// The `size × size` block at `(offset, offset)`.
    pub fn diagonal_block(&self, offset: usize, size: usize) -> Self {
        let mut out = Self::zeros(self.field, size, size);
        for (i, j, v) in self.nonzeros() {
            if (offset..offset + size).contains(&i) && (offset..offset + size).contains(&j) {
                out.set(i - offset, j - offset, v.clone());
            }
        }
        out
    }

    pub fn block_diagonal(field: ExactField, blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, n, m);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.place(b, r, c);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for (i, j, a) in self.nonzeros() {
            for (k, l, b) in other.nonzeros() {
                out.set(i * other.rows + k, j * other.cols + l, a.mul(b));
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        *self == self.transpose().neg()
    }

    fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (i, j, v) in self.nonzeros() {
            rows[i][j] = v.clone();
        }
        rows
    }

    /// Row-reduces `rows` in place; returns the pivot columns.
    fn reduce(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv().expect("nonzero pivot");
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
            for i in 0..rows.len() {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let factor = rows[i][c].clone();
                for k in c..cols {
                    if !rows[r][k].is_zero() {
                        let d = rows[r][k].mul(&factor);
                        rows[i][k] = rows[i][k].sub(&d);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        pivots
    }

    /// Exact rank. Rows without entries are skipped, so images of matrix
    /// units are cheap.
    pub fn rank(&self) -> usize {
        let mut row_ids: Vec<usize> = self.entries.keys().map(|&(i, _)| i).collect();
        row_ids.dedup();
        let dense = self.dense_rows();
        let mut rows: Vec<Vec<Scalar>> = row_ids.into_iter().map(|i| dense[i].clone()).collect();
        Self::reduce(&mut rows, self.cols).len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut rows = self.dense_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row.extend((0..n).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
        }
        let pivots = Self::reduce(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Self::zeros(self.field, n, n);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                out.set(i, j, row[n + j].clone());
            }
        }
        Some(out)
    }

    /// Basis of the right null space, as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut rows = self.dense_rows();
        let pivots = Self::reduce(&mut rows, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = rows[r][f].neg();
                }
                v
            })
            .collect()
    }

    /// Row-major JSON: rational strings over ℚ, residues over `GF(p)`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.dense_rows()
                .into_iter()
                .map(|r| serde_json::Value::Array(r.iter().map(Scalar::to_json).collect()))
                .collect(),
        )
    }
}
