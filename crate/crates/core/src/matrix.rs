//! Sparse matrices with row and column access.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::Coefficient;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<R> {
    rows: Vec<BTreeMap<usize, R>>,
    cols: Vec<BTreeMap<usize, R>>,
}

impl<R: Coefficient> SparseMatrix<R> {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { rows: vec![BTreeMap::new(); nrows], cols: vec![BTreeMap::new(); ncols] }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> R {
        self.rows[r].get(&c).cloned().unwrap_or_else(R::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        if v.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.rows[r].insert(c, v.clone());
            self.cols[c].insert(r, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &R) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, cur.add(v));
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, R> {
        &self.rows[r]
    }

    pub fn col(&self, c: usize) -> &BTreeMap<usize, R> {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn clear_row(&mut self, r: usize) {
        for (c, _) in core::mem::take(&mut self.rows[r]) {
            self.cols[c].remove(&r);
        }
    }

    pub fn clear_col(&mut self, c: usize) {
        for (r, _) in core::mem::take(&mut self.cols[c]) {
            self.rows[r].remove(&c);
        }
    }

    /// Keeps the listed rows and columns, renumbered in the given order.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_map = vec![usize::MAX; self.ncols()];
        for (i, c) in cols.iter().enumerate() {
            col_map[*c] = i;
        }
        let mut out = Self::new(rows.len(), cols.len());
        for (i, r) in rows.iter().enumerate() {
            for (c, v) in &self.rows[*r] {
                if col_map[*c] != usize::MAX {
                    out.set(i, col_map[*c], v.clone());
                }
            }
        }
        out
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> SparseMatrix<S> {
        let mut out = SparseMatrix::new(self.nrows(), self.ncols());
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v));
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.nrows());
        let mut out = Self::new(self.nrows(), other.ncols());
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, R> = BTreeMap::new();
            for (k, v) in row {
                for (c, w) in &other.rows[*k] {
                    let e = acc.entry(*c).or_insert_with(R::zero);
                    *e = e.add(&v.mul(w));
                }
            }
            for (c, v) in acc {
                out.set(r, c, v);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        let mut out = vec![vec![R::zero(); self.ncols()]; self.nrows()];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaussianInt;

    #[test]
    fn set_get_and_restrict() {
        let mut m: SparseMatrix<GaussianInt> = SparseMatrix::new(3, 3);
        m.set(0, 1, GaussianInt::from_int(2));
        m.add_to(2, 2, &GaussianInt::i());
        m.add_to(2, 2, &-GaussianInt::i());
        assert_eq!(m.nnz(), 1);
        m.set(1, 0, GaussianInt::from_int(5));
        let r = m.restrict(&[0, 1], &[1, 0]);
        assert_eq!(r.get(0, 0), GaussianInt::from_int(2));
        assert_eq!(r.get(1, 1), GaussianInt::from_int(5));
        m.clear_col(1);
        assert_eq!(m.row(0).len(), 0);
    }
}
