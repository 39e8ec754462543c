//! Sparse Gaussian elimination with deterministic pivoting.
//!
//! Rows are reduced against existing pivots in increasing column order, so
//! the pivot of each stored row is its first nonzero column. The forward pass
//! yields a (non-reduced) row echelon form; [`Echelon::into_rref`] finishes
//! with back substitution.

use std::collections::BTreeMap;

use super::{Scalar, SparseVec};

const NO_PIVOT: usize = usize::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![NO_PIVOT; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_PIVOT
    }

    /// Reduces `v` against the stored rows; the result has no entry in any pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if !v.iter().any(|(c, _)| self.is_pivot(c)) {
            return v.clone();
        }
        let mut acc: BTreeMap<usize, Scalar> = v.iter().map(|(c, x)| (c, x.clone())).collect();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).map(|(c, _)| *c).find(|c| self.is_pivot(*c));
            let Some(col) = next else { break };
            let coef = acc.remove(&col).expect("present");
            let row = &self.rows[self.pivot_row[col]];
            for (c, x) in row.iter().skip(1) {
                let slot = acc.entry(c).or_default();
                *slot -= &coef * x;
                if slot.is_zero() {
                    acc.remove(&c);
                }
            }
            cursor = col + 1;
        }
        SparseVec::from_sorted_map(acc)
    }

    /// Inserts `v`; returns true when it was independent of the stored rows.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.max_col().is_none_or(|c| c < self.ncols));
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some((p, _)) => {
                self.pivot_row[p] = self.rows.len();
                self.rows.push(r.normalized());
                true
            }
        }
    }

    /// Reduced row echelon basis, rows sorted by pivot column.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let Echelon { ncols, mut rows, .. } = self;
        rows.sort_by_key(|r| r.leading().map(|(c, _)| c));
        let mut pivot_row = vec![NO_PIVOT; ncols];
        for (i, r) in rows.iter().enumerate() {
            pivot_row[r.leading().expect("nonzero").0] = i;
        }
        for i in (0..rows.len()).rev() {
            let needs = rows[i].iter().skip(1).any(|(c, _)| pivot_row[c] != NO_PIVOT);
            if !needs {
                continue;
            }
            let reduced = reduce_against_rref(&rows[i], &rows, &pivot_row, 1);
            rows[i] = reduced;
        }
        rows
    }
}

/// `v - sum v[p] * row_p` over pivot columns `p` present in `v` (skipping its first
/// `skip` entries). Correct because RREF rows vanish on every other pivot column.
pub(crate) fn reduce_against_rref(v: &SparseVec, rows: &[SparseVec], pivot_row: &[usize], skip: usize) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = v.iter().map(|(c, x)| (c, x.clone())).collect();
    for (c, coef) in v.iter().skip(skip) {
        let r = pivot_row.get(c).copied().unwrap_or(NO_PIVOT);
        if r == NO_PIVOT {
            continue;
        }
        acc.remove(&c);
        for (c2, y) in rows[r].iter().skip(1) {
            let slot = acc.entry(c2).or_default();
            *slot -= coef * y;
            if slot.is_zero() {
                acc.remove(&c2);
            }
        }
    }
    SparseVec::from_sorted_map(acc)
}

pub(crate) fn pivot_index(ncols: usize, rows: &[SparseVec]) -> Vec<usize> {
    let mut pivot_row = vec![NO_PIVOT; ncols];
    for (i, r) in rows.iter().enumerate() {
        if let Some((c, _)) = r.leading() {
            pivot_row[c] = i;
        }
    }
    pivot_row
}

pub(crate) fn is_no_pivot(x: usize) -> bool {
    x == NO_PIVOT
}
