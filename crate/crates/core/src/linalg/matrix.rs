use std::fmt;

use super::echelon::Echelon;
use super::{Scalar, SparseVec, Subspace};
use crate::error::{Error, Result};

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Full solution set of `M x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub homogeneous: Subspace,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
            .expect("rectangular")
    }

    pub fn from_sparse_rows(cols: usize, rows: &[SparseVec]) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (c, v) in r.iter() {
                m.set(i, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_sparse(&self, r: usize) -> SparseVec {
        SparseVec::from_dense(self.row(r))
    }

    pub fn column_sparse(&self, c: usize) -> SparseVec {
        SparseVec::from_entries((0..self.rows).map(|r| (r, self.get(r, c).clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} against {} columns", x.len(), self.cols)));
        }
        Ok((0..self.rows).map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum()).collect())
    }

    /// `M x` for a sparse `x`, returned sparse.
    pub fn mul_sparse(&self, x: &SparseVec) -> SparseVec {
        SparseVec::from_entries((0..self.rows).map(|r| {
            let v: Scalar = x.iter().map(|(c, xc)| self.get(r, c) * xc).sum();
            (r, v)
        }))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + &(a * b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert(&self.row_sparse(r));
        }
        e
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self) -> Matrix {
        Matrix::from_sparse_rows(self.cols, &self.echelon().into_rref())
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        kernel_of_rref(self.cols, &self.echelon().into_rref())
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut e = Echelon::new(2 * n);
        for r in 0..n {
            let mut entries: Vec<(usize, Scalar)> = self.row_sparse(r).entries().to_vec();
            entries.push((n + r, Scalar::one()));
            e.insert(&SparseVec::from_sorted_unchecked(entries));
        }
        let rref = e.into_rref();
        if rref.len() < n || rref.iter().any(|row| row.leading().expect("nonzero").0 >= n) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for (i, row) in rref.iter().enumerate() {
            for (c, v) in row.iter().filter(|(c, _)| *c >= n) {
                inv.set(i, c - n, v.clone());
            }
        }
        Some(inv)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Returns `None` when the system is inconsistent.
    pub fn solve_affine(&self, rhs: &[Scalar]) -> Result<Option<AffineSolution>> {
        if rhs.len() != self.rows {
            return Err(Error::Shape(format!("rhs of length {} for {} rows", rhs.len(), self.rows)));
        }
        let n = self.cols;
        let mut e = Echelon::new(n + 1);
        for r in 0..self.rows {
            let mut entries: Vec<(usize, Scalar)> = self.row_sparse(r).entries().to_vec();
            if !rhs[r].is_zero() {
                entries.push((n, rhs[r].clone()));
            }
            e.insert(&SparseVec::from_sorted_unchecked(entries));
        }
        let rref = e.into_rref();
        if rref.iter().any(|row| row.leading().map(|(c, _)| c) == Some(n)) {
            return Ok(None);
        }
        let mut particular = vec![Scalar::zero(); n];
        for row in &rref {
            let p = row.leading().expect("nonzero").0;
            if let Some(v) = row.get(n) {
                particular[p] = v.clone();
            }
        }
        let coeff_rows: Vec<SparseVec> = rref
            .iter()
            .map(|row| {
                SparseVec::from_sorted_unchecked(
                    row.iter().filter(|(c, _)| *c < n).map(|(c, v)| (c, v.clone())).collect(),
                )
            })
            .collect();
        Ok(Some(AffineSolution { particular, homogeneous: kernel_of_rref(n, &coeff_rows) }))
    }
}

pub(crate) fn kernel_of_rref(ncols: usize, rref: &[SparseVec]) -> Subspace {
    let mut is_pivot = vec![false; ncols];
    for row in rref {
        is_pivot[row.leading().expect("nonzero").0] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !is_pivot[*c]) {
        let mut entries = vec![(free, Scalar::one())];
        for row in rref {
            if let Some(v) = row.get(free) {
                entries.push((row.leading().expect("nonzero").0, -v));
            }
        }
        basis.push(SparseVec::from_entries(entries));
    }
    Subspace::span(ncols, basis).expect("indices in range")
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
