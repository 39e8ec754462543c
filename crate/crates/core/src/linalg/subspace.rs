use super::echelon::{is_no_pivot, pivot_index, reduce_against_rref, Echelon};
use super::{Matrix, Scalar, SparseVec};
use crate::error::{Error, Result};

/// A subspace of `Q^ambient_dim`, stored as its reduced row echelon basis.
///
/// The basis is canonical, so two subspaces are equal exactly when their
/// representations are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(SparseVec::unit).collect() }
    }

    pub fn span<I: IntoIterator<Item = SparseVec>>(ambient: usize, vectors: I) -> Result<Self> {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            if let Some(c) = v.max_col() {
                if c >= ambient {
                    return Err(Error::OutOfRange(format!("column {c} in ambient dimension {ambient}")));
                }
            }
            e.insert(&v);
        }
        Ok(Subspace { ambient, basis: e.into_rref() })
    }

    pub fn span_dense(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::Shape("vector length differs from ambient dimension".into()));
        }
        Subspace::span(ambient, vectors.iter().map(|v| SparseVec::from_dense(v)))
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        Subspace { ambient: m.cols(), basis: (0..m.rows()).map(|r| m.row_sparse(r)).collect() }.recanonicalize()
    }

    /// Caller guarantees `basis` is already in reduced row echelon form.
    pub(crate) fn from_rref_unchecked(ambient: usize, mut basis: Vec<SparseVec>) -> Self {
        basis.sort_by_key(|r| r.leading().map(|(c, _)| c));
        debug_assert!(basis.iter().all(|r| r.leading().is_some_and(|(_, v)| v.is_one())));
        Subspace { ambient, basis }
    }

    fn recanonicalize(self) -> Self {
        Subspace::span(self.ambient, self.basis).expect("in range")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.leading().expect("nonzero").0).collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_sparse_rows(self.ambient, &self.basis)
    }

    fn check_vec(&self, v: &SparseVec) -> Result<()> {
        match v.max_col() {
            Some(c) if c >= self.ambient => {
                Err(Error::OutOfRange(format!("column {c} in ambient dimension {}", self.ambient)))
            }
            _ => Ok(()),
        }
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient })
        } else {
            Ok(())
        }
    }

    /// Canonical residue of `v` modulo this subspace: the representative
    /// vanishing on every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> Result<SparseVec> {
        self.check_vec(v)?;
        let piv = pivot_index(self.ambient, &self.basis);
        Ok(reduce_against_rref(v, &self.basis, &piv, 0))
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(
            self.basis.iter().map(|r| v.get(r.leading().expect("nonzero").0).cloned().unwrap_or_default()).collect(),
        ))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        Subspace::span(self.ambient, self.basis.iter().chain(other.basis.iter()).cloned())
    }

    /// Zassenhaus: echelonize rows `(a | a)` and `(b | 0)`; rows whose left half
    /// vanishes carry a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(n));
        }
        let mut e = Echelon::new(2 * n);
        for a in &self.basis {
            let doubled: Vec<(usize, Scalar)> =
                a.iter().map(|(c, v)| (c, v.clone())).chain(a.iter().map(|(c, v)| (c + n, v.clone()))).collect();
            e.insert(&SparseVec::from_sorted_unchecked(doubled));
        }
        for b in &other.basis {
            e.insert(b);
        }
        let meet = e
            .rows()
            .iter()
            .filter(|r| r.leading().is_some_and(|(c, _)| c >= n))
            .map(|r| r.map_cols(|c| c - n))
            .collect::<Vec<_>>();
        Subspace::span(n, meet)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_same(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        let piv = pivot_index(other.ambient, &other.basis);
        Ok(self.basis.iter().all(|v| reduce_against_rref(v, &other.basis, &piv, 0).is_zero()))
    }

    /// Columns that are not pivots: a canonical complement's coordinate set.
    pub fn free_columns(&self) -> Vec<usize> {
        let piv = pivot_index(self.ambient, &self.basis);
        (0..self.ambient).filter(|c| is_no_pivot(piv[*c])).collect()
    }
}
