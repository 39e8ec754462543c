//! Tensor powers of `V = Q^d`, the filtered free algebra, and lifts of linear
//! maps to one tensor factor.
//!
//! Words of degree `n` index the basis of `V^{⊗n}` in lexicographic order:
//! the word `(w_1, …, w_n)` sits at position `Σ w_i d^{n-i}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, SparseVec, Subspace};

/// A monomial `x^{w_1} ⊗ … ⊗ x^{w_n}`. Ordered by degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}

/// Which side a factor of `V` is attached on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `e_λ ⊗ X`
    Left,
    /// `X ⊗ e_λ`
    Right,
}

/// `d^n` with overflow reported as a resource problem.
pub fn checked_pow(d: usize, n: usize) -> Result<usize> {
    (d as u128)
        .checked_pow(n as u32)
        .filter(|x| *x <= usize::MAX as u128)
        .map(|x| x as usize)
        .ok_or(Error::ResourceLimit { requested: u128::MAX, limit: usize::MAX as u128 })
}

pub fn pow(d: usize, n: usize) -> usize {
    checked_pow(d, n).expect("tensor dimension overflow")
}

pub fn word_index(dim_v: usize, w: &Word) -> Result<usize> {
    let mut idx = 0usize;
    for &l in &w.0 {
        if l >= dim_v {
            return Err(Error::OutOfRange(format!("letter {l} with {dim_v} generators")));
        }
        idx = idx * dim_v + l;
    }
    Ok(idx)
}

pub fn index_word(dim_v: usize, degree: usize, index: usize) -> Result<Word> {
    if dim_v == 0 || index >= checked_pow(dim_v, degree)? {
        return Err(Error::OutOfRange(format!("index {index} in degree {degree} with {dim_v} generators")));
    }
    let mut letters = vec![0; degree];
    let mut rest = index;
    for slot in letters.iter_mut().rev() {
        *slot = rest % dim_v;
        rest /= dim_v;
    }
    Ok(Word(letters))
}

/// Coordinates on `F^n = ⊕_{0≤i≤n} V^{⊗i}` with the highest degree first.
///
/// With this ordering, the canonical row echelon form of a subspace `J ⊂ F^n`
/// exposes `J ∩ F^k` as the rows whose pivot lies in degree `≤ k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilteredCoords {
    pub dim_v: usize,
    pub max_degree: usize,
}

impl FilteredCoords {
    pub fn new(dim_v: usize, max_degree: usize) -> Self {
        FilteredCoords { dim_v, max_degree }
    }

    /// Offset of the degree-`k` block.
    pub fn offset(&self, k: usize) -> usize {
        ((k + 1)..=self.max_degree).map(|i| pow(self.dim_v, i)).sum()
    }

    pub fn total_dim(&self) -> usize {
        (0..=self.max_degree).map(|i| pow(self.dim_v, i)).sum()
    }

    /// Dimension of `F^k`.
    pub fn filtered_dim(&self, k: usize) -> usize {
        (0..=k).map(|i| pow(self.dim_v, i)).sum()
    }

    pub fn index(&self, degree: usize, word_index: usize) -> usize {
        self.offset(degree) + word_index
    }

    /// Degree of the block holding coordinate `col`.
    pub fn degree_of(&self, col: usize) -> usize {
        (0..=self.max_degree).find(|&k| col >= self.offset(k)).unwrap_or(self.max_degree)
    }

    pub fn encode(&self, x: &TensorElement) -> Result<SparseVec> {
        if x.max_degree() > self.max_degree {
            return Err(Error::Shape(format!("element of degree {} in F^{}", x.max_degree(), self.max_degree)));
        }
        let mut entries = Vec::with_capacity(x.terms.len());
        for (w, c) in &x.terms {
            entries.push((self.index(w.degree(), word_index(self.dim_v, w)?), c.clone()));
        }
        Ok(SparseVec::from_entries(entries))
    }

    pub fn decode(&self, v: &SparseVec) -> TensorElement {
        let mut out = TensorElement::zero(self.dim_v);
        for (col, c) in v.iter() {
            let k = self.degree_of(col);
            let w = index_word(self.dim_v, k, col - self.offset(k)).expect("in range");
            out.terms.insert(w, c.clone());
        }
        out
    }
}

/// Element of the free algebra `T(V)`; mixed degrees allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    dim_v: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl TensorElement {
    pub fn zero(dim_v: usize) -> Self {
        TensorElement { dim_v, terms: BTreeMap::new() }
    }

    pub fn unit(dim_v: usize) -> Self {
        Self::monomial(dim_v, Word::empty(), Scalar::one())
    }

    pub fn scalar(dim_v: usize, c: Scalar) -> Self {
        Self::monomial(dim_v, Word::empty(), c)
    }

    /// The generator `e_λ`.
    pub fn generator(dim_v: usize, letter: usize) -> Self {
        assert!(letter < dim_v, "letter {letter} out of range");
        Self::monomial(dim_v, Word(vec![letter]), Scalar::one())
    }

    pub fn monomial(dim_v: usize, w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        TensorElement { dim_v, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(dim_v: usize, items: I) -> Result<Self> {
        let mut out = TensorElement::zero(dim_v);
        for (w, c) in items {
            if let Some(&l) = w.0.iter().find(|&&l| l >= dim_v) {
                return Err(Error::OutOfRange(format!("letter {l} with {dim_v} generators")));
            }
            out.add_term(w, &c);
        }
        Ok(out)
    }

    /// Homogeneous element of degree `n` from `V^{⊗n}` coordinates.
    pub fn from_homogeneous(dim_v: usize, degree: usize, v: &SparseVec) -> Self {
        let terms = v.iter().map(|(i, c)| (index_word(dim_v, degree, i).expect("index in range"), c.clone())).collect();
        TensorElement { dim_v, terms }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Word::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return TensorElement::zero(self.dim_v);
        }
        TensorElement { dim_v: self.dim_v, terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    /// The degree-`n` component as `V^{⊗n}` coordinates.
    pub fn component(&self, n: usize) -> SparseVec {
        SparseVec::from_entries(
            self.terms
                .iter()
                .filter(|(w, _)| w.degree() == n)
                .map(|(w, c)| (word_index(self.dim_v, w).expect("valid"), c.clone())),
        )
    }

    /// Everything of degree strictly below `n`.
    pub fn truncate_below(&self, n: usize) -> Self {
        TensorElement {
            dim_v: self.dim_v,
            terms: self.terms.iter().filter(|(w, _)| w.degree() < n).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    fn check_dim(&self, other: &TensorElement) -> Result<()> {
        if self.dim_v != other.dim_v {
            Err(Error::Shape(format!("generator counts {} vs {}", self.dim_v, other.dim_v)))
        } else {
            Ok(())
        }
    }

    /// Concatenation product of the free algebra.
    pub fn tensor_product(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_dim(other)?;
        let mut out = TensorElement::zero(self.dim_v);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), &(x * y));
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    /// `[a, b] = ab - ba`
    pub fn commutator(&self, other: &TensorElement) -> Result<TensorElement> {
        Ok(self.tensor_product(other)? - other.tensor_product(self)?)
    }

    /// `{a, b} = ab + ba`
    pub fn anticommutator(&self, other: &TensorElement) -> Result<TensorElement> {
        Ok(self.tensor_product(other)? + other.tensor_product(self)?)
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{:?}", w.0)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: TensorElement) -> TensorElement {
        self.try_add(&rhs).expect("matching generator counts")
    }
}

impl Sub for TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: TensorElement) -> TensorElement {
        self.try_add(&-rhs).expect("matching generator counts")
    }
}

impl Neg for TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &TensorElement {
    type Output = TensorElement;
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        self.tensor_product(rhs).expect("matching generator counts")
    }
}

/// `X ⊗ V` (right) or `V ⊗ X` (left) for `X ⊂ V^{⊗n}`.
///
/// Both lifts keep a reduced echelon basis reduced, so no elimination is needed.
pub fn side_tensor(sub: &Subspace, dim_v: usize, side: Side) -> Subspace {
    let n_dim = sub.ambient_dim();
    let mut rows = Vec::with_capacity(sub.dim() * dim_v);
    for r in sub.basis() {
        for l in 0..dim_v {
            rows.push(match side {
                Side::Right => r.map_cols(|c| c * dim_v + l),
                Side::Left => r.map_cols(|c| l * n_dim + c),
            });
        }
    }
    Subspace::from_rref_unchecked(n_dim * dim_v, rows)
}

/// A linear map `φ_j : R → V^{⊗j}`, as a matrix from coordinates in the
/// distinguished relation basis to `V^{⊗j}` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    dim_v: usize,
    target_degree: usize,
    matrix: Matrix,
}

impl GradedMap {
    pub fn new(dim_v: usize, target_degree: usize, matrix: Matrix) -> Result<Self> {
        let rows = checked_pow(dim_v, target_degree)?;
        if matrix.rows() != rows {
            return Err(Error::Shape(format!("φ_{target_degree} needs {rows} rows, got {}", matrix.rows())));
        }
        Ok(GradedMap { dim_v, target_degree, matrix })
    }

    pub fn zero(dim_v: usize, target_degree: usize, source_dim: usize) -> Self {
        GradedMap { dim_v, target_degree, matrix: Matrix::zeros(pow(dim_v, target_degree), source_dim) }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn target_degree(&self) -> usize {
        self.target_degree
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Image of a vector given by relation-basis coordinates.
    pub fn apply_coords(&self, coords: &[Scalar]) -> SparseVec {
        SparseVec::from_dense(&self.matrix.mul_vec(coords).expect("coordinate count matches"))
    }

    /// Image of the `a`-th relation basis vector.
    pub fn image_of_basis(&self, a: usize) -> SparseVec {
        self.matrix.column_sparse(a)
    }

    pub fn scale(&self, k: &Scalar) -> GradedMap {
        GradedMap { dim_v: self.dim_v, target_degree: self.target_degree, matrix: self.matrix.scale(k) }
    }
}

/// Coefficients `c[a][λ]` with `x = Σ c[a][λ] r_a ⊗ e_λ` (right side) or
/// `x = Σ c[a][λ] e_λ ⊗ r_a` (left side).
pub type SideCoords = Vec<Vec<Scalar>>;

/// `(φ ⊗ I)(x)` or `(I ⊗ φ)(x)` for `x` given by side coordinates.
pub fn lift_map(phi: &GradedMap, coords: &SideCoords, side: Side) -> SparseVec {
    let d = phi.dim_v;
    let block = pow(d, phi.target_degree);
    let mut entries = Vec::new();
    for (a, per_letter) in coords.iter().enumerate() {
        let img = phi.image_of_basis(a);
        if img.is_zero() {
            continue;
        }
        for (l, c) in per_letter.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (u, y) in img.iter() {
                let idx = match side {
                    Side::Right => u * d + l,
                    Side::Left => l * block + u,
                };
                entries.push((idx, c * y));
            }
        }
    }
    SparseVec::from_entries(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_indexing() {
        let cases = [(vec![0, 0], 0), (vec![0, 1], 1), (vec![1, 0], 2), (vec![1, 1], 3)];
        for (w, i) in cases {
            assert_eq!(word_index(2, &Word(w.clone())).unwrap(), i);
            assert_eq!(index_word(2, 2, i).unwrap(), Word(w));
        }
        assert_eq!(word_index(3, &Word(vec![2, 2, 2])).unwrap(), 26);
        assert!(word_index(2, &Word(vec![2])).is_err());
        assert!(index_word(2, 2, 4).is_err());
    }

    #[test]
    fn products() {
        let e0 = TensorElement::generator(2, 0);
        let e1 = TensorElement::generator(2, 1);
        let p = &e0 * &e1;
        assert_eq!(p.coeff(&Word(vec![0, 1])), Scalar::one());
        assert_eq!(p.terms().len(), 1);
        let q = &(e0.clone() + e1.clone()) * &e0;
        assert_eq!(q.terms().len(), 2);
        assert_eq!(q.coeff(&Word(vec![1, 0])), Scalar::one());
        let one = TensorElement::unit(2);
        assert_eq!(&one * &q, q);
        assert!(e0.tensor_product(&TensorElement::generator(3, 0)).is_err());
    }

    #[test]
    fn side_tensor_edges() {
        assert!(side_tensor(&Subspace::zero(4), 2, Side::Right).is_zero());
        assert_eq!(side_tensor(&Subspace::full(4), 2, Side::Left), Subspace::full(8));
        assert_eq!(side_tensor(&Subspace::full(4), 2, Side::Right), Subspace::full(8));
    }

    #[test]
    fn filtered_coords_roundtrip() {
        let fc = FilteredCoords::new(2, 3);
        assert_eq!(fc.total_dim(), 15);
        assert_eq!(fc.offset(3), 0);
        assert_eq!(fc.offset(0), 14);
        let x = TensorElement::from_terms(
            2,
            [
                (Word(vec![1, 0, 1]), Scalar::from_int(2)),
                (Word(vec![]), Scalar::from_int(-1)),
                (Word(vec![1]), Scalar::half()),
            ],
        )
        .unwrap();
        let v = fc.encode(&x).unwrap();
        assert_eq!(fc.decode(&v), x);
        assert_eq!(fc.degree_of(7), 3);
        assert_eq!(fc.degree_of(8), 2);
        assert_eq!(fc.degree_of(14), 0);
    }
}
