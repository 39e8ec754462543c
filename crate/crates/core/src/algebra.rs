//! N-homogeneous algebras `A = T(V)/(R)`: ideal components, graded
//! dimensions and the overlap space `(R ⊗ V) ∩ (V ⊗ R)`.

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, Scalar, SparseVec, Subspace};
use crate::tensor::{checked_pow, lift_map, pow, side_tensor, GradedMap, Side, TensorElement};

/// A relation space `R ⊂ V^{⊗N}` together with a distinguished ordered basis
/// and a precomputed solver for coordinates in that basis.
#[derive(Clone, Debug)]
pub struct RelationBasis {
    dim_v: usize,
    degree: usize,
    vectors: Vec<SparseVec>,
    space: Subspace,
    // Row i: coefficients of the i-th canonical basis row in terms of `vectors`.
    to_basis: Matrix,
}

impl RelationBasis {
    pub fn new(dim_v: usize, degree: usize, vectors: Vec<SparseVec>) -> Result<Self> {
        let m = checked_pow(dim_v, degree)?;
        let k = vectors.len();
        let mut e = Echelon::new(m + k);
        for (a, v) in vectors.iter().enumerate() {
            if v.max_col().is_some_and(|c| c >= m) {
                return Err(Error::OutOfRange(format!("relation {a} has a coordinate outside V^⊗{degree}")));
            }
            let mut entries = v.entries().to_vec();
            entries.push((m + a, Scalar::one()));
            e.insert(&SparseVec::from_sorted_unchecked(entries));
        }
        let rows = e.into_rref();
        let (left, right): (Vec<_>, Vec<_>) = rows.iter().partition(|r| r.leading().expect("nonzero").0 < m);
        if !right.is_empty() {
            return Err(Error::InvalidPresentation("relation basis is linearly dependent".into()));
        }
        let mut to_basis = Matrix::zeros(k, k);
        let mut basis_rows = Vec::with_capacity(k);
        for (i, r) in left.iter().enumerate() {
            let mut lhs = Vec::new();
            for (c, x) in r.iter() {
                if c < m {
                    lhs.push((c, x.clone()));
                } else {
                    to_basis.set(i, c - m, x.clone());
                }
            }
            basis_rows.push(SparseVec::from_sorted_unchecked(lhs));
        }
        let space = Subspace::from_rref_unchecked(m, basis_rows);
        Ok(RelationBasis { dim_v, degree, vectors, space, to_basis })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Coordinates of `y ∈ R` in the distinguished basis; `None` if `y ∉ R`.
    pub fn coordinates(&self, y: &SparseVec) -> Option<Vec<Scalar>> {
        let canon = self.space.coordinates(y).ok()??;
        let k = self.vectors.len();
        let mut out = vec![Scalar::zero(); k];
        for (i, ci) in canon.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (a, slot) in out.iter_mut().enumerate() {
                let t = self.to_basis.get(i, a);
                if !t.is_zero() {
                    *slot += ci * t;
                }
            }
        }
        Some(out)
    }

    /// Expresses `x ∈ V^{⊗(N+1)}` in the basis `{r_a ⊗ e_λ}` (right) or
    /// `{e_λ ⊗ r_a}` (left); the result is indexed `[a][λ]`.
    ///
    /// The outer letter splits `x` into slices, each solved against the
    /// relation basis.
    pub fn factor(&self, x: &SparseVec, side: Side) -> Result<Vec<Vec<Scalar>>> {
        let d = self.dim_v;
        let m = pow(d, self.degree);
        let mut slices: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
        for (i, c) in x.iter() {
            if i >= m * d {
                return Err(Error::OutOfRange(format!("coordinate {i} in V^⊗{}", self.degree + 1)));
            }
            let (l, inner) = match side {
                Side::Right => (i % d, i / d),
                Side::Left => (i / m, i % m),
            };
            slices[l].push((inner, c.clone()));
        }
        let mut out = vec![vec![Scalar::zero(); d]; self.len()];
        for (l, slice) in slices.into_iter().enumerate() {
            let y = SparseVec::from_entries(slice);
            if y.is_zero() {
                continue;
            }
            let coords = self.coordinates(&y).ok_or_else(|| {
                Error::NotInSubspace(match side {
                    Side::Right => format!("R ⊗ V (slice ending in letter {l})"),
                    Side::Left => format!("V ⊗ R (slice starting with letter {l})"),
                })
            })?;
            for (a, c) in coords.into_iter().enumerate() {
                out[a][l] = c;
            }
        }
        Ok(out)
    }
}

/// `A = T(V)/(R)` with `dim V = s + 1` generators and relations of degree `N`.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    relations: RelationBasis,
}

impl AlgebraPresentation {
    pub fn new(dim_v: usize, degree: usize, relations: Vec<SparseVec>) -> Result<Self> {
        if dim_v == 0 {
            return Err(Error::InvalidPresentation("at least one generator is required".into()));
        }
        if degree < 2 {
            return Err(Error::InvalidPresentation(format!("relation degree {degree} < 2")));
        }
        Ok(AlgebraPresentation { relations: RelationBasis::new(dim_v, degree, relations)? })
    }

    /// Relations given as homogeneous tensor elements of degree `degree`.
    pub fn from_elements(dim_v: usize, degree: usize, relations: &[TensorElement]) -> Result<Self> {
        let mut vecs = Vec::with_capacity(relations.len());
        for (a, r) in relations.iter().enumerate() {
            if r.dim_v() != dim_v {
                return Err(Error::Shape(format!("relation {a} uses {} generators", r.dim_v())));
            }
            if r.terms().keys().any(|w| w.degree() != degree) {
                return Err(Error::InvalidPresentation(format!("relation {a} is not homogeneous of degree {degree}")));
            }
            vecs.push(r.component(degree));
        }
        AlgebraPresentation::new(dim_v, degree, vecs)
    }

    pub fn dim_v(&self) -> usize {
        self.relations.dim_v
    }

    pub fn degree(&self) -> usize {
        self.relations.degree
    }

    pub fn relation_space(&self) -> &Subspace {
        self.relations.space()
    }

    pub fn relations(&self) -> &RelationBasis {
        &self.relations
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn relation_element(&self, a: usize) -> TensorElement {
        TensorElement::from_homogeneous(self.dim_v(), self.degree(), &self.relations.vectors[a])
    }

    pub fn relation_elements(&self) -> Vec<TensorElement> {
        (0..self.relation_count()).map(|a| self.relation_element(a)).collect()
    }

    /// Degree-`n` part of the two-sided ideal `(R)`.
    pub fn ideal_component(&self, n: usize) -> Subspace {
        self.ideal_components(n).pop().expect("n + 1 components")
    }

    /// `I_0, …, I_{n_max}`, built with `I_n = I_{n-1} ⊗ V + V^{⊗(n-N)} ⊗ R`.
    pub fn ideal_components(&self, n_max: usize) -> Vec<Subspace> {
        let d = self.dim_v();
        let big_n = self.degree();
        let mut out: Vec<Subspace> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let sub = if n < big_n {
                Subspace::zero(pow(d, n))
            } else if n == big_n {
                self.relation_space().clone()
            } else {
                let shifted = side_tensor(&out[n - 1], d, Side::Right);
                let prefix = pow(d, n - big_n);
                let block = pow(d, big_n);
                let fresh = (0..prefix)
                    .flat_map(|p| self.relations.space().basis().iter().map(move |r| r.map_cols(|c| p * block + c)));
                let gens: Vec<SparseVec> = shifted.basis().iter().cloned().chain(fresh).collect();
                Subspace::span(pow(d, n), gens).expect("in range")
            };
            out.push(sub);
        }
        out
    }

    /// `dim A_n = d^n - dim I_n`.
    pub fn graded_dim(&self, n: usize) -> usize {
        pow(self.dim_v(), n) - self.ideal_component(n).dim()
    }

    pub fn graded_dims(&self, n_max: usize) -> Vec<usize> {
        self.ideal_components(n_max).iter().enumerate().map(|(n, i)| pow(self.dim_v(), n) - i.dim()).collect()
    }

    /// `𝒲_{N+1} = (R ⊗ V) ∩ (V ⊗ R)`.
    pub fn overlap_space(&self) -> Subspace {
        let d = self.dim_v();
        let right = side_tensor(self.relation_space(), d, Side::Right);
        let left = side_tensor(self.relation_space(), d, Side::Left);
        right.intersect(&left).expect("same ambient")
    }

    /// `(φ ⊗ I)(x)` (right) or `(I ⊗ φ)(x)` (left) for `x` in `R ⊗ V` resp. `V ⊗ R`.
    pub fn apply_graded_map(&self, phi: &GradedMap, x: &SparseVec, side: Side) -> Result<SparseVec> {
        if phi.source_dim() != self.relation_count() || phi.dim_v() != self.dim_v() {
            return Err(Error::Shape("map source does not match the relation basis".into()));
        }
        let coords = self.relations.factor(x, side)?;
        Ok(lift_map(phi, &coords, side))
    }
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Relations `Σ_σ sgn(σ) x_{i_σ(1)} ⊗ … ⊗ x_{i_σ(N)}` over all `N`-subsets of
/// letters. For `N = 2` this presents the symmetric algebra.
pub fn build_antisymmetrizer_relations(dim_v: usize, degree: usize) -> Result<AlgebraPresentation> {
    let perms = permutations(degree);
    let mut rels = Vec::new();
    for subset in combinations(dim_v, degree) {
        let entries = perms.iter().map(|p| {
            let idx = p.iter().fold(0usize, |acc, &i| acc * dim_v + subset[i]);
            (idx, Scalar::from_int(permutation_sign(p)))
        });
        rels.push(SparseVec::from_entries(entries));
    }
    AlgebraPresentation::new(dim_v, degree, rels)
}

/// Coefficients of `(1 - d t + d t³ - t⁴)^{-1}`, the Hilbert series forced by
/// a Koszul, Gorenstein cubic algebra of global dimension 3 on `d` generators
/// with `d` relations.
pub fn cubic_gorenstein_series(dim_v: usize, n_max: usize) -> Vec<i128> {
    let d = dim_v as i128;
    let mut a: Vec<i128> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let at = |k: isize| if k < 0 { 0 } else { a[k as usize] };
        let n = n as isize;
        let v = if n == 0 { 1 } else { d * at(n - 1) - d * at(n - 3) + at(n - 4) };
        a.push(v);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Word;

    #[test]
    fn antisymmetrizer_dims() {
        let a = build_antisymmetrizer_relations(2, 2).unwrap();
        assert_eq!(a.relation_count(), 1);
        let r = a.relation_element(0);
        assert_eq!(r.coeff(&Word(vec![0, 1])), Scalar::one());
        assert_eq!(r.coeff(&Word(vec![1, 0])), -Scalar::one());
        assert_eq!(build_antisymmetrizer_relations(3, 2).unwrap().relation_count(), 3);
        assert_eq!(build_antisymmetrizer_relations(3, 3).unwrap().relation_count(), 1);
        assert_eq!(build_antisymmetrizer_relations(2, 3).unwrap().relation_count(), 0);
    }

    #[test]
    fn ideal_small_degrees() {
        let a = build_antisymmetrizer_relations(3, 2).unwrap();
        assert!(a.ideal_component(1).is_zero());
        assert_eq!(&a.ideal_component(2), a.relation_space());
        assert_eq!(a.graded_dim(0), 1);
        assert_eq!(a.graded_dim(1), 3);
    }

    #[test]
    fn symmetric_algebra_dims_are_binomials() {
        let a = build_antisymmetrizer_relations(3, 2).unwrap();
        let dims = a.graded_dims(6);
        let binom = |n: usize| (n + 1) * (n + 2) / 2;
        for (n, d) in dims.iter().enumerate() {
            assert_eq!(*d, binom(n), "degree {n}");
        }
    }

    #[test]
    fn dependent_relations_rejected() {
        let r = SparseVec::unit(1);
        assert!(AlgebraPresentation::new(2, 2, vec![r.clone(), r.scale(&Scalar::from_int(2))]).is_err());
        assert!(AlgebraPresentation::new(2, 1, vec![]).is_err());
        assert!(AlgebraPresentation::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn overlap_of_empty_relations() {
        let a = AlgebraPresentation::new(2, 3, vec![]).unwrap();
        assert!(a.overlap_space().is_zero());
    }

    #[test]
    fn relation_coordinates_in_distinguished_basis() {
        let r0 = SparseVec::from_entries([(0, Scalar::one()), (1, Scalar::one())]);
        let r1 = SparseVec::from_entries([(1, Scalar::one()), (3, Scalar::from_int(2))]);
        let a = AlgebraPresentation::new(2, 2, vec![r0.clone(), r1.clone()]).unwrap();
        let y = r0.scale(&Scalar::from_int(3)).add_scaled(&Scalar::ratio(-1, 2), &r1);
        let c = a.relations().coordinates(&y).unwrap();
        assert_eq!(c, vec![Scalar::from_int(3), Scalar::ratio(-1, 2)]);
        assert!(a.relations().coordinates(&SparseVec::unit(2)).is_none());
    }

    #[test]
    fn cubic_series_values() {
        assert_eq!(cubic_gorenstein_series(3, 7), vec![1, 3, 9, 24, 64, 168, 441, 1155]);
    }

    #[test]
    fn lifted_map_on_rank_one_relation() {
        // R = span{e0⊗e1}, φ_1(r) = e1; (φ⊗I)(r⊗e0) = e1⊗e0.
        let a = AlgebraPresentation::new(2, 2, vec![SparseVec::unit(1)]).unwrap();
        let phi = GradedMap::new(2, 1, Matrix::from_i64(&[&[0], &[1]])).unwrap();
        let x = SparseVec::unit(2); // word (0,1,0)
        let y = a.apply_graded_map(&phi, &x, Side::Right).unwrap();
        assert_eq!(y, SparseVec::unit(2)); // word (1,0)
        let zero = GradedMap::zero(2, 1, 1);
        assert!(a.apply_graded_map(&zero, &x, Side::Right).unwrap().is_zero());
        // (0,0,0) is not in R ⊗ V.
        assert!(a.apply_graded_map(&phi, &SparseVec::unit(0), Side::Right).is_err());
    }
}
