//! Quadratic case: `U = T(V)/(x⊗y - y⊗x - [x, y])` for a bracket table on `V`.
//!
//! Here the PBW conditions reduce to the Jacobi identity, which
//! [`BracketTable::jacobiator`] checks by direct expansion.

use rand::Rng;

use crate::algebra::{build_antisymmetrizer_relations, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::metric::random_scalar;
use crate::pbw::DeformationMap;
use crate::tensor::GradedMap;

/// Structure constants `[e_i, e_j] = c^k_{ij} e_k`, flat index `(i·d + j)·d + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    dim: usize,
    c: Vec<Scalar>,
}

impl BracketTable {
    pub fn new(dim: usize, c: Vec<Scalar>) -> Result<Self> {
        if c.len() != dim.pow(3) {
            return Err(Error::Shape(format!("bracket on {dim} generators needs {} constants", dim.pow(3))));
        }
        let t = BracketTable { dim, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if t.get(i, j, k) != &-t.get(j, i, k) {
                        return Err(Error::Symmetry("bracket must be antisymmetric".into()));
                    }
                }
            }
        }
        Ok(t)
    }

    /// `[e_0, e_1] = e_2` and cyclic.
    pub fn so3() -> Self {
        let mut c = vec![Scalar::zero(); 27];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[(i * 3 + j) * 3 + k] = Scalar::one();
            c[(j * 3 + i) * 3 + k] = Scalar::from_int(-1);
        }
        BracketTable { dim: 3, c }
    }

    /// Random antisymmetric table; no Jacobi constraint imposed.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> Self {
        let mut c = vec![Scalar::zero(); dim.pow(3)];
        for i in 0..dim {
            for j in i + 1..dim {
                for k in 0..dim {
                    let x = random_scalar(rng, bound);
                    c[(j * dim + i) * dim + k] = -x.clone();
                    c[(i * dim + j) * dim + k] = x;
                }
            }
        }
        BracketTable { dim, c }
    }

    /// A random table that violates the Jacobi identity.
    pub fn random_broken<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> Self {
        assert!(dim >= 3, "every antisymmetric bracket on fewer than 3 generators is a Lie bracket");
        loop {
            let t = BracketTable::random(rng, dim, bound);
            if t.jacobiator().is_some() {
                return t;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.c
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vec![Scalar::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let k = &x[i] * &y[j];
                for (l, o) in out.iter_mut().enumerate() {
                    *o += &k * self.get(i, j, l);
                }
            }
        }
        out
    }

    /// First triple `(i, j, k)` with `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] ≠ 0`,
    /// together with that value.
    pub fn jacobiator(&self) -> Option<(usize, usize, usize, Vec<Scalar>)> {
        let d = self.dim;
        let e =
            |i: usize| -> Vec<Scalar> { (0..d).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect() };
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let a = self.bracket(&self.bracket(&e(i), &e(j)), &e(k));
                    let b = self.bracket(&self.bracket(&e(j), &e(k)), &e(i));
                    let c = self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    let sum: Vec<Scalar> = a.iter().zip(&b).zip(&c).map(|((x, y), z)| x + y + z).collect();
                    if sum.iter().any(|x| !x.is_zero()) {
                        return Some((i, j, k, sum));
                    }
                }
            }
        }
        None
    }

    pub fn satisfies_jacobi(&self) -> bool {
        self.jacobiator().is_none()
    }
}

/// `φ_1(e_i⊗e_j - e_j⊗e_i) = [e_i, e_j]` over the symmetric-algebra presentation,
/// with `φ_0 = 0`.
pub fn bracket_deformation(table: &BracketTable) -> Result<DeformationMap> {
    let d = table.dim;
    let a: AlgebraPresentation = build_antisymmetrizer_relations(d, 2)?;
    let mut m = Matrix::zeros(d, a.relation_count());
    let mut col = 0;
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                m.set(k, col, table.get(i, j, k).clone());
            }
            col += 1;
        }
    }
    let phi1 = GradedMap::new(d, 1, m)?;
    let phi0 = GradedMap::zero(d, 0, a.relation_count());
    DeformationMap::new(a, vec![phi0, phi1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::pbw_verdict;
    use crate::tensor::Word;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn so3_is_lie() {
        let t = BracketTable::so3();
        assert!(t.satisfies_jacobi());
        let d = bracket_deformation(&t).unwrap();
        assert!(pbw_verdict(&d).overall);
        // e_0⊗e_1 - e_1⊗e_0 - e_2
        let p = d.deformed_relation(0);
        assert_eq!(p.coeff(&Word(vec![2])), Scalar::from_int(-1));
    }

    #[test]
    fn jacobi_matches_verdict() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let t = BracketTable::random(&mut rng, 3, 3);
            let v = pbw_verdict(&bracket_deformation(&t).unwrap());
            assert_eq!(v.overall, t.satisfies_jacobi());
        }
        let broken = BracketTable::random_broken(&mut rng, 3, 5);
        assert!(!pbw_verdict(&bracket_deformation(&broken).unwrap()).overall);
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let mut c = vec![Scalar::zero(); 8];
        c[1] = Scalar::one();
        assert!(BracketTable::new(2, c).is_err());
    }
}
