//! Cubic currents `J^ρ = j^{μνρ} e_μ⊗e_ν + j^{λρ} e_λ + j^ρ 1` attached to a
//! relation basis labelled by the generators, plus small helpers for flat
//! index tensors.
//!
//! Flat layout: `j3[(μ·d + ν)·d + ρ]`, `j2[λ·d + ρ]`, `j1[ρ]`. The relation
//! label `ρ` is always the last slot. For `d = 2`, `j3[3] = j^{011}` is the
//! coefficient of `e_0⊗e_1` in `J^1`.

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::pbw::DeformationMap;
use crate::tensor::{pow, GradedMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Current {
    dim: usize,
    j3: Vec<Scalar>,
    j2: Vec<Scalar>,
    j1: Vec<Scalar>,
}

impl Current {
    pub fn zero(dim: usize) -> Self {
        Current {
            dim,
            j3: vec![Scalar::zero(); dim * dim * dim],
            j2: vec![Scalar::zero(); dim * dim],
            j1: vec![Scalar::zero(); dim],
        }
    }

    pub fn from_parts(dim: usize, j3: Vec<Scalar>, j2: Vec<Scalar>, j1: Vec<Scalar>) -> Result<Self> {
        if j3.len() != dim * dim * dim || j2.len() != dim * dim || j1.len() != dim {
            return Err(Error::Shape(format!(
                "current of dimension {dim} needs {}, {} and {} coefficients",
                dim * dim * dim,
                dim * dim,
                dim
            )));
        }
        Ok(Current { dim, j3, j2, j1 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn j3(&self) -> &[Scalar] {
        &self.j3
    }

    pub fn j2(&self) -> &[Scalar] {
        &self.j2
    }

    pub fn j1(&self) -> &[Scalar] {
        &self.j1
    }

    /// `j^{μνρ}`
    pub fn cubic(&self, mu: usize, nu: usize, rho: usize) -> &Scalar {
        &self.j3[(mu * self.dim + nu) * self.dim + rho]
    }

    /// `j^{λρ}`
    pub fn linear(&self, lambda: usize, rho: usize) -> &Scalar {
        &self.j2[lambda * self.dim + rho]
    }

    /// `j^ρ`
    pub fn constant(&self, rho: usize) -> &Scalar {
        &self.j1[rho]
    }

    pub fn set_cubic(&mut self, mu: usize, nu: usize, rho: usize, v: Scalar) {
        let d = self.dim;
        self.j3[(mu * d + nu) * d + rho] = v;
    }

    pub fn set_linear(&mut self, lambda: usize, rho: usize, v: Scalar) {
        let d = self.dim;
        self.j2[lambda * d + rho] = v;
    }

    pub fn set_constant(&mut self, rho: usize, v: Scalar) {
        self.j1[rho] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.j3.iter().chain(&self.j2).chain(&self.j1).all(Scalar::is_zero)
    }

    /// `φ(r_ρ) = J^ρ` on an algebra whose `ρ`-th relation is labelled by `e_ρ`.
    pub fn to_deformation(&self, algebra: &AlgebraPresentation) -> Result<DeformationMap> {
        let d = self.dim;
        if algebra.dim_v() != d || algebra.degree() != 3 || algebra.relation_count() != d {
            return Err(Error::InvalidPresentation(format!("a current on {d} generators needs {d} cubic relations")));
        }
        let mut phi2 = Matrix::zeros(d * d, d);
        let mut phi1 = Matrix::zeros(d, d);
        let mut phi0 = Matrix::zeros(1, d);
        for rho in 0..d {
            for mu in 0..d {
                for nu in 0..d {
                    phi2.set(mu * d + nu, rho, self.cubic(mu, nu, rho).clone());
                }
                phi1.set(mu, rho, self.linear(mu, rho).clone());
            }
            phi0.set(0, rho, self.constant(rho).clone());
        }
        DeformationMap::new(
            algebra.clone(),
            vec![GradedMap::new(d, 0, phi0)?, GradedMap::new(d, 1, phi1)?, GradedMap::new(d, 2, phi2)?],
        )
    }

    pub fn from_deformation(map: &DeformationMap) -> Result<Current> {
        let a = map.algebra();
        let d = a.dim_v();
        if a.degree() != 3 || a.relation_count() != d {
            return Err(Error::InvalidPresentation("not a cubic current".into()));
        }
        let mut c = Current::zero(d);
        for rho in 0..d {
            for mu in 0..d {
                for nu in 0..d {
                    c.set_cubic(mu, nu, rho, map.level(2).matrix().get(mu * d + nu, rho).clone());
                }
                c.set_linear(mu, rho, map.level(1).matrix().get(mu, rho).clone());
            }
            c.set_constant(rho, map.level(0).matrix().get(0, rho).clone());
        }
        Ok(c)
    }
}

fn digits(mut i: usize, dim: usize, rank: usize) -> Vec<usize> {
    let mut out = vec![0; rank];
    for slot in (0..rank).rev() {
        out[slot] = i % dim;
        i /= dim;
    }
    out
}

fn flat(idx: &[usize], dim: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

/// Parity of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            match v[j].cmp(&v[j + 1]) {
                std::cmp::Ordering::Greater => {
                    v.swap(j, j + 1);
                    odd = !odd;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some((v, odd))
}

/// `t` is invariant under every swap of two slots.
pub fn is_totally_symmetric(t: &[Scalar], dim: usize, rank: usize) -> bool {
    (0..t.len()).all(|i| {
        let mut idx = digits(i, dim, rank);
        idx.sort_unstable();
        t[i] == t[flat(&idx, dim)]
    })
}

/// `t` changes sign under every swap of two slots.
pub fn is_totally_antisymmetric(t: &[Scalar], dim: usize, rank: usize) -> bool {
    (0..t.len()).all(|i| match sort_sign(&digits(i, dim, rank)) {
        None => t[i].is_zero(),
        Some((sorted, odd)) => {
            let base = &t[flat(&sorted, dim)];
            if odd {
                t[i] == -base
            } else {
                &t[i] == base
            }
        }
    })
}

/// `t^{…ρ} b_ρ`, contraction on the last slot.
pub fn contract_last(t: &[Scalar], dim: usize, b: &[Scalar]) -> Vec<Scalar> {
    t.chunks(dim).map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect()
}

/// Basis of totally symmetric rank-`rank` tensors, one per multiset of indices.
pub fn symmetric_basis(dim: usize, rank: usize) -> Vec<Vec<Scalar>> {
    let n = pow(dim, rank);
    let mut out = Vec::new();
    for i in 0..n {
        let idx = digits(i, dim, rank);
        if idx.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let mut t = vec![Scalar::zero(); n];
        for (k, slot) in t.iter_mut().enumerate() {
            let mut other = digits(k, dim, rank);
            other.sort_unstable();
            if other == idx {
                *slot = Scalar::one();
            }
        }
        out.push(t);
    }
    out
}

/// Basis of totally antisymmetric tensors, one per strictly increasing index set.
pub fn antisymmetric_basis(dim: usize, rank: usize) -> Vec<Vec<Scalar>> {
    let n = pow(dim, rank);
    let mut out = Vec::new();
    for i in 0..n {
        let idx = digits(i, dim, rank);
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            continue;
        }
        let mut t = vec![Scalar::zero(); n];
        for (k, slot) in t.iter_mut().enumerate() {
            if let Some((sorted, odd)) = sort_sign(&digits(k, dim, rank)) {
                if sorted == idx {
                    *slot = if odd { Scalar::from_int(-1) } else { Scalar::one() };
                }
            }
        }
        out.push(t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_antisymmetrizer_relations;

    #[test]
    fn layout_worked_example() {
        let mut c = Current::zero(2);
        c.set_cubic(0, 1, 1, Scalar::one());
        assert_eq!(c.j3()[3], Scalar::one());
        c.set_linear(1, 0, Scalar::from_int(5));
        assert_eq!(c.j2()[2], Scalar::from_int(5));
    }

    #[test]
    fn deformation_round_trip() {
        let a = build_antisymmetrizer_relations(3, 3).unwrap();
        assert!(Current::zero(3).to_deformation(&a).is_err());

        let mut ym_like = Vec::new();
        for rho in 0..3 {
            ym_like.push(crate::linalg::SparseVec::unit(rho * 9 + rho * 3 + rho));
        }
        let a = AlgebraPresentation::new(3, 3, ym_like).unwrap();
        let mut c = Current::zero(3);
        c.set_cubic(2, 0, 1, Scalar::ratio(1, 3));
        c.set_linear(1, 2, Scalar::from_int(-2));
        c.set_constant(0, Scalar::from_int(7));
        let d = c.to_deformation(&a).unwrap();
        assert_eq!(Current::from_deformation(&d).unwrap(), c);
        let tail = d.tail(1);
        assert_eq!(tail.coeff(&crate::tensor::Word(vec![2, 0])), Scalar::ratio(1, 3));
        let tail = d.tail(2);
        assert_eq!(tail.coeff(&crate::tensor::Word(vec![1])), Scalar::from_int(-2));
    }

    #[test]
    fn symmetry_bases() {
        assert_eq!(symmetric_basis(3, 3).len(), 10);
        assert_eq!(antisymmetric_basis(3, 3).len(), 1);
        assert_eq!(antisymmetric_basis(2, 3).len(), 0);
        assert_eq!(antisymmetric_basis(4, 2).len(), 6);
        for t in symmetric_basis(3, 3) {
            assert!(is_totally_symmetric(&t, 3, 3));
        }
        for t in antisymmetric_basis(4, 3) {
            assert!(is_totally_antisymmetric(&t, 4, 3));
            assert!(!is_totally_symmetric(&t, 4, 3));
        }
    }

    #[test]
    fn contraction() {
        let t: Vec<Scalar> = (0..4).map(Scalar::from_int).collect();
        let b = vec![Scalar::one(), Scalar::from_int(2)];
        assert_eq!(contract_last(&t, 2, &b), vec![Scalar::from_int(2), Scalar::from_int(8)]);
    }
}
