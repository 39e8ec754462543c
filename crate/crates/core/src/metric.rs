//! Nondegenerate symmetric bilinear forms on `Q^{s+1}` and seeded random rationals.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// `g_{λμ}` together with its inverse `g^{λμ}` (`g_{λμ} g^{μν} = δ^ν_λ`).
///
/// All index raising and lowering in the crate goes through this type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    lower: Matrix,
    upper: Matrix,
}

impl Metric {
    /// From the covariant components `g_{λμ}`.
    pub fn from_lower(lower: Matrix) -> Result<Self> {
        if !lower.is_symmetric() {
            return Err(Error::AsymmetricMetric);
        }
        let upper = lower.inverse().ok_or(Error::DegenerateMetric)?;
        Ok(Metric { lower, upper })
    }

    pub fn euclidean(dim: usize) -> Self {
        Metric { lower: Matrix::identity(dim), upper: Matrix::identity(dim) }
    }

    /// `diag(-1, 1, …, 1)`.
    pub fn minkowski(dim: usize) -> Self {
        let mut g = Matrix::identity(dim);
        g.set(0, 0, Scalar::from_int(-1));
        Metric { lower: g.clone(), upper: g }
    }

    /// A random symmetric nondegenerate metric with entries `p/q`, `|p|, q ≤ bound`.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R, bound: i64) -> Self {
        loop {
            let mut g = Matrix::zeros(dim, dim);
            for r in 0..dim {
                for c in r..dim {
                    let x = random_scalar(rng, bound);
                    g.set(r, c, x.clone());
                    g.set(c, r, x);
                }
            }
            if let Ok(m) = Metric::from_lower(g) {
                return m;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.rows()
    }

    pub fn lower(&self) -> &Matrix {
        &self.lower
    }

    pub fn upper(&self) -> &Matrix {
        &self.upper
    }

    /// `g^{ab}`
    pub fn up(&self, a: usize, b: usize) -> &Scalar {
        self.upper.get(a, b)
    }

    /// `g_{ab}`
    pub fn down(&self, a: usize, b: usize) -> &Scalar {
        self.lower.get(a, b)
    }

    /// `v^a = g^{ab} v_b`
    pub fn raise(&self, covector: &[Scalar]) -> Vec<Scalar> {
        self.upper.mul_vec(covector).expect("dimension matches")
    }

    /// `v_a = g_{ab} v^b`
    pub fn lower_index(&self, vector: &[Scalar]) -> Vec<Scalar> {
        self.lower.mul_vec(vector).expect("dimension matches")
    }
}

/// `p/q` with `p ∈ [-bound, bound]`, `q ∈ [1, bound]`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Scalar {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Scalar::ratio(p, q)
}

pub fn random_nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Scalar {
    loop {
        let x = random_scalar(rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}
