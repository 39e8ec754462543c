//! Exact dense/sparse linear algebra over the rationals.
//!
//! All pivoting is deterministic: the pivot of a row is its first nonzero
//! column in index order, so every reduced form is reproducible.

mod echelon;
mod matrix;
mod scalar;
mod sparse;
mod subspace;

pub use matrix::{AffineSolution, Matrix};
pub use scalar::Scalar;
pub use sparse::SparseVec;
pub use subspace::Subspace;

pub(crate) use echelon::Echelon;

/// `rref(m)` as a free function.
pub fn rref(m: &Matrix) -> Matrix {
    m.rref()
}

pub fn kernel(m: &Matrix) -> Subspace {
    m.kernel()
}
