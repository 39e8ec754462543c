use pbwforge_core::linalg::{Matrix, Scalar, SparseVec, Subspace};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn sparse_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![3 => Just(Scalar::zero()), 2 => scalar()]
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(sparse_scalar(), c), r)
            .prop_map(|rows| Matrix::from_rows(rows).unwrap())
    })
}

fn vectors(n: usize, dim: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    proptest::collection::vec(proptest::collection::vec(sparse_scalar(), dim), 0..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in matrix(6, 6)) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r);
    }

    #[test]
    fn row_rank_equals_column_rank(m in matrix(6, 7)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_is_annihilated(m in matrix(5, 7)) {
        let k = m.kernel();
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_sparse(v).is_zero());
        }
    }

    #[test]
    fn grassmann_identity(a in vectors(4, 6), b in vectors(4, 6)) {
        let u = Subspace::span_dense(6, &a).unwrap();
        let w = Subspace::span_dense(6, &b).unwrap();
        let sum = u.sum(&w).unwrap();
        let cap = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
        prop_assert!(cap.is_subspace_of(&u).unwrap());
        prop_assert!(cap.is_subspace_of(&w).unwrap());
    }

    #[test]
    fn affine_solutions_are_exact(
        rows in proptest::collection::vec(proptest::collection::vec(sparse_scalar(), 6), 1..=5),
        x in proptest::collection::vec(scalar(), 6),
    ) {
        let m = Matrix::from_rows(rows).unwrap();
        let rhs = m.mul_vec(&x).unwrap();
        let sol = m.solve_affine(&rhs).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&sol.particular).unwrap(), rhs);
        let diff: Vec<Scalar> = x.iter().zip(&sol.particular).map(|(a, b)| a - b).collect();
        prop_assert!(sol.homogeneous.contains(&SparseVec::from_dense(&diff)).unwrap());
    }

    #[test]
    fn span_is_canonical(a in vectors(4, 5), k in scalar()) {
        prop_assume!(!k.is_zero());
        let u = Subspace::span_dense(5, &a).unwrap();
        let scaled: Vec<Vec<Scalar>> = a.iter().rev().map(|v| v.iter().map(|x| x * &k).collect()).collect();
        prop_assert_eq!(Subspace::span_dense(5, &scaled).unwrap(), u);
    }
}
