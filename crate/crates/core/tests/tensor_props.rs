use pbwforge_core::algebra::AlgebraPresentation;
use pbwforge_core::linalg::{Matrix, Scalar, SparseVec};
use pbwforge_core::tensor::{index_word, lift_map, word_index, GradedMap, Side, TensorElement, Word};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3).prop_map(|(p, q)| Scalar::ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_index_round_trip(d in 1usize..5, n in 0usize..5, seed in any::<u64>()) {
        let total = d.pow(n as u32);
        let i = (seed as usize) % total;
        let w = index_word(d, n, i).unwrap();
        prop_assert_eq!(word_index(d, &w).unwrap(), i);
    }

    /// `(φ⊗I)(r_a⊗e_l)` computed through factor coordinates agrees with the
    /// direct tensor product `φ(r_a)⊗e_l`, and likewise on the left.
    #[test]
    fn lifted_map_matches_kronecker(entries in proptest::collection::vec(scalar(), 9), a in 0usize..2, l in 0usize..3) {
        let d = 3;
        let rels = vec![SparseVec::unit(1) , SparseVec::from_entries([(5, Scalar::one()), (7, Scalar::from_int(-1))])];
        let alg = AlgebraPresentation::new(d, 2, rels).unwrap();
        let mut m = Matrix::zeros(3, 2);
        for (i, x) in entries.iter().take(6).enumerate() {
            m.set(i % 3, i / 3, x.clone());
        }
        let phi = GradedMap::new(d, 1, m).unwrap();
        let r = alg.relation_element(a);
        let e = TensorElement::generator(d, l);
        let image = TensorElement::from_homogeneous(d, 1, &phi.image_of_basis(a));

        let x = r.tensor_product(&e).unwrap().component(3);
        let coords = alg.relations().factor(&x, Side::Right).unwrap();
        prop_assert_eq!(lift_map(&phi, &coords, Side::Right), image.tensor_product(&e).unwrap().component(2));

        let y = e.tensor_product(&r).unwrap().component(3);
        let coords = alg.relations().factor(&y, Side::Left).unwrap();
        prop_assert_eq!(lift_map(&phi, &coords, Side::Left), e.tensor_product(&image).unwrap().component(2));
    }

    #[test]
    fn product_is_associative(a in proptest::collection::vec(scalar(), 3), b in proptest::collection::vec(scalar(), 3), c in proptest::collection::vec(scalar(), 3)) {
        let d = 3;
        let mk = |v: &Vec<Scalar>| {
            TensorElement::from_terms(d, v.iter().enumerate().map(|(i, x)| (Word(vec![i]), x.clone()))).unwrap()
                + TensorElement::scalar(d, v[0].clone())
        };
        let (x, y, z) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }
}
