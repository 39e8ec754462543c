use pbwforge_core::lie::{bracket_deformation, BracketTable};
use pbwforge_core::linalg::{Matrix, Scalar};
use pbwforge_core::metric::{random_nonzero_scalar, random_scalar, Metric};
use pbwforge_core::pbw::{pbw_verdict, DeformationMap};
use pbwforge_core::yang_mills::{
    build_ym, current_from_parameters, current_to_deformation, sample_parameters, SideCondition,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ym_sample(seed: u64) -> DeformationMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = rng.gen_range(2..=3);
    let g = if rng.gen_bool(0.5) { Metric::euclidean(dim) } else { Metric::random(dim, &mut rng, 4) };
    let violate = match rng.gen_range(0..4) {
        0 => Some(SideCondition::Cubic),
        1 => Some(SideCondition::Quadratic),
        2 => Some(SideCondition::Linear),
        _ => None,
    };
    let p = sample_parameters(&mut rng, dim, 6, violate);
    let ym = build_ym(dim - 1, &g).unwrap();
    current_to_deformation(&current_from_parameters(&p, &g).unwrap(), &ym).unwrap()
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, random_scalar(rng, 4));
            }
        }
        if m.inverse().is_some() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_ignores_relation_basis(seed in any::<u64>()) {
        let d = ym_sample(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let change = random_invertible(&mut rng, d.algebra().relation_count());
        let v1 = pbw_verdict(&d);
        let v2 = pbw_verdict(&d.rebased(&change).unwrap());
        prop_assert_eq!(v1.overall, v2.overall);
        prop_assert_eq!(v1.j1.holds(), v2.j1.holds());
        prop_assert_eq!(v1.j3.holds(), v2.j3.holds());
        for (a, b) in v1.j2.iter().zip(&v2.j2) {
            prop_assert_eq!(a.holds(), b.holds());
        }
    }

    #[test]
    fn verdict_ignores_filtration_rescaling(seed in any::<u64>()) {
        let d = ym_sample(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xca1e);
        let t: Scalar = random_nonzero_scalar(&mut rng, 7);
        prop_assert_eq!(pbw_verdict(&d).overall, pbw_verdict(&d.rescaled(&t)).overall);
    }

    #[test]
    fn quadratic_verdict_is_jacobi(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = rng.gen_range(2..=4);
        let table = if rng.gen_bool(0.3) { BracketTable::so3() } else { BracketTable::random(&mut rng, dim, 2) };
        let v = pbw_verdict(&bracket_deformation(&table).unwrap());
        prop_assert_eq!(v.overall, table.satisfies_jacobi());
        prop_assert_eq!(v.overall, v.witness().is_none());
    }
}
