use pbwforge_core::algebra::{build_antisymmetrizer_relations, cubic_gorenstein_series};
use pbwforge_core::current::Current;
use pbwforge_core::lie::{bracket_deformation, BracketTable};
use pbwforge_core::linalg::Scalar;
use pbwforge_core::metric::Metric;
use pbwforge_core::pbw::{
    brute_force_oracle, conservation_residual, pbw_verdict, DeformationMap, OracleConfig, OracleVerdict,
};
use pbwforge_core::super_ym::build_sym;
use pbwforge_core::yang_mills::{
    build_ym, current_from_parameters, current_to_deformation, sample_parameters, SideCondition,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Graded dimensions from the brute-force quotient of the homogeneous algebra.
const CUBIC_THREE_GENERATORS: [usize; 6] = [1, 3, 9, 24, 64, 168];

fn per_degree(rep: &pbwforge_core::pbw::OracleReport) -> Vec<usize> {
    let mut prev = 0;
    rep.degrees
        .iter()
        .map(|d| {
            let x = d.quotient_dim - prev;
            prev = d.quotient_dim;
            x
        })
        .collect()
}

#[test]
fn cubic_hilbert_dims() {
    let series = cubic_gorenstein_series(3, 5);
    for g in [Metric::euclidean(3), Metric::minkowski(3)] {
        for alg in [build_ym(2, &g).unwrap().algebra().clone(), build_sym(2, &g).unwrap().algebra().clone()] {
            assert_eq!(alg.graded_dims(5), CUBIC_THREE_GENERATORS);
            let rep = brute_force_oracle(&DeformationMap::homogeneous(alg), OracleConfig::new(5)).unwrap();
            assert_eq!(per_degree(&rep), CUBIC_THREE_GENERATORS);
            let rec: Vec<usize> = series.iter().map(|&x| x as usize).collect();
            assert_eq!(rec, CUBIC_THREE_GENERATORS);
        }
    }
}

#[test]
fn non_conserved_current_fails_early() {
    let g = Metric::euclidean(3);
    let ym = build_ym(2, &g).unwrap();
    // j^{αβγ} from b = (1,0,0) and j^ρ = b^ρ, so j^ρ b_ρ = 1.
    let mut p = pbwforge_core::yang_mills::CurrentParameters::zero(3);
    p.b[0] = Scalar::one();
    let mut c = current_from_parameters(&p, &g).unwrap();
    c.set_constant(0, Scalar::one());
    let d = current_to_deformation(&c, &ym).unwrap();
    assert!(!pbw_verdict(&d).overall);

    let mut bare = Current::zero(3);
    bare.set_constant(0, Scalar::one());
    assert!(pbw_verdict(&current_to_deformation(&bare, &ym).unwrap()).overall);
    let rep = brute_force_oracle(&d, OracleConfig::new(3).with_cutoff(4)).unwrap();
    match rep.verdict {
        OracleVerdict::Fail { degree } => assert!(degree <= 3),
        OracleVerdict::Consistent => panic!("oracle missed the failure: {rep:?}"),
    }
    assert!(!conservation_residual(&d).unwrap().vanishes);
}

#[test]
fn zero_current_is_conserved() {
    let ym = build_ym(2, &Metric::minkowski(3)).unwrap();
    let d = current_to_deformation(&Current::zero(3), &ym).unwrap();
    let r = conservation_residual(&d).unwrap();
    assert!(r.vanishes);
    assert!(r.element.is_zero());
}

#[test]
fn regular_current_is_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let g = Metric::euclidean(3);
    let ym = build_ym(2, &g).unwrap();
    let p = sample_parameters(&mut rng, 3, 20, None);
    let d = current_to_deformation(&current_from_parameters(&p, &g).unwrap(), &ym).unwrap();
    assert!(pbw_verdict(&d).overall);
    assert!(conservation_residual(&d).unwrap().vanishes);
    assert!(brute_force_oracle(&d, OracleConfig::new(5)).unwrap().is_consistent());
}

#[test]
fn small_equivalence_triangle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = Metric::minkowski(2);
    let ym = build_ym(1, &g).unwrap();
    for violate in [None, Some(SideCondition::Cubic), Some(SideCondition::Quadratic), Some(SideCondition::Linear)] {
        let p = sample_parameters(&mut rng, 2, 20, violate);
        let d = current_to_deformation(&current_from_parameters(&p, &g).unwrap(), &ym).unwrap();
        let v = pbw_verdict(&d).overall;
        assert_eq!(v, violate.is_none());
        assert_eq!(conservation_residual(&d).unwrap().vanishes, v);
        assert_eq!(brute_force_oracle(&d, OracleConfig::new(5)).unwrap().is_consistent(), v);
    }
}

#[test]
fn so3_matches_symmetric_algebra() {
    let d = bracket_deformation(&BracketTable::so3()).unwrap();
    let rep = brute_force_oracle(&d, OracleConfig::new(6)).unwrap();
    assert!(rep.is_consistent());
    let binom: Vec<usize> = (0..=6).map(|n| (n + 1) * (n + 2) / 2).collect();
    assert_eq!(per_degree(&rep), binom);
    let sym = build_antisymmetrizer_relations(3, 2).unwrap();
    assert_eq!(sym.graded_dims(6), binom);
}

#[test]
fn broken_bracket_is_refuted() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let t = BracketTable::random_broken(&mut rng, 3, 5);
    let d = bracket_deformation(&t).unwrap();
    assert!(!pbw_verdict(&d).overall);
    assert!(!brute_force_oracle(&d, OracleConfig::new(3)).unwrap().is_consistent());
}
