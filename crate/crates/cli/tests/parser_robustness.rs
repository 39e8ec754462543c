use std::path::Path;

use proptest::prelude::*;

use pbwforge_cli::{build_problem, parse_problem};
use pbwforge_core::linalg::Scalar;

fn corpus(target: &str) -> Vec<Vec<u8>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<Vec<u8>> =
        std::fs::read_dir(dir).unwrap().map(|e| std::fs::read(e.unwrap().path()).unwrap()).collect();
    out.sort();
    out
}

fn problem_input(data: &[u8]) {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(spec) = parse_problem(text) {
            let _ = build_problem(spec, 300);
        }
    }
}

fn scalar_input(data: &[u8]) {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(x) = text.parse::<Scalar>() {
            assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
        }
        let _ = serde_json::from_str::<Scalar>(text);
    }
}

#[test]
fn problem_corpus_replays() {
    let seeds = corpus("parse_problem");
    assert!(seeds.len() >= 5);
    for s in &seeds {
        problem_input(s);
    }
}

#[test]
fn scalar_corpus_replays() {
    let seeds = corpus("parse_scalar");
    assert!(seeds.len() >= 10);
    for s in &seeds {
        scalar_input(s);
    }
}

proptest! {
    #[test]
    fn arbitrary_bytes_never_panic(data in proptest::collection::vec(any::<u8>(), 0..256)) {
        problem_input(&data);
        scalar_input(&data);
    }

    #[test]
    fn mutated_problems_never_panic(pos in 0usize..400, byte in any::<u8>(), which in 0usize..9) {
        let seeds = corpus("parse_problem");
        let mut s = seeds[which % seeds.len()].clone();
        if !s.is_empty() {
            let i = pos % s.len();
            s[i] = byte;
        }
        problem_input(&s);
    }

    #[test]
    fn rationals_round_trip(p in any::<i64>(), q in 1i64..1_000_000) {
        let text = format!("{p}/{q}");
        let x: Scalar = text.parse().unwrap();
        prop_assert_eq!(x.clone(), Scalar::ratio(p, q));
        scalar_input(text.as_bytes());
    }
}
