//! Release acceptance run. Prints one line per criterion and exits non-zero
//! if any fails or overruns its time budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pbwforge_core::algebra::cubic_gorenstein_series;
use pbwforge_core::classifier::{family_equals_solutions, solve_stage1, sym_top_family, ym_top_family};
use pbwforge_core::current::Current;
use pbwforge_core::lie::{bracket_deformation, BracketTable};
use pbwforge_core::linalg::Scalar;
use pbwforge_core::metric::Metric;
use pbwforge_core::pbw::{brute_force_oracle, conservation_residual, pbw_verdict, OracleConfig, OracleVerdict};
use pbwforge_core::super_ym::{
    build_sym, centrality_check, shifted_generator_check, super_current_from_parameters, verify_super_identities,
};
use pbwforge_core::tensor::Word;
use pbwforge_core::yang_mills::{
    build_ym, current_from_parameters, random_antisymmetric, random_nonzero_vector, random_symmetric,
    sample_parameters, verify_identities, SideCondition,
};

type Outcome = Result<String, String>;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn metrics(dim: usize, rng: &mut ChaCha8Rng, random: usize) -> Vec<(String, Metric)> {
    let mut out =
        vec![("euclidean".to_string(), Metric::euclidean(dim)), ("minkowski".to_string(), Metric::minkowski(dim))];
    for i in 0..random {
        out.push((format!("random#{i}"), Metric::random(dim, rng, 4)));
    }
    out
}

fn structural_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cases = 0;
    for s in 1..=3 {
        for (name, g) in metrics(s + 1, &mut rng, 1) {
            let ym = build_ym(s, &g).map_err(|e| e.to_string())?;
            let r = verify_identities(&ym);
            ensure(r.all_pass() && r.overlap_dim == 1, || format!("yang-mills s={s} {name}: {r:?}"))?;
            let sym = build_sym(s, &g).map_err(|e| e.to_string())?;
            let r = verify_super_identities(&sym);
            ensure(r.all_pass() && r.overlap_dim == 1, || format!("super s={s} {name}: {r:?}"))?;
            let c = centrality_check(&sym, 4).map_err(|e| e.to_string())?;
            ensure(c.holds(), || format!("super s={s} {name}: quadratic element not central {c:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (s, metric) cases, both families"))
}

fn ym_currents() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut forward = 0;
    for i in 0..27 {
        let s = 1 + i % 3;
        let g = if i % 2 == 0 { Metric::minkowski(s + 1) } else { Metric::random(s + 1, &mut rng, 3) };
        let ym = build_ym(s, &g).map_err(|e| e.to_string())?;
        let p = sample_parameters(&mut rng, s + 1, 5, None);
        let d =
            current_from_parameters(&p, &g).and_then(|c| c.to_deformation(ym.algebra())).map_err(|e| e.to_string())?;
        ensure(pbw_verdict(&d).overall, || format!("forward sample {i} (s={s}) rejected"))?;
        forward += 1;
    }
    let mut reverse = 0;
    for which in SideCondition::ALL {
        for i in 0..10 {
            let s = 1 + i % 3;
            let g = Metric::euclidean(s + 1);
            let ym = build_ym(s, &g).map_err(|e| e.to_string())?;
            let p = sample_parameters(&mut rng, s + 1, 5, Some(which));
            let sc = p.side_conditions();
            ensure(!sc.all(), || format!("{which:?} sample {i} did not violate anything"))?;
            let d = current_from_parameters(&p, &g)
                .and_then(|c| c.to_deformation(ym.algebra()))
                .map_err(|e| e.to_string())?;
            ensure(!pbw_verdict(&d).overall, || format!("{which:?}-violating sample {i} (s={s}) accepted"))?;
            reverse += 1;
        }
    }
    Ok(format!("{forward} forward accepted, {reverse} violating rejected"))
}

fn sym_currents() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut forward, mut sym_part, mut wrong_const) = (0, 0, 0);
    for i in 0..30 {
        let s = 1 + i % 3;
        let d = s + 1;
        let g = if i % 2 == 0 { Metric::minkowski(d) } else { Metric::random(d, &mut rng, 3) };
        let sym = build_sym(s, &g).map_err(|e| e.to_string())?;
        let b = random_nonzero_vector(&mut rng, d, 5);
        let omega = loop {
            let w = random_antisymmetric(&mut rng, d, 2, 5);
            if (0..d).any(|a| !(0..d).map(|r| &w[a * d + r] * &b[r]).sum::<Scalar>().is_zero()) {
                break w;
            }
        };
        let c = super_current_from_parameters(&b, &omega, &g).map_err(|e| e.to_string())?;
        let ok = pbw_verdict(&c.to_deformation(sym.algebra()).map_err(|e| e.to_string())?).overall;
        ensure(ok, || format!("forward sample {i} (s={s}) rejected"))?;
        forward += 1;

        let mut bad = c.clone();
        let sp = random_symmetric(&mut rng, d, 2, &b, i % 2 == 0, 5);
        if sp.iter().any(|x| !x.is_zero()) {
            for a in 0..d {
                for r in 0..d {
                    let v = bad.linear(a, r) + &sp[a * d + r];
                    bad.set_linear(a, r, v);
                }
            }
            let ok = pbw_verdict(&bad.to_deformation(sym.algebra()).map_err(|e| e.to_string())?).overall;
            ensure(!ok, || format!("symmetric perturbation of sample {i} accepted"))?;
            sym_part += 1;
        }

        let mut bad: Current = c.clone();
        for r in 0..d {
            let v = -bad.constant(r);
            bad.set_constant(r, v);
        }
        let ok = pbw_verdict(&bad.to_deformation(sym.algebra()).map_err(|e| e.to_string())?).overall;
        ensure(!ok, || format!("negated constant term of sample {i} accepted"))?;
        wrong_const += 1;
    }
    ensure(sym_part >= 10, || "too few symmetric perturbations".into())?;
    Ok(format!(
        "{forward} forward accepted, {sym_part} symmetric and {wrong_const} wrong-constant perturbations rejected"
    ))
}

fn classification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut dims = Vec::new();
    for s in 1..=3 {
        for (name, g) in metrics(s + 1, &mut rng, 0) {
            let ym = build_ym(s, &g).map_err(|e| e.to_string())?;
            let st = solve_stage1(ym.algebra());
            let f = family_equals_solutions(&st.space, &ym_top_family(&g)).map_err(|e| e.to_string())?;
            ensure(f.equal(), || format!("yang-mills s={s} {name}: {f:?}"))?;
            let sym = build_sym(s, &g).map_err(|e| e.to_string())?;
            let st2 = solve_stage1(sym.algebra());
            let f2 = family_equals_solutions(&st2.space, &sym_top_family(&g)).map_err(|e| e.to_string())?;
            ensure(f2.equal(), || format!("super s={s} {name}: {f2:?}"))?;
            dims.push(format!("s={s}:{}/{}", f.solution_dim, f2.solution_dim));
        }
    }
    Ok(format!("two-sided inclusion, dims (ym/super) {}", dims.join(" ")))
}

fn triangle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = 2;
    let (mut regular, mut irregular) = (0, 0);
    for i in 0..50 {
        let g = if i % 2 == 0 { Metric::euclidean(3) } else { Metric::minkowski(3) };
        let ym = build_ym(s, &g).map_err(|e| e.to_string())?;
        let violate = match i % 4 {
            0 | 2 => None,
            _ => Some(SideCondition::ALL[(i / 4) % 3]),
        };
        let p = sample_parameters(&mut rng, 3, 4, violate);
        let d =
            current_from_parameters(&p, &g).and_then(|c| c.to_deformation(ym.algebra())).map_err(|e| e.to_string())?;
        let verdict = pbw_verdict(&d).overall;
        let conserved = conservation_residual(&d).map_err(|e| e.to_string())?.vanishes;
        let oracle = brute_force_oracle(&d, OracleConfig::new(5).with_cutoff(6)).map_err(|e| e.to_string())?;
        if verdict != conserved || verdict != oracle.is_consistent() {
            return Err(format!(
                "sample {i}: pbw_verdict={verdict} conservation={conserved} oracle={:?}",
                oracle.verdict
            ));
        }
        if verdict {
            regular += 1;
        } else {
            irregular += 1;
        }
    }
    ensure(regular >= 10 && irregular >= 10, || format!("unbalanced mix {regular}/{irregular}"))?;
    Ok(format!("50 currents ({regular} regular, {irregular} not), zero discrepancies"))
}

fn hilbert() -> Outcome {
    let expected = [1usize, 3, 9, 24, 64, 168];
    let rec = cubic_gorenstein_series(3, 5);
    ensure(rec.iter().zip(expected).all(|(a, b)| *a == b as i128), || format!("recurrence gives {rec:?}"))?;
    for g in [Metric::euclidean(3), Metric::minkowski(3)] {
        for (name, a) in [
            ("yang-mills", build_ym(2, &g).map_err(|e| e.to_string())?.algebra().clone()),
            ("super", build_sym(2, &g).map_err(|e| e.to_string())?.algebra().clone()),
        ] {
            let dims = a.graded_dims(5);
            ensure(dims == expected, || format!("{name}: graded dims {dims:?}"))?;
            let h = pbwforge_core::pbw::DeformationMap::homogeneous(a);
            let o = brute_force_oracle(&h, OracleConfig::new(5).with_cutoff(5)).map_err(|e| e.to_string())?;
            let mut prev = 0;
            for deg in &o.degrees {
                ensure(deg.quotient_dim - prev == expected[deg.degree], || {
                    format!("{name}: brute degree {} gives {}", deg.degree, deg.quotient_dim - prev)
                })?;
                prev = deg.quotient_dim;
            }
        }
    }
    Ok("1 3 9 24 64 168 from brute span, ideal and recurrence".into())
}

fn quadratic() -> Outcome {
    let so3 = bracket_deformation(&BracketTable::so3()).map_err(|e| e.to_string())?;
    ensure(pbw_verdict(&so3).overall, || "so3 rejected".into())?;
    let o = brute_force_oracle(&so3, OracleConfig::new(6).with_cutoff(7)).map_err(|e| e.to_string())?;
    for deg in &o.degrees {
        let n = deg.degree;
        let cumulative: usize = (0..=n).map(|k| (k + 1) * (k + 2) / 2).sum();
        ensure(deg.quotient_dim == cumulative && deg.expected_dim == cumulative, || {
            format!("so3 degree {n}: {deg:?}")
        })?;
    }
    ensure(o.is_consistent(), || "so3 oracle inconsistent".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut detail = Vec::new();
    for _ in 0..3 {
        let t = BracketTable::random_broken(&mut rng, 3, 4);
        let (_, _, _, jac) = t.jacobiator().ok_or("no jacobiator")?;
        let def = bracket_deformation(&t).map_err(|e| e.to_string())?;
        let v = pbw_verdict(&def);
        ensure(!v.overall, || "broken bracket accepted".into())?;
        let w = v.witness().ok_or("no witness")?;
        // The witness is a degree-1 element of the ideal, proportional to the Jacobiator.
        ensure(w.max_degree() == 1, || format!("witness degree {}", w.max_degree()))?;
        let wv: Vec<Scalar> = (0..3).map(|k| w.coeff(&Word(vec![k]))).collect();
        let pivot = (0..3).find(|&k| !jac[k].is_zero()).ok_or("zero jacobiator")?;
        let ratio = &wv[pivot] / &jac[pivot];
        ensure(!ratio.is_zero() && (0..3).all(|k| wv[k] == &ratio * &jac[k]), || {
            format!("witness {wv:?} vs jacobiator {jac:?}")
        })?;
        let o = brute_force_oracle(&def, OracleConfig::new(6).with_cutoff(7)).map_err(|e| e.to_string())?;
        ensure(o.verdict == OracleVerdict::Fail { degree: 1 }, || format!("oracle verdict {:?}", o.verdict))?;
        detail.push("fail@1");
    }
    Ok(format!("so3 matches C(n+2,2) to degree 6; broken brackets: {}", detail.join(", ")))
}

fn shifted() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut n = 0;
    for i in 0..12 {
        let s = 1 + i % 3;
        let d = s + 1;
        let g = if i % 2 == 0 { Metric::minkowski(d) } else { Metric::random(d, &mut rng, 3) };
        let sym = build_sym(s, &g).map_err(|e| e.to_string())?;
        let b = random_nonzero_vector(&mut rng, d, 5);
        let omega = random_antisymmetric(&mut rng, d, 2, 5);
        let good = shifted_generator_check(&sym, &b, &omega, &Scalar::half()).map_err(|e| e.to_string())?;
        ensure(good.holds(), || format!("sample {i}: {good:?}"))?;
        let bad = shifted_generator_check(&sym, &b, &omega, &Scalar::one()).map_err(|e| e.to_string())?;
        ensure(bad.commutator_form && !bad.hatted_form, || format!("control {i}: {bad:?}"))?;
        n += 1;
    }
    Ok(format!("{n} samples equal P; shift factor 1 rejected in every control"))
}

fn determinism() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems");
    let mut files: Vec<_> = std::fs::read_dir(&dir).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    files.sort();
    for f in &files {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_pbwforge"))
                .env_remove("PBWFORGE_MAX_DIM")
                .arg("run")
                .arg("--input")
                .arg(f)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.code().is_some_and(|c| c <= 1), || format!("{}: exit {:?}", f.display(), a.status.code()))?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || format!("{}: reports differ", f.display()))?;
    }
    Ok(format!("{} problem files, byte-identical reruns", files.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 structural identities", structural_identities, 10),
        ("2 yang-mills currents", ym_currents, 30),
        ("3 super yang-mills currents", sym_currents, 30),
        ("4 classification equality", classification, 60),
        ("5 equivalence triangle", triangle, 600),
        ("6 hilbert coefficients", hilbert, 120),
        ("7 quadratic sanity", quadratic, 30),
        ("8 shifted generators", shifted, 10),
        ("9 determinism", determinism, 600),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for (name, f, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        match outcome {
            Ok(detail) if !over => println!("PASS criterion {name}: {detail} [{:.1}s]", took.as_secs_f64()),
            Ok(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: over the {budget}s budget ({detail}) [{:.1}s]", took.as_secs_f64());
            }
            Err(e) => {
                failures += 1;
                println!("FAIL criterion {name}: {e} [{:.1}s]", took.as_secs_f64());
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
