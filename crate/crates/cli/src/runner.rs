use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pbwforge_core::algebra::{cubic_gorenstein_series, AlgebraPresentation};
use pbwforge_core::classifier::{
    affine_equal, assemble, family_equals_solutions, map_from_coords, map_to_coords, solve_stage1, solve_stage2plus,
    sym_lower_family, sym_top_family, ym_lower_family, ym_top_family, LowerStages, StageCondition, StageSolution,
};
use pbwforge_core::lie::{bracket_deformation, BracketTable};
use pbwforge_core::linalg::{Scalar, SparseVec, Subspace};
use pbwforge_core::metric::random_scalar;
use pbwforge_core::pbw::{
    brute_force_oracle, conservation_residual, pbw_verdict, DeformationMap, OracleConfig, PbwVerdict, DEFAULT_MAX_DIM,
};
use pbwforge_core::super_ym::{
    centrality_check, shifted_generator_check, super_current_from_parameters, verify_super_identities,
};
use pbwforge_core::tensor::GradedMap;
use pbwforge_core::yang_mills::{
    current_from_parameters, random_antisymmetric, random_nonzero_vector, sample_parameters, verify_identities,
};

use crate::error::CliError;
use crate::problem::{build_problem, guard, parse_problem, CurrentSpec, Model, Problem, TaskKind, TaskSpec};
use crate::report::*;

pub const MAX_DIM_ENV: &str = "PBWFORGE_MAX_DIM";

/// Bound on sampled coefficients.
const SAMPLE_BOUND: i64 = 5;

/// Reads the resource limit from the environment, defaulting to `10^4`.
pub fn max_dim_from_env() -> Result<u128, CliError> {
    match std::env::var(MAX_DIM_ENV) {
        Err(_) => Ok(DEFAULT_MAX_DIM),
        Ok(v) => v.trim().parse::<u128>().map_err(|e| CliError::Invalid(format!("{MAX_DIM_ENV}={v:?}: {e}"))),
    }
}

/// Parses, builds and runs a problem. With `only`, runs the listed tasks of
/// that kind, or its default task when none is listed.
pub fn run_text(text: &str, only: Option<TaskKind>, limit: u128) -> Result<Report, CliError> {
    let spec = parse_problem(text)?;
    let problem = build_problem(spec, limit)?;
    run_problem(&problem, only, limit)
}

pub fn run_problem(p: &Problem, only: Option<TaskKind>, limit: u128) -> Result<Report, CliError> {
    let tasks: Vec<TaskSpec> = match only {
        None => p.spec.tasks.clone(),
        Some(kind) => {
            let listed: Vec<TaskSpec> = p.spec.tasks.iter().filter(|t| t.kind() == kind).cloned().collect();
            if listed.is_empty() {
                vec![kind.default_task()]
            } else {
                listed
            }
        }
    };
    if tasks.is_empty() {
        return Err(CliError::Invalid("problem lists no tasks".into()));
    }
    let mut provenance = Provenance { max_dim: limit, ..Provenance::default() };
    let mut reports = Vec::with_capacity(tasks.len());
    for t in &tasks {
        reports.push(run_task(p, t, limit, &mut provenance)?);
    }
    let passed = reports.iter().all(TaskReport::passed);
    Ok(Report {
        report_version: REPORT_VERSION,
        engine: Engine::current(),
        provenance,
        algebra: summarize(p),
        tasks: reports,
        passed,
    })
}

fn summarize(p: &Problem) -> AlgebraSummary {
    let a = p.model.algebra();
    AlgebraSummary {
        family: p.spec.algebra.family.label(),
        generators: a.dim_v(),
        degree: a.degree(),
        relations: a.relation_count(),
        metric: p.model.metric().map(|g| (0..g.dim()).map(|i| g.lower().row(i).to_vec()).collect()),
        current: match &p.spec.current {
            None => "none",
            Some(CurrentSpec::Parameters(_)) => "parameters",
            Some(CurrentSpec::SuperParameters(_)) => "super-parameters",
            Some(CurrentSpec::Raw(_)) => "raw",
            Some(CurrentSpec::Tail(_)) => "tail",
        },
    }
}

fn run_task(p: &Problem, t: &TaskSpec, limit: u128, prov: &mut Provenance) -> Result<TaskReport, CliError> {
    Ok(match t {
        TaskSpec::Identities { n_max } => TaskReport::Identities(identities(p, *n_max, limit)?),
        TaskSpec::Check {} => TaskReport::Check(check(p)?),
        TaskSpec::Classify { seed, samples } => {
            if *samples > 0 && seed.is_none() {
                return Err(CliError::Invalid("classify with samples needs a seed".into()));
            }
            if let Some(s) = seed {
                prov.seeds.push(*s);
            }
            TaskReport::Classify(classify(p, *seed, *samples)?)
        }
        TaskSpec::Oracle { n_max, cutoff } => {
            let cutoff = cutoff.unwrap_or(n_max.saturating_add(1));
            if cutoff < *n_max {
                return Err(CliError::Invalid(format!("oracle cutoff {cutoff} is below n_max {n_max}")));
            }
            prov.cutoffs.push(cutoff);
            TaskReport::Oracle(oracle(&p.deformation, *n_max, cutoff, limit)?)
        }
        TaskSpec::Hilbert { n_max } => TaskReport::Hilbert(hilbert(p, *n_max, limit)?),
        TaskSpec::Shifted { shift } => TaskReport::Shifted(shifted(p, shift.clone())?),
    })
}

fn identities(p: &Problem, n_max: Option<usize>, limit: u128) -> Result<IdentitiesReport, CliError> {
    let check = |name, holds| NamedCheck { name, holds };
    match &p.model {
        Model::YangMills(ym) => {
            let r = verify_identities(ym);
            let checks = vec![
                check("index-rotation", r.index_rotation),
                check("w-two-sided", r.w_two_sided),
                check("cyclic-sum", r.cyclic_sum),
                check("commutator-form", r.commutator_form),
                check("overlap-dimension-one", r.overlap_dim == 1),
                check("w-spans-overlap", r.w_spans_overlap),
            ];
            Ok(IdentitiesReport { passed: r.all_pass(), checks, overlap_dim: r.overlap_dim, centrality_n_max: None })
        }
        Model::SuperYangMills(sym) => {
            let n = n_max.unwrap_or(4);
            guard(sym.metric().dim(), n, limit)?;
            let r = verify_super_identities(sym);
            let c = centrality_check(sym, n)?;
            let checks = vec![
                check("index-antirotation", r.index_antirotation),
                check("w-two-sided", r.w_two_sided),
                check("anticommutator-form", r.anticommutator_form),
                check("overlap-dimension-one", r.overlap_dim == 1),
                check("w-spans-overlap", r.w_spans_overlap),
                check("quadratic-element-central", c.holds()),
            ];
            Ok(IdentitiesReport {
                passed: r.all_pass() && c.holds(),
                checks,
                overlap_dim: r.overlap_dim,
                centrality_n_max: Some(n),
            })
        }
        Model::Generic(_) => Err(CliError::Invalid("identities apply to the Yang-Mills families only".into())),
    }
}

pub fn condition_entries(v: &PbwVerdict) -> Vec<ConditionEntry> {
    let mut out = vec![ConditionEntry::new("overlap".into(), &v.j1)];
    for (i, s) in v.j2.iter().enumerate() {
        out.push(ConditionEntry::new(format!("level-{}", i + 1), s));
    }
    out.push(ConditionEntry::new("scalar".into(), &v.j3));
    out
}

fn check(p: &Problem) -> Result<CheckReport, CliError> {
    let v = pbw_verdict(&p.deformation);
    let conservation = match &p.model {
        Model::YangMills(_) => {
            let c = conservation_residual(&p.deformation)?;
            Some(ConservationEntry { vanishes: c.vanishes, residual: witness_terms(&c.residual) })
        }
        _ => None,
    };
    let side_conditions = p.ym_parameters.as_ref().map(|params| {
        let s = params.side_conditions();
        SideConditionEntry { cubic: s.cubic, quadratic: s.quadratic, linear: s.linear }
    });
    Ok(CheckReport {
        passed: v.overall,
        regular: v.overall,
        conditions: condition_entries(&v),
        witness: v.witness().map(witness_terms),
        conservation,
        side_conditions,
    })
}

fn condition_name(c: StageCondition) -> String {
    match c {
        StageCondition::Overlap => "overlap".into(),
        StageCondition::Level(j) => format!("level-{j}"),
        StageCondition::Scalar => "scalar".into(),
    }
}

fn stage_entry(s: &StageSolution) -> StageEntry {
    StageEntry {
        condition: condition_name(s.condition),
        unknown_degree: s.unknown_degree,
        feasible: s.feasible,
        dim: s.dim(),
        certificate: s.certificate.as_ref().map(|parts| {
            parts
                .iter()
                .map(|c| CertificateEntry {
                    condition: condition_name(c.condition),
                    overlap_index: c.overlap_index,
                    functional: witness_terms(&c.functional),
                })
                .collect()
        }),
    }
}

fn random_point(rng: &mut ChaCha8Rng, particular: Option<&[Scalar]>, space: &Subspace) -> Vec<Scalar> {
    let n = space.ambient_dim();
    let mut v = match particular {
        Some(p) => SparseVec::from_dense(p),
        None => SparseVec::new(),
    };
    for b in space.basis() {
        v = v.add_scaled(&random_scalar(rng, SAMPLE_BOUND), b);
    }
    v.to_dense(n)
}

/// Lower stages for `top`, the closure of one assembled point and, when
/// `expected` is given, whether the joint solution set matches it.
fn sample_entry(
    a: &AlgebraPresentation,
    top: &GradedMap,
    expected: Option<(Vec<Scalar>, Subspace)>,
    rng: &mut ChaCha8Rng,
    index: usize,
) -> Result<SampleEntry, CliError> {
    let lower: LowerStages = solve_stage2plus(a, top)?;
    let Some(joint) = &lower.joint else {
        return Ok(SampleEntry {
            index,
            lower_feasible: false,
            matches_family: expected.map(|_| false),
            closure: None,
        });
    };
    let matches_family = match expected {
        Some((p, h)) => Some(affine_equal(&joint.particular, &joint.homogeneous, &p, &h)?),
        None => None,
    };
    let point = random_point(rng, Some(&joint.particular), &joint.homogeneous);
    let closure = pbw_verdict(&assemble(a, top, &lower, &point)?).overall;
    Ok(SampleEntry { index, lower_feasible: true, matches_family, closure: Some(closure) })
}

fn classify(p: &Problem, seed: Option<u64>, samples: usize) -> Result<ClassifyReport, CliError> {
    let a = p.model.algebra();
    let d = a.dim_v();
    let n = a.degree();
    let k = a.relation_count();
    let top = solve_stage1(a);

    let family = match &p.model {
        Model::YangMills(ym) => Some(family_equals_solutions(&top.space, &ym_top_family(ym.metric()))?),
        Model::SuperYangMills(sym) => Some(family_equals_solutions(&top.space, &sym_top_family(sym.metric()))?),
        Model::Generic(_) => None,
    }
    .map(|f| FamilyEntry {
        family_dim: f.family_dim,
        solution_dim: f.solution_dim,
        family_in_solutions: f.family_in_solutions,
        solutions_in_family: f.solutions_in_family,
        equal: f.equal(),
    });

    let current_lower = match &p.spec.current {
        None => None,
        Some(_) => {
            let phi_top = p.deformation.level(n - 1);
            if top.space.contains(&SparseVec::from_dense(&map_to_coords(phi_top)))? {
                Some(solve_stage2plus(a, phi_top)?.stages.iter().map(stage_entry).collect())
            } else {
                let mut e = stage_entry(&top);
                e.feasible = false;
                Some(vec![e])
            }
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
    let mut entries = Vec::with_capacity(samples);
    for i in 0..samples {
        let entry = match &p.model {
            Model::YangMills(ym) => {
                let params = sample_parameters(&mut rng, d, SAMPLE_BOUND, None);
                let c = current_from_parameters(&params, ym.metric())?;
                let def = c.to_deformation(a)?;
                sample_entry(a, def.level(n - 1), Some(ym_lower_family(&params)), &mut rng, i)?
            }
            Model::SuperYangMills(sym) => {
                let b = random_nonzero_vector(&mut rng, d, SAMPLE_BOUND);
                let omega = random_antisymmetric(&mut rng, d, 2, SAMPLE_BOUND);
                let c = super_current_from_parameters(&b, &omega, sym.metric())?;
                let def = c.to_deformation(a)?;
                let zero = vec![Scalar::zero(); d * d + d];
                sample_entry(a, def.level(n - 1), Some((zero, sym_lower_family(&b))), &mut rng, i)?
            }
            Model::Generic(_) => {
                let coords = random_point(&mut rng, top.particular.as_deref(), &top.space);
                let phi_top = map_from_coords(d, n - 1, k, &coords)?;
                sample_entry(a, &phi_top, None, &mut rng, i)?
            }
        };
        entries.push(entry);
    }

    let family_ok = family.as_ref().is_none_or(|f| f.equal);
    let samples_ok = entries.iter().all(|s| match s.matches_family {
        Some(m) => m && s.closure == Some(true),
        None => s.closure != Some(false),
    });
    Ok(ClassifyReport {
        passed: family_ok && samples_ok,
        dimension_source: "derived-by-rank",
        top: stage_entry(&top),
        family,
        current_lower,
        seed,
        samples: entries,
    })
}

fn oracle(d: &DeformationMap, n_max: usize, cutoff: usize, limit: u128) -> Result<OracleTaskReport, CliError> {
    guard(d.algebra().dim_v(), cutoff, limit)?;
    let r = brute_force_oracle(d, OracleConfig { n_max, cutoff, max_dim: limit })?;
    Ok(OracleTaskReport {
        passed: r.is_consistent(),
        n_max: r.n_max,
        cutoff: r.cutoff,
        verdict: r.verdict,
        degrees: r.degrees,
    })
}

fn hilbert(p: &Problem, n_max: usize, limit: u128) -> Result<HilbertReport, CliError> {
    let a = p.model.algebra();
    guard(a.dim_v(), n_max, limit)?;
    let dims = a.graded_dims(n_max);
    let homogeneous = DeformationMap::homogeneous(a.clone());
    let r = brute_force_oracle(&homogeneous, OracleConfig { n_max, cutoff: n_max, max_dim: limit })?;
    let brute_dims: Vec<usize> = r
        .degrees
        .iter()
        .scan(0, |prev, deg| {
            let d = deg.quotient_dim - *prev;
            *prev = deg.quotient_dim;
            Some(d)
        })
        .collect();
    let recurrence = match p.model {
        Model::YangMills(_) | Model::SuperYangMills(_) => Some(cubic_gorenstein_series(a.dim_v(), n_max)),
        Model::Generic(_) => None,
    };
    let rec_ok = recurrence.as_ref().is_none_or(|r| r.iter().zip(&dims).all(|(x, y)| *x == *y as i128));
    Ok(HilbertReport { passed: dims == brute_dims && rec_ok, n_max, dims, brute_dims, recurrence })
}

fn shifted(p: &Problem, shift: Option<Scalar>) -> Result<ShiftedTaskReport, CliError> {
    let (Model::SuperYangMills(sym), Some((b, omega))) = (&p.model, &p.sym_parameters) else {
        return Err(CliError::Invalid("shifted needs the super-yang-mills family with super_parameters".into()));
    };
    let shift = shift.unwrap_or_else(Scalar::half);
    let r = shifted_generator_check(sym, b, omega, &shift)?;
    Ok(ShiftedTaskReport { passed: r.holds(), shift, commutator_form: r.commutator_form, hatted_form: r.hatted_form })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieDemo {
    So3,
    /// `[e_0, e_1] = e_1`, `[e_1, e_2] = e_0`, `[e_0, e_2] = 0`.
    Broken,
}

pub fn broken_bracket() -> BracketTable {
    let mut c = vec![Scalar::zero(); 27];
    let mut put = |i: usize, j: usize, k: usize| {
        c[(i * 3 + j) * 3 + k] = Scalar::one();
        c[(j * 3 + i) * 3 + k] = Scalar::from_int(-1);
    };
    put(0, 1, 1);
    put(1, 2, 0);
    BracketTable::new(3, c).expect("antisymmetric")
}

/// Quadratic sanity demo: the universal enveloping presentation of a bracket
/// on three generators, checked by the conditions and by the oracle.
pub fn demo_lie(which: LieDemo, n_max: usize, limit: u128) -> Result<Report, CliError> {
    let (name, table) = match which {
        LieDemo::So3 => ("so3", BracketTable::so3()),
        LieDemo::Broken => ("broken", broken_bracket()),
    };
    let def = bracket_deformation(&table)?;
    let v = pbw_verdict(&def);
    let cutoff = n_max.saturating_add(1);
    let o = oracle(&def, n_max, cutoff, limit)?;
    let a = def.algebra();
    let report = LieReport {
        passed: v.overall,
        bracket: name.into(),
        jacobi: table.satisfies_jacobi(),
        jacobiator: table.jacobiator().map(|(i, j, k, value)| JacobiatorEntry { triple: [i, j, k], value }),
        conditions: condition_entries(&v),
        oracle: o,
    };
    Ok(Report {
        report_version: REPORT_VERSION,
        engine: Engine::current(),
        provenance: Provenance { max_dim: limit, seeds: Vec::new(), cutoffs: vec![cutoff] },
        algebra: AlgebraSummary {
            family: "antisymmetrizer",
            generators: a.dim_v(),
            degree: a.degree(),
            relations: a.relation_count(),
            metric: None,
            current: "bracket",
        },
        passed: report.passed,
        tasks: vec![TaskReport::DemoLie(report)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broken_bracket_jacobiator_is_e0() {
        let (i, j, k, v) = broken_bracket().jacobiator().unwrap();
        assert_eq!((i, j, k), (0, 1, 2));
        assert_eq!(v, vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
    }

    #[test]
    fn demo_so3_passes_and_broken_fails() {
        let good = demo_lie(LieDemo::So3, 4, DEFAULT_MAX_DIM).unwrap();
        assert!(good.passed);
        let bad = demo_lie(LieDemo::Broken, 4, DEFAULT_MAX_DIM).unwrap();
        assert!(!bad.passed);
        let TaskReport::DemoLie(l) = &bad.tasks[0] else { panic!() };
        assert!(!l.oracle.passed);
    }

    #[test]
    fn hilbert_ym_matches_recurrence() {
        let r = run_text(
            r#"{"algebra": {"family": "yang-mills", "s": 2}, "tasks": [{"task": "hilbert", "n_max": 5}]}"#,
            None,
            DEFAULT_MAX_DIM,
        )
        .unwrap();
        let TaskReport::Hilbert(h) = &r.tasks[0] else { panic!() };
        assert_eq!(h.dims, vec![1, 3, 9, 24, 64, 168]);
        assert!(h.passed);
    }

    #[test]
    fn classify_needs_seed_for_samples() {
        let e = run_text(
            r#"{"algebra": {"family": "yang-mills", "s": 1}, "tasks": [{"task": "classify", "samples": 2}]}"#,
            None,
            DEFAULT_MAX_DIM,
        )
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn classify_generic_samples() {
        let r = run_text(
            r#"{"algebra": {"family": "antisymmetrizer", "s": 2, "N": 2},
                "tasks": [{"task": "classify", "seed": 3, "samples": 3}]}"#,
            None,
            DEFAULT_MAX_DIM,
        )
        .unwrap();
        assert!(r.passed, "{}", r.to_json());
    }
}
