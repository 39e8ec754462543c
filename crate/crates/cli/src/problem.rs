//! Problem files: strict JSON, exact rationals as `"p/q"` strings or integers.

use serde::Deserialize;

use pbwforge_core::algebra::{build_antisymmetrizer_relations, AlgebraPresentation};
use pbwforge_core::current::Current;
use pbwforge_core::linalg::{Matrix, Scalar, SparseVec};
use pbwforge_core::metric::Metric;
use pbwforge_core::pbw::DeformationMap;
use pbwforge_core::super_ym::{build_sym, super_current_from_parameters, SuperYangMills};
use pbwforge_core::tensor::{word_index, GradedMap, Word};
use pbwforge_core::yang_mills::{build_ym, current_from_parameters, CurrentParameters, YangMills};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

fn default_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(default = "default_version")]
    pub schema_version: u32,
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub current: Option<CurrentSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    YangMills,
    SuperYangMills,
    Antisymmetrizer,
    Custom,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::YangMills => "yang-mills",
            Family::SuperYangMills => "super-yang-mills",
            Family::Antisymmetrizer => "antisymmetrizer",
            Family::Custom => "custom",
        }
    }
}

/// Generators are `e_0, …, e_s`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub family: Family,
    pub s: usize,
    #[serde(rename = "N", default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub metric: Option<MetricSpec>,
    #[serde(default)]
    pub custom_relations: Option<Vec<Vec<Term>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MetricSpec {
    Named(NamedMetric),
    Matrix(Vec<Vec<Scalar>>),
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedMetric {
    Euclidean,
    Minkowski,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub word: Vec<usize>,
    pub coeff: Scalar,
}

/// One nonzero component of a tensor; unlisted components are zero.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub index: Vec<usize>,
    pub value: Scalar,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CurrentSpec {
    Parameters(YmParameters),
    SuperParameters(SymParameters),
    Raw(RawCurrent),
    Tail(Vec<TailTerm>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YmParameters {
    pub b: Vec<Scalar>,
    #[serde(default)]
    pub omega3: Vec<Entry>,
    #[serde(default)]
    pub s3: Vec<Entry>,
    #[serde(default)]
    pub s2: Vec<Entry>,
    #[serde(default)]
    pub s1: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymParameters {
    pub b: Vec<Scalar>,
    #[serde(default)]
    pub omega2: Vec<Entry>,
}

/// `j3` entries are `[μ, ν, ρ]`, `j2` entries `[λ, ρ]`; `ρ` labels the relation.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCurrent {
    #[serde(default)]
    pub j3: Vec<Entry>,
    #[serde(default)]
    pub j2: Vec<Entry>,
    #[serde(default)]
    pub j1: Option<Vec<Scalar>>,
}

/// `φ(r_relation)` gains `coeff · word`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailTerm {
    pub relation: usize,
    pub word: Vec<usize>,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskSpec {
    Identities {
        #[serde(default)]
        n_max: Option<usize>,
    },
    Check {},
    Classify {
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default)]
        samples: usize,
    },
    Oracle {
        n_max: usize,
        #[serde(default)]
        cutoff: Option<usize>,
    },
    Hilbert {
        n_max: usize,
    },
    Shifted {
        #[serde(default)]
        shift: Option<Scalar>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Identities,
    Check,
    Classify,
    Oracle,
    Hilbert,
    Shifted,
}

impl TaskSpec {
    pub fn kind(&self) -> TaskKind {
        match self {
            TaskSpec::Identities { .. } => TaskKind::Identities,
            TaskSpec::Check {} => TaskKind::Check,
            TaskSpec::Classify { .. } => TaskKind::Classify,
            TaskSpec::Oracle { .. } => TaskKind::Oracle,
            TaskSpec::Hilbert { .. } => TaskKind::Hilbert,
            TaskSpec::Shifted { .. } => TaskKind::Shifted,
        }
    }
}

impl TaskKind {
    /// Task run by a subcommand when the problem file lists none of this kind.
    pub fn default_task(self) -> TaskSpec {
        match self {
            TaskKind::Identities => TaskSpec::Identities { n_max: None },
            TaskKind::Check => TaskSpec::Check {},
            TaskKind::Classify => TaskSpec::Classify { seed: None, samples: 0 },
            TaskKind::Oracle => TaskSpec::Oracle { n_max: 5, cutoff: None },
            TaskKind::Hilbert => TaskSpec::Hilbert { n_max: 5 },
            TaskKind::Shifted => TaskSpec::Shifted { shift: None },
        }
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec, CliError> {
    let spec: ProblemSpec = serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("problem file: {e}")))?;
    if spec.schema_version != SCHEMA_VERSION {
        return Err(CliError::Invalid(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            spec.schema_version
        )));
    }
    Ok(spec)
}

/// The algebra a problem describes, with its family-specific structure.
#[derive(Clone, Debug)]
pub enum Model {
    YangMills(YangMills),
    SuperYangMills(SuperYangMills),
    Generic(AlgebraPresentation),
}

impl Model {
    pub fn algebra(&self) -> &AlgebraPresentation {
        match self {
            Model::YangMills(y) => y.algebra(),
            Model::SuperYangMills(y) => y.algebra(),
            Model::Generic(a) => a,
        }
    }

    pub fn metric(&self) -> Option<&Metric> {
        match self {
            Model::YangMills(y) => Some(y.metric()),
            Model::SuperYangMills(y) => Some(y.metric()),
            Model::Generic(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub spec: ProblemSpec,
    pub model: Model,
    pub deformation: DeformationMap,
    /// Present when the current was given through family parameters.
    pub ym_parameters: Option<CurrentParameters>,
    /// `(b, ω)` when the current was given through super parameters.
    pub sym_parameters: Option<(Vec<Scalar>, Vec<Scalar>)>,
}

type BuiltCurrent = (DeformationMap, Option<CurrentParameters>, Option<(Vec<Scalar>, Vec<Scalar>)>);

fn invalid<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Invalid(msg.into()))
}

/// Refuses tensor powers of dimension above `limit`.
pub fn guard(dim_v: usize, degree: usize, limit: u128) -> Result<(), CliError> {
    let requested = u32::try_from(degree).ok().and_then(|n| (dim_v as u128).checked_pow(n)).unwrap_or(u128::MAX);
    if requested > limit {
        return Err(CliError::Resource { requested, limit });
    }
    Ok(())
}

fn build_metric(spec: &Option<MetricSpec>, dim: usize) -> Result<Metric, CliError> {
    match spec {
        None | Some(MetricSpec::Named(NamedMetric::Euclidean)) => Ok(Metric::euclidean(dim)),
        Some(MetricSpec::Named(NamedMetric::Minkowski)) => Ok(Metric::minkowski(dim)),
        Some(MetricSpec::Matrix(rows)) => {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return invalid(format!("metric must be {dim}x{dim}"));
            }
            Ok(Metric::from_lower(Matrix::from_rows(rows.clone())?)?)
        }
    }
}

fn dense(entries: &[Entry], dim: usize, rank: usize, name: &str) -> Result<Vec<Scalar>, CliError> {
    let mut out = vec![Scalar::zero(); dim.pow(rank as u32)];
    let mut seen = vec![false; out.len()];
    for e in entries {
        if e.index.len() != rank || e.index.iter().any(|&i| i >= dim) {
            return invalid(format!("{name}: index {:?} is not a valid {rank}-index below {dim}", e.index));
        }
        let flat = e.index.iter().fold(0, |acc, &i| acc * dim + i);
        if seen[flat] {
            return invalid(format!("{name}: index {:?} listed twice", e.index));
        }
        seen[flat] = true;
        out[flat] = e.value.clone();
    }
    Ok(out)
}

fn vector(v: &Option<Vec<Scalar>>, dim: usize, name: &str) -> Result<Vec<Scalar>, CliError> {
    match v {
        None => Ok(vec![Scalar::zero(); dim]),
        Some(v) if v.len() == dim => Ok(v.clone()),
        Some(v) => invalid(format!("{name} has {} components, expected {dim}", v.len())),
    }
}

fn word_vec(dim: usize, word: &[usize], what: &str) -> Result<usize, CliError> {
    word_index(dim, &Word(word.to_vec()))
        .map_err(|_| CliError::Invalid(format!("{what}: word {word:?} uses a letter ≥ {dim}")))
}

fn build_model(a: &AlgebraSpec, limit: u128) -> Result<Model, CliError> {
    let dim = a.s.checked_add(1).ok_or_else(|| CliError::Invalid("s is too large".into()))?;
    match a.family {
        Family::YangMills | Family::SuperYangMills => {
            if a.s == 0 {
                return invalid("s must be at least 1");
            }
            if a.degree.is_some_and(|n| n != 3) {
                return invalid("Yang-Mills relations are cubic; N must be 3 when given");
            }
            if a.custom_relations.is_some() {
                return invalid("custom_relations only apply to the custom family");
            }
            guard(dim, 4, limit)?;
            let g = build_metric(&a.metric, dim)?;
            Ok(if a.family == Family::YangMills {
                Model::YangMills(build_ym(a.s, &g)?)
            } else {
                Model::SuperYangMills(build_sym(a.s, &g)?)
            })
        }
        Family::Antisymmetrizer => {
            let n = a.degree.ok_or_else(|| CliError::Invalid("antisymmetrizer needs N".into()))?;
            if a.metric.is_some() || a.custom_relations.is_some() {
                return invalid("antisymmetrizer takes neither a metric nor custom relations");
            }
            if n < 2 || n > dim {
                return invalid(format!("antisymmetrizer needs 2 ≤ N ≤ s+1, got N = {n}"));
            }
            guard(dim, n.saturating_add(1), limit)?;
            Ok(Model::Generic(build_antisymmetrizer_relations(dim, n)?))
        }
        Family::Custom => {
            let n = a.degree.ok_or_else(|| CliError::Invalid("custom algebra needs N".into()))?;
            if n < 2 {
                return invalid("N must be at least 2");
            }
            if a.metric.is_some() {
                return invalid("custom algebras take no metric");
            }
            let rels = a
                .custom_relations
                .as_ref()
                .ok_or_else(|| CliError::Invalid("custom algebra needs custom_relations".into()))?;
            guard(dim, n.saturating_add(1), limit)?;
            let mut vecs = Vec::with_capacity(rels.len());
            for (i, terms) in rels.iter().enumerate() {
                let mut entries = Vec::with_capacity(terms.len());
                for t in terms {
                    if t.word.len() != n {
                        return invalid(format!("relation {i}: word {:?} does not have degree {n}", t.word));
                    }
                    entries.push((word_vec(dim, &t.word, "custom relation")?, t.coeff.clone()));
                }
                vecs.push(SparseVec::from_entries(entries));
            }
            Ok(Model::Generic(AlgebraPresentation::new(dim, n, vecs)?))
        }
    }
}

fn build_current(spec: &Option<CurrentSpec>, model: &Model) -> Result<BuiltCurrent, CliError> {
    let a = model.algebra();
    let d = a.dim_v();
    let Some(spec) = spec else {
        return Ok((DeformationMap::homogeneous(a.clone()), None, None));
    };
    match (spec, model) {
        (CurrentSpec::Parameters(p), Model::YangMills(ym)) => {
            let params = CurrentParameters {
                b: vector(&Some(p.b.clone()), d, "b")?,
                omega3: dense(&p.omega3, d, 3, "omega3")?,
                s3: dense(&p.s3, d, 3, "s3")?,
                s2: dense(&p.s2, d, 2, "s2")?,
                s1: vector(&p.s1, d, "s1")?,
            };
            let c = current_from_parameters(&params, ym.metric())?;
            Ok((c.to_deformation(a)?, Some(params), None))
        }
        (CurrentSpec::SuperParameters(p), Model::SuperYangMills(sym)) => {
            let b = vector(&Some(p.b.clone()), d, "b")?;
            let omega = dense(&p.omega2, d, 2, "omega2")?;
            let c = super_current_from_parameters(&b, &omega, sym.metric())?;
            Ok((c.to_deformation(a)?, None, Some((b, omega))))
        }
        (CurrentSpec::Raw(r), Model::YangMills(_) | Model::SuperYangMills(_)) => {
            let c =
                Current::from_parts(d, dense(&r.j3, d, 3, "j3")?, dense(&r.j2, d, 2, "j2")?, vector(&r.j1, d, "j1")?)?;
            Ok((c.to_deformation(a)?, None, None))
        }
        (CurrentSpec::Tail(terms), _) => {
            let n = a.degree();
            let k = a.relation_count();
            let mut mats: Vec<Matrix> = (0..n).map(|j| Matrix::zeros(d.pow(j as u32), k)).collect();
            for t in terms {
                if t.relation >= k {
                    return invalid(format!("tail: relation {} out of range (have {k})", t.relation));
                }
                if t.word.len() >= n {
                    return invalid(format!("tail: word {:?} must have degree below {n}", t.word));
                }
                let row = word_vec(d, &t.word, "tail")?;
                let m = &mut mats[t.word.len()];
                let v = m.get(row, t.relation) + &t.coeff;
                m.set(row, t.relation, v);
            }
            let levels =
                mats.into_iter().enumerate().map(|(j, m)| GradedMap::new(d, j, m)).collect::<Result<Vec<_>, _>>()?;
            Ok((DeformationMap::new(a.clone(), levels)?, None, None))
        }
        (CurrentSpec::Parameters(_), _) => invalid("parameters apply to the yang-mills family only"),
        (CurrentSpec::SuperParameters(_), _) => invalid("super_parameters apply to the super-yang-mills family only"),
        (CurrentSpec::Raw(_), _) => invalid("raw currents apply to the Yang-Mills families only"),
    }
}

pub fn build_problem(spec: ProblemSpec, limit: u128) -> Result<Problem, CliError> {
    let model = build_model(&spec.algebra, limit)?;
    let (deformation, ym_parameters, sym_parameters) = build_current(&spec.current, &model)?;
    Ok(Problem { spec, model, deformation, ym_parameters, sym_parameters })
}
