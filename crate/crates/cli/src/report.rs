//! Report types. Every field is deterministic given the problem file and the
//! resource limit; rationals are written as `"p/q"` strings.

use std::fmt::Write as _;

use serde::Serialize;

use pbwforge_core::linalg::Scalar;
use pbwforge_core::pbw::{ConditionStatus, OracleDegree, OracleVerdict};
use pbwforge_core::tensor::TensorElement;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub report_version: u32,
    pub engine: Engine,
    pub provenance: Provenance,
    pub algebra: AlgebraSummary,
    pub tasks: Vec<TaskReport>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Engine {
    pub name: &'static str,
    pub version: &'static str,
}

impl Engine {
    pub fn current() -> Self {
        Engine { name: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Provenance {
    pub max_dim: u128,
    pub seeds: Vec<u64>,
    pub cutoffs: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub family: &'static str,
    pub generators: usize,
    #[serde(rename = "N")]
    pub degree: usize,
    pub relations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<Scalar>>>,
    pub current: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTerm {
    pub word: Vec<usize>,
    pub coeff: Scalar,
}

pub fn witness_terms(x: &TensorElement) -> Vec<WitnessTerm> {
    x.terms().iter().map(|(w, c)| WitnessTerm { word: w.0.clone(), coeff: c.clone() }).collect()
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum TaskReport {
    Identities(IdentitiesReport),
    Check(CheckReport),
    Classify(ClassifyReport),
    Oracle(OracleTaskReport),
    Hilbert(HilbertReport),
    Shifted(ShiftedTaskReport),
    DemoLie(LieReport),
}

impl TaskReport {
    pub fn passed(&self) -> bool {
        match self {
            TaskReport::Identities(r) => r.passed,
            TaskReport::Check(r) => r.passed,
            TaskReport::Classify(r) => r.passed,
            TaskReport::Oracle(r) => r.passed,
            TaskReport::Hilbert(r) => r.passed,
            TaskReport::Shifted(r) => r.passed,
            TaskReport::DemoLie(r) => r.passed,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TaskReport::Identities(_) => "identities",
            TaskReport::Check(_) => "check",
            TaskReport::Classify(_) => "classify",
            TaskReport::Oracle(_) => "oracle",
            TaskReport::Hilbert(_) => "hilbert",
            TaskReport::Shifted(_) => "shifted",
            TaskReport::DemoLie(_) => "demo-lie",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitiesReport {
    pub passed: bool,
    pub checks: Vec<NamedCheck>,
    pub overlap_dim: usize,
    /// Degrees up to which centrality of the quadratic element was checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centrality_n_max: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionEntry {
    pub name: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessTerm>>,
}

impl ConditionEntry {
    pub fn new(name: String, status: &ConditionStatus) -> Self {
        ConditionEntry { name, status: status.label(), witness: status.witness().map(witness_terms) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConservationEntry {
    pub vanishes: bool,
    pub residual: Vec<WitnessTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SideConditionEntry {
    pub cubic: bool,
    pub quadratic: bool,
    pub linear: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub regular: bool,
    pub conditions: Vec<ConditionEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessTerm>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conservation: Option<ConservationEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side_conditions: Option<SideConditionEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageEntry {
    pub condition: String,
    pub unknown_degree: usize,
    pub feasible: bool,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<CertificateEntry>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateEntry {
    pub condition: String,
    pub overlap_index: usize,
    pub functional: Vec<WitnessTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyEntry {
    pub family_dim: usize,
    pub solution_dim: usize,
    pub family_in_solutions: bool,
    pub solutions_in_family: bool,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleEntry {
    pub index: usize,
    pub lower_feasible: bool,
    /// Lower solution set equals the predicted family, where one is predicted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_family: Option<bool>,
    /// The assembled map passes all conditions; absent when no lower solution exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub passed: bool,
    /// Dimensions here are computed ranks, not quoted values.
    pub dimension_source: &'static str,
    pub top: StageEntry,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub current_lower: Option<Vec<StageEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub samples: Vec<SampleEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleTaskReport {
    pub passed: bool,
    pub n_max: usize,
    pub cutoff: usize,
    #[serde(flatten)]
    pub verdict: OracleVerdict,
    pub degrees: Vec<OracleDegree>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertReport {
    pub passed: bool,
    pub n_max: usize,
    /// `dim A_n` from the homogeneous ideal.
    pub dims: Vec<usize>,
    /// `dim A_n` from the brute-force span.
    pub brute_dims: Vec<usize>,
    /// Coefficients of `1/(1 - d t + d t³ - t⁴)` for cubic algebras with as
    /// many relations as generators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<Vec<i128>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftedTaskReport {
    pub passed: bool,
    pub shift: Scalar,
    pub commutator_form: bool,
    pub hatted_form: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiatorEntry {
    pub triple: [usize; 3],
    pub value: Vec<Scalar>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LieReport {
    pub passed: bool,
    pub bracket: String,
    pub jacobi: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobiator: Option<JacobiatorEntry>,
    pub conditions: Vec<ConditionEntry>,
    pub oracle: OracleTaskReport,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Tab-separated dimension tables, one block per oracle, hilbert or demo task.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for t in &self.tasks {
            match t {
                TaskReport::Hilbert(h) => {
                    out.push_str("# hilbert\nn\tdim\n");
                    for (n, d) in h.dims.iter().enumerate() {
                        let _ = writeln!(out, "{n}\t{d}");
                    }
                }
                TaskReport::Oracle(o) => oracle_tsv(&mut out, "oracle", o),
                TaskReport::DemoLie(l) => oracle_tsv(&mut out, "demo-lie", &l.oracle),
                _ => {}
            }
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} s={} N={} relations={} current={}",
            self.algebra.family,
            self.algebra.generators - 1,
            self.algebra.degree,
            self.algebra.relations,
            self.algebra.current
        );
        for t in &self.tasks {
            let _ = writeln!(out, "{}: {}", t.name(), if t.passed() { "pass" } else { "fail" });
        }
        let _ = writeln!(out, "overall: {}", if self.passed { "pass" } else { "fail" });
        out
    }
}

fn oracle_tsv(out: &mut String, name: &str, o: &OracleTaskReport) {
    let _ = writeln!(out, "# {name} cutoff={}\nn\tquotient_dim\texpected_dim", o.cutoff);
    for d in &o.degrees {
        let _ = writeln!(out, "{}\t{}\t{}", d.degree, d.quotient_dim, d.expected_dim);
    }
}
