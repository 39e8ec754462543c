//! PBW property of `U = T(V)/(P)` with `P = {x - φ(x) : x ∈ R}`.
//!
//! For a Koszul homogeneous part, `U` is PBW exactly when, on the overlap
//! space `𝒲 = (R⊗V) ∩ (V⊗R)`,
//!
//! * `(φ_{N-1}⊗I - I⊗φ_{N-1})(𝒲) ⊆ R`,
//! * `(φ_j(φ_{N-1}⊗I - I⊗φ_{N-1}) + φ_{j-1}⊗I - I⊗φ_{j-1})(𝒲) = 0` for `1 ≤ j ≤ N-1`,
//! * `φ_0(φ_{N-1}⊗I - I⊗φ_{N-1})(𝒲) = 0`.
//!
//! The remaining requirement `P ∩ F^{N-1} = 0` is automatic here: an element
//! `x - φ(x)` of `P` has top component `x`, so it lies in `F^{N-1}` only if `x = 0`.
//!
//! [`brute_force_oracle`] is an independent check that never looks at these
//! conditions: it spans the filtered ideal up to a degree cutoff and compares
//! quotient dimensions with those of the homogeneous algebra.

use serde::Serialize;

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, Scalar, SparseVec, Subspace};
use crate::tensor::{checked_pow, lift_map, pow, FilteredCoords, GradedMap, Side, TensorElement};

/// The tail map `φ = Σ_j φ_j`, `φ_j : R → V^{⊗j}`, `j < N`.
#[derive(Clone, Debug)]
pub struct DeformationMap {
    algebra: AlgebraPresentation,
    phi: Vec<GradedMap>,
}

impl DeformationMap {
    /// `levels[j]` is `φ_j`; missing trailing levels are zero.
    pub fn new(algebra: AlgebraPresentation, levels: Vec<GradedMap>) -> Result<Self> {
        let n = algebra.degree();
        let d = algebra.dim_v();
        let k = algebra.relation_count();
        if levels.len() > n {
            return Err(Error::Shape(format!("{} tail levels for relations of degree {n}", levels.len())));
        }
        let mut phi = Vec::with_capacity(n);
        for j in 0..n {
            let m = match levels.get(j) {
                Some(m) => m.clone(),
                None => GradedMap::zero(d, j, k),
            };
            if m.target_degree() != j || m.dim_v() != d || m.source_dim() != k {
                return Err(Error::Shape(format!("φ_{j} has the wrong shape")));
            }
            phi.push(m);
        }
        Ok(DeformationMap { algebra, phi })
    }

    pub fn homogeneous(algebra: AlgebraPresentation) -> Self {
        DeformationMap::new(algebra, Vec::new()).expect("zero maps fit")
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn level(&self, j: usize) -> &GradedMap {
        &self.phi[j]
    }

    pub fn levels(&self) -> &[GradedMap] {
        &self.phi
    }

    /// `φ(r_a)` as a mixed-degree element.
    pub fn tail(&self, a: usize) -> TensorElement {
        let d = self.algebra.dim_v();
        let mut out = TensorElement::zero(d);
        for (j, m) in self.phi.iter().enumerate() {
            let img = m.image_of_basis(a);
            out = out + TensorElement::from_homogeneous(d, j, &img);
        }
        out
    }

    /// `r_a - φ(r_a)`, the `a`-th basis element of `P`.
    pub fn deformed_relation(&self, a: usize) -> TensorElement {
        self.algebra.relation_element(a) - self.tail(a)
    }

    /// Replaces `φ_j` by `t^{N-j} φ_j`.
    pub fn rescaled(&self, t: &Scalar) -> DeformationMap {
        let n = self.algebra.degree();
        let phi = self
            .phi
            .iter()
            .enumerate()
            .map(|(j, m)| {
                let mut k = Scalar::one();
                for _ in 0..(n - j) {
                    k *= t;
                }
                m.scale(&k)
            })
            .collect();
        DeformationMap { algebra: self.algebra.clone(), phi }
    }

    /// Same `P`, new distinguished basis `r'_b = Σ_a change[a][b] r_a`.
    pub fn rebased(&self, change: &Matrix) -> Result<DeformationMap> {
        let a = &self.algebra;
        let new_rels: Vec<SparseVec> = (0..change.cols())
            .map(|b| {
                let mut acc = SparseVec::new();
                for (i, r) in a.relations().vectors().iter().enumerate() {
                    acc = acc.add_scaled(change.get(i, b), r);
                }
                acc
            })
            .collect();
        let algebra = AlgebraPresentation::new(a.dim_v(), a.degree(), new_rels)?;
        let phi = self
            .phi
            .iter()
            .map(|m| GradedMap::new(a.dim_v(), m.target_degree(), m.matrix().mul(change)?))
            .collect::<Result<Vec<_>>>()?;
        DeformationMap::new(algebra, phi)
    }
}

/// Outcome of one condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    Holds,
    /// The offending value, for some basis vector of the overlap space.
    Fails {
        witness: TensorElement,
    },
    /// The first condition failed, so this one has no meaning.
    NotApplicable,
}

impl ConditionStatus {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionStatus::Holds)
    }

    pub fn witness(&self) -> Option<&TensorElement> {
        match self {
            ConditionStatus::Fails { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ConditionStatus::Holds => "holds",
            ConditionStatus::Fails { .. } => "fails",
            ConditionStatus::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwVerdict {
    /// Image of the overlap space lies in `R`.
    pub j1: ConditionStatus,
    /// Entry `j - 1` holds the level-`j` cancellation, `1 ≤ j ≤ N-1`.
    pub j2: Vec<ConditionStatus>,
    /// Scalar condition.
    pub j3: ConditionStatus,
    pub overall: bool,
}

impl PbwVerdict {
    /// First witness found, in condition order.
    pub fn witness(&self) -> Option<&TensorElement> {
        std::iter::once(&self.j1)
            .chain(self.j2.iter())
            .chain(std::iter::once(&self.j3))
            .find_map(ConditionStatus::witness)
    }
}

/// Overlap basis with both factorizations precomputed.
pub(crate) struct Overlap {
    pub(crate) right: Vec<Vec<Vec<Scalar>>>,
    pub(crate) left: Vec<Vec<Vec<Scalar>>>,
}

impl Overlap {
    pub(crate) fn new(a: &AlgebraPresentation) -> Overlap {
        let w = a.overlap_space();
        let mut right = Vec::with_capacity(w.dim());
        let mut left = Vec::with_capacity(w.dim());
        for v in w.basis() {
            right.push(a.relations().factor(v, Side::Right).expect("overlap lies in R⊗V"));
            left.push(a.relations().factor(v, Side::Left).expect("overlap lies in V⊗R"));
        }
        Overlap { right, left }
    }

    /// `(φ_j⊗I - I⊗φ_j)(w_k)`
    fn difference(&self, phi: &GradedMap, k: usize) -> SparseVec {
        lift_map(phi, &self.right[k], Side::Right).sub(&lift_map(phi, &self.left[k], Side::Left))
    }

    pub(crate) fn len(&self) -> usize {
        self.right.len()
    }
}

/// Everything the composite conditions need: inner images and their
/// relation-basis coordinates, or the first image outside `R`.
struct Inner {
    coords: Vec<Vec<Scalar>>,
}

fn inner_images(d: &DeformationMap, ov: &Overlap) -> std::result::Result<Inner, TensorElement> {
    let a = &d.algebra;
    let top = &d.phi[a.degree() - 1];
    let mut coords = Vec::with_capacity(ov.len());
    for k in 0..ov.len() {
        let y = ov.difference(top, k);
        match a.relations().coordinates(&y) {
            Some(c) => coords.push(c),
            None => return Err(TensorElement::from_homogeneous(a.dim_v(), a.degree(), &y)),
        }
    }
    Ok(Inner { coords })
}

fn j1_status(d: &DeformationMap, ov: &Overlap) -> (ConditionStatus, Option<Inner>) {
    match inner_images(d, ov) {
        Ok(inner) => (ConditionStatus::Holds, Some(inner)),
        Err(witness) => (ConditionStatus::Fails { witness }, None),
    }
}

fn j2_status(d: &DeformationMap, ov: &Overlap, inner: &Inner, j: usize) -> ConditionStatus {
    let dim_v = d.algebra.dim_v();
    for k in 0..ov.len() {
        let value = d.phi[j].apply_coords(&inner.coords[k]).add(&ov.difference(&d.phi[j - 1], k));
        if !value.is_zero() {
            return ConditionStatus::Fails { witness: TensorElement::from_homogeneous(dim_v, j, &value) };
        }
    }
    ConditionStatus::Holds
}

fn j3_status(d: &DeformationMap, inner: &Inner) -> ConditionStatus {
    let dim_v = d.algebra.dim_v();
    for c in &inner.coords {
        let value = d.phi[0].apply_coords(c);
        if !value.is_zero() {
            return ConditionStatus::Fails { witness: TensorElement::from_homogeneous(dim_v, 0, &value) };
        }
    }
    ConditionStatus::Holds
}

/// `(φ_{N-1}⊗I - I⊗φ_{N-1})(𝒲) ⊆ R`.
pub fn check_j1(d: &DeformationMap) -> ConditionStatus {
    j1_status(d, &Overlap::new(&d.algebra)).0
}

/// Level-`j` cancellation, `1 ≤ j ≤ N-1`.
pub fn check_j2(d: &DeformationMap, j: usize) -> Result<ConditionStatus> {
    let n = d.algebra.degree();
    if j == 0 || j >= n {
        return Err(Error::OutOfRange(format!("level {j} outside 1..={}", n - 1)));
    }
    let ov = Overlap::new(&d.algebra);
    Ok(match j1_status(d, &ov) {
        (_, Some(inner)) => j2_status(d, &ov, &inner, j),
        _ => ConditionStatus::NotApplicable,
    })
}

pub fn check_j3(d: &DeformationMap) -> ConditionStatus {
    let ov = Overlap::new(&d.algebra);
    match j1_status(d, &ov) {
        (_, Some(inner)) => j3_status(d, &inner),
        _ => ConditionStatus::NotApplicable,
    }
}

/// All conditions at once. Equals the PBW property when the homogeneous
/// algebra is Koszul, which the caller asserts.
pub fn pbw_verdict(d: &DeformationMap) -> PbwVerdict {
    let n = d.algebra.degree();
    let ov = Overlap::new(&d.algebra);
    let (j1, inner) = j1_status(d, &ov);
    let (j2, j3) = match inner {
        Some(inner) => ((1..n).map(|j| j2_status(d, &ov, &inner, j)).collect::<Vec<_>>(), j3_status(d, &inner)),
        None => (vec![ConditionStatus::NotApplicable; n - 1], ConditionStatus::NotApplicable),
    };
    let overall = j1.holds() && j2.iter().all(ConditionStatus::holds) && j3.holds();
    PbwVerdict { j1, j2, j3, overall }
}

/// Default limit on `(s+1)^degree` for brute-force computations.
pub const DEFAULT_MAX_DIM: u128 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    pub n_max: usize,
    pub cutoff: usize,
    pub max_dim: u128,
}

impl OracleConfig {
    /// Cutoff one degree above `n_max`.
    pub fn new(n_max: usize) -> Self {
        OracleConfig { n_max, cutoff: n_max + 1, max_dim: DEFAULT_MAX_DIM }
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.cutoff = cutoff;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleDegree {
    pub degree: usize,
    /// `dim F^n / J_n`
    pub quotient_dim: usize,
    /// `Σ_{i≤n} dim A_i`
    pub expected_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum OracleVerdict {
    /// The quotient is too small at `degree`: PBW definitely fails.
    Fail { degree: usize },
    /// No contradiction up to the cutoff. Bounded evidence only.
    Consistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub n_max: usize,
    pub cutoff: usize,
    pub degrees: Vec<OracleDegree>,
    pub verdict: OracleVerdict,
}

impl OracleReport {
    pub fn is_consistent(&self) -> bool {
        self.verdict == OracleVerdict::Consistent
    }
}

/// Spans `J^{(c)} = span{a·p·b : p ∈ P, |a| + N + |b| ≤ c}` and reads off
/// `dim F^n / (J^{(c)} ∩ F^n)` for `n ≤ n_max`.
///
/// The ideal can only grow with the cutoff, so a quotient smaller than
/// `Σ_{i≤n} dim A_i` refutes PBW; equality everywhere is bounded evidence.
pub fn brute_force_oracle(d: &DeformationMap, cfg: OracleConfig) -> Result<OracleReport> {
    let a = &d.algebra;
    let dv = a.dim_v();
    let big_n = a.degree();
    if cfg.cutoff < cfg.n_max {
        return Err(Error::Shape(format!("cutoff {} below n_max {}", cfg.cutoff, cfg.n_max)));
    }
    let requested = (dv as u128).checked_pow(cfg.cutoff as u32).unwrap_or(u128::MAX);
    if requested > cfg.max_dim {
        return Err(Error::ResourceLimit { requested, limit: cfg.max_dim });
    }
    checked_pow(dv, cfg.cutoff)?;
    let fc = FilteredCoords::new(dv, cfg.cutoff);

    // Components of each p_a by degree.
    let parts: Vec<Vec<(usize, SparseVec)>> = (0..a.relation_count())
        .map(|r| {
            let p = d.deformed_relation(r);
            (0..=big_n).map(|t| (t, p.component(t))).filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();

    let mut ech = Echelon::new(fc.total_dim());
    if cfg.cutoff >= big_n {
        let spare = cfg.cutoff - big_n;
        for total in (0..=spare).rev() {
            for left_len in 0..=total {
                let right_len = total - left_len;
                let (na, nb) = (pow(dv, left_len), pow(dv, right_len));
                for ia in 0..na {
                    for ib in 0..nb {
                        for p in &parts {
                            let mut entries = Vec::new();
                            for (t, comp) in p {
                                let deg = left_len + t + right_len;
                                let base = fc.offset(deg);
                                let shift = pow(dv, *t);
                                for (u, c) in comp.iter() {
                                    let idx = (ia * shift + u) * nb + ib;
                                    entries.push((base + idx, c.clone()));
                                }
                            }
                            ech.insert(&SparseVec::from_entries(entries));
                        }
                    }
                }
            }
        }
    }

    let mut ideal_by_degree = vec![0usize; cfg.cutoff + 1];
    for row in ech.rows() {
        let piv = row.leading().expect("nonzero").0;
        ideal_by_degree[fc.degree_of(piv)] += 1;
    }
    let graded = a.graded_dims(cfg.n_max);
    let mut degrees = Vec::with_capacity(cfg.n_max + 1);
    let mut verdict = OracleVerdict::Consistent;
    let (mut j_cum, mut expected) = (0usize, 0usize);
    for n in 0..=cfg.n_max {
        j_cum += ideal_by_degree[n];
        expected += graded[n];
        let quotient = fc.filtered_dim(n) - j_cum;
        if quotient > expected {
            return Err(Error::Invariant(format!(
                "quotient dimension {quotient} exceeds the graded bound {expected} in degree {n}"
            )));
        }
        if quotient < expected && verdict == OracleVerdict::Consistent {
            verdict = OracleVerdict::Fail { degree: n };
        }
        degrees.push(OracleDegree { degree: n, quotient_dim: quotient, expected_dim: expected });
    }
    Ok(OracleReport { n_max: cfg.n_max, cutoff: cfg.cutoff, degrees, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservationResidual {
    /// `[∇_μ, J^μ]` before reduction.
    pub element: TensorElement,
    /// Canonical residue modulo `span P`.
    pub residual: TensorElement,
    pub vanishes: bool,
}

/// Covariant conservation `[∇_μ, J^μ] = 0` as a consequence of the cubic
/// relations alone.
///
/// Requires `N = 3` and relations labelled by generators (`J^μ = φ(r_μ)` is
/// paired with `∇_μ`). The commutator `Σ_μ (∇_μ J^μ - J^μ ∇_μ)` is reduced
/// modulo `span{r_a - φ(r_a)}` in `F^3`.
pub fn conservation_residual(d: &DeformationMap) -> Result<ConservationResidual> {
    let a = &d.algebra;
    let dv = a.dim_v();
    if a.degree() != 3 || a.relation_count() != dv {
        return Err(Error::InvalidPresentation("conservation needs cubic relations labelled by the generators".into()));
    }
    let mut c = TensorElement::zero(dv);
    for mu in 0..dv {
        let gen = TensorElement::generator(dv, mu);
        c = c + gen.commutator(&d.tail(mu))?;
    }
    let fc = FilteredCoords::new(dv, 3);
    let p_span =
        Subspace::span(fc.total_dim(), (0..dv).map(|r| fc.encode(&d.deformed_relation(r)).expect("degree ≤ 3")))?;
    let residual = fc.decode(&p_span.reduce(&fc.encode(&c)?)?);
    let vanishes = residual.is_zero();
    Ok(ConservationResidual { element: c, residual, vanishes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_antisymmetrizer_relations;

    #[test]
    fn homogeneous_case_is_pbw() {
        let a = build_antisymmetrizer_relations(3, 2).unwrap();
        let d = DeformationMap::homogeneous(a);
        let v = pbw_verdict(&d);
        assert!(v.overall);
        assert_eq!(check_j1(&d), ConditionStatus::Holds);
        assert_eq!(check_j2(&d, 1).unwrap(), ConditionStatus::Holds);
        assert_eq!(check_j3(&d), ConditionStatus::Holds);
        assert!(check_j2(&d, 2).is_err());
        let rep = brute_force_oracle(&d, OracleConfig::new(4)).unwrap();
        assert!(rep.is_consistent());
        for row in &rep.degrees {
            assert_eq!(row.quotient_dim, row.expected_dim);
        }
    }

    #[test]
    fn oracle_resource_guard() {
        let a = build_antisymmetrizer_relations(3, 2).unwrap();
        let d = DeformationMap::homogeneous(a);
        let cfg = OracleConfig { n_max: 8, cutoff: 9, max_dim: 10_000 };
        assert!(matches!(brute_force_oracle(&d, cfg), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn shape_checks() {
        let a = build_antisymmetrizer_relations(3, 2).unwrap();
        let bad = GradedMap::zero(3, 1, 2);
        assert!(DeformationMap::new(a.clone(), vec![GradedMap::zero(3, 0, 3), bad]).is_err());
        let too_many = vec![GradedMap::zero(3, 0, 3), GradedMap::zero(3, 1, 3), GradedMap::zero(3, 2, 3)];
        assert!(DeformationMap::new(a, too_many).is_err());
    }
}
