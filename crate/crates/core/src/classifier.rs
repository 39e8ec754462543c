//! All tails `φ` satisfying the PBW conditions, found stage by stage.
//!
//! The conditions are bilinear in `(φ_{N-1}, φ_j)`, so the search is split:
//! the overlap condition is linear in `φ_{N-1}` alone (with auxiliary
//! coordinates of the image in `R`, projected away afterwards); once a concrete
//! `φ_{N-1}` is fixed, the remaining conditions are a joint affine system in
//! `φ_{N-2}, …, φ_0`.
//!
//! Coordinates of `φ_j` are `a·d^j + u`: relation `a`, output word `u`.

use crate::algebra::AlgebraPresentation;
use crate::current::{antisymmetric_basis, contract_last, symmetric_basis};
use crate::error::{Error, Result};
use crate::linalg::{AffineSolution, Matrix, Scalar, SparseVec, Subspace};
use crate::metric::Metric;
use crate::pbw::{DeformationMap, Overlap};
use crate::tensor::{pow, GradedMap, TensorElement};
use crate::yang_mills::{annihilated_symmetric_basis, b_tensor, CurrentParameters};

/// Which condition a stage imposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageCondition {
    /// Image of the overlap space lies in `R`; determines `φ_{N-1}`.
    Overlap,
    /// Level-`j` cancellation; determines `φ_{j-1}`.
    Level(usize),
    /// Scalar condition; constrains `φ_0`.
    Scalar,
}

/// One offending functional: it kills every achievable value of the unknowns
/// but not the forced term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificatePart {
    pub condition: StageCondition,
    pub overlap_index: usize,
    pub functional: TensorElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageSolution {
    pub condition: StageCondition,
    /// Target degree of the `φ_j` this stage determines.
    pub unknown_degree: usize,
    pub feasible: bool,
    /// Directions of the solution set in `φ_j` coordinates.
    pub space: Subspace,
    /// A point of the solution set; `None` for linear stages or when infeasible.
    pub particular: Option<Vec<Scalar>>,
    pub certificate: Option<Vec<CertificatePart>>,
}

impl StageSolution {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

pub fn map_to_coords(m: &GradedMap) -> Vec<Scalar> {
    let rows = m.matrix().rows();
    let mut out = vec![Scalar::zero(); rows * m.source_dim()];
    for a in 0..m.source_dim() {
        for u in 0..rows {
            out[a * rows + u] = m.matrix().get(u, a).clone();
        }
    }
    out
}

pub fn map_from_coords(dim_v: usize, degree: usize, relations: usize, coords: &[Scalar]) -> Result<GradedMap> {
    let rows = pow(dim_v, degree);
    if coords.len() != rows * relations {
        return Err(Error::Shape(format!("{} coordinates for a {rows}x{relations} map", coords.len())));
    }
    let mut m = Matrix::zeros(rows, relations);
    for a in 0..relations {
        for u in 0..rows {
            m.set(u, a, coords[a * rows + u].clone());
        }
    }
    GradedMap::new(dim_v, degree, m)
}

/// Columns of `(φ⊗I - I⊗φ)(w_k)` as `φ` runs over the unit maps `E_{u,a}` of
/// target degree `j`: entry `(row, column, value)` with column `a·d^j + u`.
fn lift_columns(
    ov: &Overlap,
    k: usize,
    d: usize,
    j: usize,
    col_offset: usize,
    row_offset: usize,
) -> Vec<(usize, usize, Scalar)> {
    let block = pow(d, j);
    let mut out = Vec::new();
    for (a, per_letter) in ov.right[k].iter().enumerate() {
        for (l, c) in per_letter.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for u in 0..block {
                out.push((row_offset + u * d + l, col_offset + a * block + u, c.clone()));
            }
        }
    }
    for (a, per_letter) in ov.left[k].iter().enumerate() {
        for (l, c) in per_letter.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for u in 0..block {
                out.push((row_offset + l * block + u, col_offset + a * block + u, -c));
            }
        }
    }
    out
}

fn project(sub: &Subspace, start: usize, len: usize) -> Subspace {
    let vecs = sub.basis().iter().map(|v| {
        SparseVec::from_entries(
            v.iter().filter(|(c, _)| *c >= start && *c < start + len).map(|(c, x)| (c - start, x.clone())),
        )
    });
    Subspace::span(len, vecs).expect("in range")
}

/// All `φ_{N-1}` whose overlap image lies in `R`.
pub fn solve_stage1(a: &AlgebraPresentation) -> StageSolution {
    let d = a.dim_v();
    let n = a.degree();
    let k = a.relation_count();
    let ov = Overlap::new(a);
    let nx = pow(d, n - 1) * k;
    let rows_per = pow(d, n);
    let mut m = Matrix::zeros(ov.len() * rows_per, nx + ov.len() * k);
    for w in 0..ov.len() {
        for (r, c, v) in lift_columns(&ov, w, d, n - 1, 0, w * rows_per) {
            let cur = m.get(r, c) + &v;
            m.set(r, c, cur);
        }
        for (rel, vec) in a.relations().vectors().iter().enumerate() {
            for (u, v) in vec.iter() {
                m.set(w * rows_per + u, nx + w * k + rel, -v);
            }
        }
    }
    StageSolution {
        condition: StageCondition::Overlap,
        unknown_degree: n - 1,
        feasible: true,
        space: project(&m.kernel(), 0, nx),
        particular: None,
        certificate: None,
    }
}

/// Stages below the top for a fixed `φ_{N-1}`, plus the joint solution set
/// over `(φ_{N-2}, …, φ_0)` in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerStages {
    pub stages: Vec<StageSolution>,
    pub joint: Option<AffineSolution>,
    /// Start of each `φ_t` block in joint coordinates, indexed by `t`.
    pub offsets: Vec<usize>,
}

impl LowerStages {
    pub fn feasible(&self) -> bool {
        self.joint.is_some()
    }

    /// Slice of a joint vector belonging to `φ_t`.
    pub fn block<'a>(&self, v: &'a [Scalar], t: usize, len: usize) -> &'a [Scalar] {
        &v[self.offsets[t]..self.offsets[t] + len]
    }
}

pub fn solve_stage2plus(a: &AlgebraPresentation, phi_top: &GradedMap) -> Result<LowerStages> {
    let d = a.dim_v();
    let n = a.degree();
    let k = a.relation_count();
    if phi_top.target_degree() != n - 1 || phi_top.source_dim() != k || phi_top.dim_v() != d {
        return Err(Error::Shape("top map has the wrong shape".into()));
    }
    let ov = Overlap::new(a);
    let mut inner = Vec::with_capacity(ov.len());
    for w in 0..ov.len() {
        let lifted = crate::tensor::lift_map(phi_top, &ov.right[w], crate::tensor::Side::Right)
            .sub(&crate::tensor::lift_map(phi_top, &ov.left[w], crate::tensor::Side::Left));
        inner.push(
            a.relations()
                .coordinates(&lifted)
                .ok_or_else(|| Error::NotInSubspace("top map violates the overlap condition".into()))?,
        );
    }

    let block_len = |t: usize| pow(d, t) * k;
    let mut offsets = vec![0usize; n - 1];
    let mut total = 0;
    for t in (0..n - 1).rev() {
        offsets[t] = total;
        total += block_len(t);
    }

    // Rows accumulate level by level: (condition, overlap index, row count).
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut labels: Vec<(StageCondition, usize, usize)> = Vec::new();
    let mut stages = Vec::new();
    let mut joint = None;
    let mut failed = false;

    let conditions: Vec<StageCondition> =
        (1..n).rev().map(StageCondition::Level).chain(std::iter::once(StageCondition::Scalar)).collect();
    for cond in conditions {
        let (level, unknown_degree) = match cond {
            StageCondition::Level(j) => (j, j - 1),
            _ => (0, 0),
        };
        if failed {
            stages.push(infeasible(cond, unknown_degree, block_len(unknown_degree), None));
            continue;
        }
        let per = pow(d, level);
        for w in 0..ov.len() {
            let start = rows.len();
            rows.extend((0..per).map(|_| Vec::new()));
            rhs.extend((0..per).map(|_| Scalar::zero()));
            labels.push((cond, w, start));
            // φ_level(c_w)
            if level == n - 1 {
                let v = phi_top.apply_coords(&inner[w]);
                for (u, x) in v.iter() {
                    rhs[start + u] = -x;
                }
            } else {
                for (rel, c) in inner[w].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for u in 0..per {
                        rows[start + u].push((offsets[level] + rel * per + u, c.clone()));
                    }
                }
            }
            if let StageCondition::Level(j) = cond {
                for (r, c, v) in lift_columns(&ov, w, d, j - 1, offsets[j - 1], start) {
                    rows[r].push((c, v));
                }
            }
        }
        let mut m = Matrix::zeros(rows.len(), total);
        for (r, entries) in rows.iter().enumerate() {
            for (c, v) in entries {
                let cur = m.get(r, *c) + v;
                m.set(r, *c, cur);
            }
        }
        match m.solve_affine(&rhs)? {
            Some(sol) => {
                let len = block_len(unknown_degree);
                let off = offsets[unknown_degree];
                let particular = sol.particular[off..off + len].to_vec();
                stages.push(StageSolution {
                    condition: cond,
                    unknown_degree,
                    feasible: true,
                    space: project(&sol.homogeneous, off, len),
                    particular: Some(particular),
                    certificate: None,
                });
                joint = Some(sol);
            }
            None => {
                failed = true;
                joint = None;
                let cert = certificate(&m, &rhs, &labels, d);
                stages.push(infeasible(cond, unknown_degree, block_len(unknown_degree), Some(cert)));
            }
        }
    }
    Ok(LowerStages { stages, joint, offsets })
}

fn infeasible(
    condition: StageCondition,
    unknown_degree: usize,
    len: usize,
    certificate: Option<Vec<CertificatePart>>,
) -> StageSolution {
    StageSolution {
        condition,
        unknown_degree,
        feasible: false,
        space: Subspace::zero(len),
        particular: None,
        certificate,
    }
}

/// A left-kernel vector `y` with `y·M = 0` and `y·rhs ≠ 0`, split by row block.
fn certificate(
    m: &Matrix,
    rhs: &[Scalar],
    labels: &[(StageCondition, usize, usize)],
    d: usize,
) -> Vec<CertificatePart> {
    let left = m.transpose().kernel();
    let y = left
        .basis()
        .iter()
        .find(|y| !y.dot_dense(rhs).is_zero())
        .expect("an inconsistent system has a separating functional")
        .clone();
    let mut parts = Vec::new();
    for (i, (cond, w, start)) in labels.iter().enumerate() {
        let end = labels.get(i + 1).map_or(rhs.len(), |l| l.2);
        let slice = SparseVec::from_entries(
            y.iter().filter(|(c, _)| *c >= *start && *c < end).map(|(c, v)| (c - start, v.clone())),
        );
        if slice.is_zero() {
            continue;
        }
        let degree = match cond {
            StageCondition::Level(j) => *j,
            _ => 0,
        };
        parts.push(CertificatePart {
            condition: *cond,
            overlap_index: *w,
            functional: TensorElement::from_homogeneous(d, degree, &slice),
        });
    }
    parts
}

/// Deformation map from a top map and a point of the joint lower solution.
pub fn assemble(
    a: &AlgebraPresentation,
    phi_top: &GradedMap,
    lower: &LowerStages,
    point: &[Scalar],
) -> Result<DeformationMap> {
    let d = a.dim_v();
    let k = a.relation_count();
    let mut levels = Vec::with_capacity(a.degree());
    for t in 0..a.degree() - 1 {
        let len = pow(d, t) * k;
        levels.push(map_from_coords(d, t, k, lower.block(point, t, len))?);
    }
    levels.push(phi_top.clone());
    DeformationMap::new(a.clone(), levels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyComparison {
    pub family_dim: usize,
    pub solution_dim: usize,
    pub family_in_solutions: bool,
    pub solutions_in_family: bool,
}

impl FamilyComparison {
    pub fn equal(&self) -> bool {
        self.family_in_solutions && self.solutions_in_family
    }
}

/// Two-sided inclusion of `span(family)` and the solution space.
pub fn family_equals_solutions(solutions: &Subspace, family: &[Vec<Scalar>]) -> Result<FamilyComparison> {
    let fam = Subspace::span_dense(solutions.ambient_dim(), family)?;
    Ok(FamilyComparison {
        family_dim: fam.dim(),
        solution_dim: solutions.dim(),
        family_in_solutions: fam.is_subspace_of(solutions)?,
        solutions_in_family: solutions.is_subspace_of(&fam)?,
    })
}

/// `p1 + H1 = p2 + H2` as affine subspaces.
pub fn affine_equal(p1: &[Scalar], h1: &Subspace, p2: &[Scalar], h2: &Subspace) -> Result<bool> {
    if h1 != h2 {
        return Ok(false);
    }
    let diff: Vec<Scalar> = p1.iter().zip(p2).map(|(x, y)| x - y).collect();
    h1.contains(&SparseVec::from_dense(&diff))
}

/// Flat `j^{αβγ}` (relation label last) as `φ_2` coordinates.
pub fn cubic_coords(j3: &[Scalar], d: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); j3.len()];
    for ab in 0..d * d {
        for g in 0..d {
            out[g * d * d + ab] = j3[ab * d + g].clone();
        }
    }
    out
}

/// Flat `j^{αβ}` (relation label last) as `φ_1` coordinates.
pub fn square_coords(j2: &[Scalar], d: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); j2.len()];
    for a in 0..d {
        for r in 0..d {
            out[r * d + a] = j2[a * d + r].clone();
        }
    }
    out
}

fn unit(d: usize, i: usize) -> Vec<Scalar> {
    (0..d).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()
}

/// Generators of the top-level Yang-Mills family:
/// `(g^{αρ}g^{βγ} - g^{αγ}g^{βρ}) b_ρ`, totally antisymmetric and totally symmetric tensors.
pub fn ym_top_family(g: &Metric) -> Vec<Vec<Scalar>> {
    let d = g.dim();
    (0..d)
        .map(|r| b_tensor(&unit(d, r), g))
        .chain(antisymmetric_basis(d, 3))
        .chain(symmetric_basis(d, 3))
        .map(|t| cubic_coords(&t, d))
        .collect()
}

/// Generators of the top-level super family `(g^{αγ}g^{βρ} - g^{βγ}g^{αρ}) b_ρ`.
pub fn sym_top_family(g: &Metric) -> Vec<Vec<Scalar>> {
    let d = g.dim();
    (0..d)
        .map(|r| {
            let bu = g.raise(&unit(d, r));
            let mut t = Vec::with_capacity(d.pow(3));
            for a in 0..d {
                for be in 0..d {
                    for ga in 0..d {
                        t.push(g.up(a, ga) * &bu[be] - g.up(be, ga) * &bu[a]);
                    }
                }
            }
            cubic_coords(&t, d)
        })
        .collect()
}

/// Expected lower solution set for a Yang-Mills top map built from `p`:
/// `j^{αβ} = -½ω^{αβρ}b_ρ + s^{αβ}`, `j^α = s^α` with `s^{αρ}b_ρ = 0 = s^ρ b_ρ`.
/// Joint coordinates `(φ_1, φ_0)`.
pub fn ym_lower_family(p: &CurrentParameters) -> (Vec<Scalar>, Subspace) {
    let d = p.dim();
    let n1 = d * d;
    let ob = contract_last(&p.omega3, d, &p.b);
    let j2: Vec<Scalar> = ob.iter().map(|x| -(Scalar::half() * x)).collect();
    let mut particular = square_coords(&j2, d);
    particular.extend((0..d).map(|_| Scalar::zero()));
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for s2 in annihilated_symmetric_basis(d, 2, &p.b) {
        let mut v = square_coords(&s2, d);
        v.extend((0..d).map(|_| Scalar::zero()));
        gens.push(v);
    }
    for s1 in annihilated_symmetric_basis(d, 1, &p.b) {
        let mut v = vec![Scalar::zero(); n1];
        v.extend(s1);
        gens.push(v);
    }
    (particular, Subspace::span_dense(n1 + d, &gens).expect("in range"))
}

/// Expected lower solution set for a super top map with covector `b`:
/// `j̃^{αβ} = ω^{αβ}` antisymmetric, `j̃^α = ½ω^{αρ}b_ρ`. Linear, through zero.
pub fn sym_lower_family(b: &[Scalar]) -> Subspace {
    let d = b.len();
    let gens: Vec<Vec<Scalar>> = antisymmetric_basis(d, 2)
        .into_iter()
        .map(|w| {
            let mut v = square_coords(&w, d);
            v.extend(contract_last(&w, d, b).into_iter().map(|x| Scalar::half() * x));
            v
        })
        .collect();
    Subspace::span_dense(d * d + d, &gens).expect("in range")
}
