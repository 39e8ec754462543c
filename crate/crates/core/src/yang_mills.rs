//! The cubic Yang-Mills algebra on generators `∇_0, …, ∇_s` and its currents.
//!
//! Relations `W^ρ = W^{ρλμν} ∇_λ⊗∇_μ⊗∇_ν` with
//! `W^{ρλμν} = g^{ρλ}g^{μν} + g^{ρν}g^{λμ} - 2g^{ρμ}g^{λν}`.

use rand::Rng;

use crate::algebra::AlgebraPresentation;
use crate::current::{
    antisymmetric_basis, contract_last, is_totally_antisymmetric, is_totally_symmetric, symmetric_basis, Current,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, SparseVec, Subspace};
use crate::metric::{random_nonzero_scalar, random_scalar, Metric};
use crate::pbw::DeformationMap;
use crate::tensor::TensorElement;

/// Four-index coefficient array `W^{ρλμν}`, flat index `((ρ·d+λ)·d+μ)·d+ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTensor {
    dim: usize,
    data: Vec<Scalar>,
}

impl RelationTensor {
    pub fn from_fn<F: Fn(usize, usize, usize, usize) -> Scalar>(dim: usize, f: F) -> Self {
        let mut data = Vec::with_capacity(dim.pow(4));
        for r in 0..dim {
            for l in 0..dim {
                for m in 0..dim {
                    for n in 0..dim {
                        data.push(f(r, l, m, n));
                    }
                }
            }
        }
        RelationTensor { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, r: usize, l: usize, m: usize, n: usize) -> usize {
        ((r * self.dim + l) * self.dim + m) * self.dim + n
    }

    pub fn get(&self, r: usize, l: usize, m: usize, n: usize) -> &Scalar {
        &self.data[self.idx(r, l, m, n)]
    }

    pub fn set(&mut self, r: usize, l: usize, m: usize, n: usize, v: Scalar) {
        let i = self.idx(r, l, m, n);
        self.data[i] = v;
    }

    /// `W^ρ` as a vector of `V^{⊗3}`.
    pub fn relation(&self, rho: usize) -> SparseVec {
        let d3 = self.dim.pow(3);
        SparseVec::from_dense(&self.data[rho * d3..(rho + 1) * d3])
    }

    pub fn relations(&self) -> Vec<SparseVec> {
        (0..self.dim).map(|r| self.relation(r)).collect()
    }

    /// `f` holds on every index quadruple.
    fn all<F: Fn(usize, usize, usize, usize) -> bool>(&self, f: F) -> bool {
        let d = self.dim;
        (0..d).all(|r| (0..d).all(|l| (0..d).all(|m| (0..d).all(|n| f(r, l, m, n)))))
    }
}

pub fn ym_tensor(g: &Metric) -> RelationTensor {
    RelationTensor::from_fn(g.dim(), |r, l, m, n| {
        g.up(r, l) * g.up(m, n) + g.up(r, n) * g.up(l, m) - Scalar::from_int(2) * g.up(r, m) * g.up(l, n)
    })
}

/// Yang-Mills algebra with the metric and coefficient array it was built from.
#[derive(Clone, Debug)]
pub struct YangMills {
    metric: Metric,
    tensor: RelationTensor,
    algebra: AlgebraPresentation,
}

impl YangMills {
    /// Relations read from an arbitrary coefficient array; used for corrupted controls.
    pub fn from_tensor(metric: Metric, tensor: RelationTensor) -> Result<Self> {
        if tensor.dim() != metric.dim() {
            return Err(Error::Shape("tensor and metric dimensions differ".into()));
        }
        let algebra = AlgebraPresentation::new(metric.dim(), 3, tensor.relations())?;
        Ok(YangMills { metric, tensor, algebra })
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn tensor(&self) -> &RelationTensor {
        &self.tensor
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn s(&self) -> usize {
        self.metric.dim() - 1
    }

    /// `w = W^ρ⊗∇_ρ`
    pub fn w(&self) -> SparseVec {
        let d = self.metric.dim();
        SparseVec::from_entries((0..d).flat_map(|r| {
            self.tensor.relation(r).entries().iter().map(move |(c, v)| (c * d + r, v.clone())).collect::<Vec<_>>()
        }))
    }

    /// `∇_ρ⊗W^ρ`
    fn w_left(&self) -> SparseVec {
        let d = self.metric.dim();
        let d3 = d.pow(3);
        SparseVec::from_entries((0..d).flat_map(|r| {
            self.tensor.relation(r).entries().iter().map(move |(c, v)| (r * d3 + c, v.clone())).collect::<Vec<_>>()
        }))
    }
}

/// Builds the algebra for `g` on `s + 1` generators.
pub fn build_ym(s: usize, g: &Metric) -> Result<YangMills> {
    check_dims(s, g)?;
    YangMills::from_tensor(g.clone(), ym_tensor(g))
}

pub(crate) fn check_dims(s: usize, g: &Metric) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidPresentation("need at least two generators".into()));
    }
    if g.dim() != s + 1 {
        return Err(Error::Shape(format!("metric of size {} for s = {s}", g.dim())));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YmIdentityReport {
    /// `W^{λμνρ} = W^{ρλμν}`
    pub index_rotation: bool,
    /// `W^ρ⊗∇_ρ = ∇_ρ⊗W^ρ`
    pub w_two_sided: bool,
    /// `W^{ρλμν} + W^{ρνλμ} + W^{ρμνλ} = 0`, exactly this index pattern.
    pub cyclic_sum: bool,
    /// `W^ρ = g^{λμ}g^{νρ}[∇_λ,[∇_μ,∇_ν]]` after expansion.
    pub commutator_form: bool,
    pub overlap_dim: usize,
    pub w_spans_overlap: bool,
}

impl YmIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.index_rotation
            && self.w_two_sided
            && self.cyclic_sum
            && self.commutator_form
            && self.overlap_dim == 1
            && self.w_spans_overlap
    }
}

pub fn verify_identities(ym: &YangMills) -> YmIdentityReport {
    let t = &ym.tensor;
    let g = &ym.metric;
    let d = g.dim();
    let index_rotation = t.all(|r, l, m, n| t.get(l, m, n, r) == t.get(r, l, m, n));
    let cyclic_sum = t.all(|r, l, m, n| (t.get(r, l, m, n) + t.get(r, n, l, m) + t.get(r, m, n, l)).is_zero());
    let w = ym.w();
    let w_two_sided = w == ym.w_left();

    let commutator_form = (0..d).all(|rho| {
        let mut expected = TensorElement::zero(d);
        for l in 0..d {
            for m in 0..d {
                for n in 0..d {
                    let k = g.up(l, m) * g.up(n, rho);
                    if k.is_zero() {
                        continue;
                    }
                    let inner =
                        TensorElement::generator(d, m).commutator(&TensorElement::generator(d, n)).expect("same space");
                    let outer = TensorElement::generator(d, l).commutator(&inner).expect("same space");
                    expected = expected + outer.scale(&k);
                }
            }
        }
        expected.component(3) == t.relation(rho) && expected.is_homogeneous()
    });

    let overlap = ym.algebra.overlap_space();
    let w_spans_overlap = Subspace::span(overlap.ambient_dim(), [w]).map(|s| s == overlap).unwrap_or(false);
    YmIdentityReport {
        index_rotation,
        w_two_sided,
        cyclic_sum,
        commutator_form,
        overlap_dim: overlap.dim(),
        w_spans_overlap,
    }
}

/// Free data of the regular-current family. `b` carries a lower index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentParameters {
    pub b: Vec<Scalar>,
    pub omega3: Vec<Scalar>,
    pub s3: Vec<Scalar>,
    pub s2: Vec<Scalar>,
    pub s1: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SideCondition {
    /// `s^{αβρ} b_ρ = 0`
    Cubic,
    /// `s^{αρ} b_ρ = 0`
    Quadratic,
    /// `s^ρ b_ρ = 0`
    Linear,
}

impl SideCondition {
    pub const ALL: [SideCondition; 3] = [SideCondition::Cubic, SideCondition::Quadratic, SideCondition::Linear];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideConditionReport {
    pub cubic: bool,
    pub quadratic: bool,
    pub linear: bool,
}

impl SideConditionReport {
    pub fn all(&self) -> bool {
        self.cubic && self.quadratic && self.linear
    }
}

impl CurrentParameters {
    pub fn zero(dim: usize) -> Self {
        CurrentParameters {
            b: vec![Scalar::zero(); dim],
            omega3: vec![Scalar::zero(); dim.pow(3)],
            s3: vec![Scalar::zero(); dim.pow(3)],
            s2: vec![Scalar::zero(); dim.pow(2)],
            s1: vec![Scalar::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    /// Shapes and exact (anti)symmetry. Side conditions are not checked here.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        if self.omega3.len() != d.pow(3) || self.s3.len() != d.pow(3) || self.s2.len() != d * d || self.s1.len() != d {
            return Err(Error::Shape("parameter arrays do not match the number of generators".into()));
        }
        if !is_totally_antisymmetric(&self.omega3, d, 3) {
            return Err(Error::Symmetry("omega3 must be totally antisymmetric".into()));
        }
        if !is_totally_symmetric(&self.s3, d, 3) {
            return Err(Error::Symmetry("s3 must be totally symmetric".into()));
        }
        if !is_totally_symmetric(&self.s2, d, 2) {
            return Err(Error::Symmetry("s2 must be symmetric".into()));
        }
        Ok(())
    }

    pub fn side_conditions(&self) -> SideConditionReport {
        let d = self.dim();
        let zero = |v: Vec<Scalar>| v.iter().all(Scalar::is_zero);
        SideConditionReport {
            cubic: zero(contract_last(&self.s3, d, &self.b)),
            quadratic: zero(contract_last(&self.s2, d, &self.b)),
            linear: zero(contract_last(&self.s1, d, &self.b)),
        }
    }
}

/// `(g^{αρ}g^{βγ} - g^{αγ}g^{βρ}) b_ρ`, flat over `(α, β, γ)`.
pub fn b_tensor(b: &[Scalar], g: &Metric) -> Vec<Scalar> {
    let d = g.dim();
    let bu = g.raise(b);
    let mut out = Vec::with_capacity(d.pow(3));
    for a in 0..d {
        for be in 0..d {
            for c in 0..d {
                out.push(&bu[a] * g.up(be, c) - g.up(a, c) * &bu[be]);
            }
        }
    }
    out
}

/// `j^{αβγ} = (g^{αρ}g^{βγ} - g^{αγ}g^{βρ}) b_ρ + ω^{αβγ} + s^{αβγ}`,
/// `j^{αβ} = -½ ω^{αβρ} b_ρ + s^{αβ}`, `j^α = s^α`.
pub fn current_from_parameters(p: &CurrentParameters, g: &Metric) -> Result<Current> {
    p.validate()?;
    let d = g.dim();
    if p.dim() != d {
        return Err(Error::Shape("parameters and metric dimensions differ".into()));
    }
    let t = b_tensor(&p.b, g);
    let j3: Vec<Scalar> = t.iter().zip(&p.omega3).zip(&p.s3).map(|((x, y), z)| x + y + z).collect();
    let ob = contract_last(&p.omega3, d, &p.b);
    let j2: Vec<Scalar> = ob.iter().zip(&p.s2).map(|(x, y)| -(Scalar::half() * x) + y).collect();
    Current::from_parts(d, j3, j2, p.s1.clone())
}

pub fn current_to_deformation(c: &Current, ym: &YangMills) -> Result<DeformationMap> {
    c.to_deformation(&ym.algebra)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhysicsCurrent {
    pub current: Current,
    /// `b_λ ω^{λμν} = 0`
    pub b_omega_vanishes: bool,
    /// `b_λ s^λ = 0`
    pub b_s_vanishes: bool,
}

impl PhysicsCurrent {
    pub fn constraints_hold(&self) -> bool {
        self.b_omega_vanishes && self.b_s_vanishes
    }
}

/// Expands `J^μ = b_λ F^{λμ} + ω^{λρμ} F_{λρ} + s^μ 1` with
/// `F_{λρ} = ∇_λ⊗∇_ρ - ∇_ρ⊗∇_λ` and `F^{λμ} = g^{λα} g^{μβ} F_{αβ}`.
///
/// The result has `j^{αβμ} = (b^α g^{βμ} - g^{αμ} b^β) + 2ω^{αβμ}`, no linear part,
/// and `j^μ = s^μ`. With an applied field `b` the linear relation between
/// `J` and `F` reads like a generalized Ohm's law.
pub fn physics_current(b: &[Scalar], omega3: &[Scalar], s1: &[Scalar], g: &Metric) -> Result<PhysicsCurrent> {
    let d = g.dim();
    if b.len() != d || omega3.len() != d.pow(3) || s1.len() != d {
        return Err(Error::Shape("parameter arrays do not match the metric".into()));
    }
    if !is_totally_antisymmetric(omega3, d, 3) {
        return Err(Error::Symmetry("omega3 must be totally antisymmetric".into()));
    }
    let bu = g.raise(b);
    let mut c = Current::zero(d);
    for a in 0..d {
        for be in 0..d {
            for mu in 0..d {
                // b_λ F^{λμ} contributes b^α g^{μβ} to ∇_α∇_β and -b^β g^{μα}.
                let from_b = &bu[a] * g.up(mu, be) - &bu[be] * g.up(mu, a);
                // ω^{λρμ} F_{λρ} contributes ω^{αβμ} - ω^{βαμ} = 2ω^{αβμ}.
                let from_w = &omega3[(a * d + be) * d + mu] - &omega3[(be * d + a) * d + mu];
                c.set_cubic(a, be, mu, from_b + from_w);
            }
        }
        c.set_constant(a, s1[a].clone());
    }
    let zero = |v: Vec<Scalar>| v.iter().all(Scalar::is_zero);
    // b_λ ω^{λμν} is the last-slot contraction up to total antisymmetry.
    let b_omega_vanishes = zero(contract_last(omega3, d, b));
    let b_s_vanishes = zero(contract_last(s1, d, b));
    Ok(PhysicsCurrent { current: c, b_omega_vanishes, b_s_vanishes })
}

fn combine<R: Rng + ?Sized>(rng: &mut R, basis: &[Vec<Scalar>], len: usize, bound: i64) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for v in basis {
        let k = random_scalar(rng, bound);
        for (o, x) in out.iter_mut().zip(v) {
            *o += &k * x;
        }
    }
    out
}

/// Basis of the totally symmetric tensors `t` with `t^{…ρ} b_ρ = 0`.
pub fn annihilated_symmetric_basis(dim: usize, rank: usize, b: &[Scalar]) -> Vec<Vec<Scalar>> {
    let basis = symmetric_basis(dim, rank);
    let len = dim.pow(rank as u32);
    let images: Vec<Vec<Scalar>> = basis.iter().map(|t| contract_last(t, dim, b)).collect();
    let m = Matrix::from_rows(images).expect("rectangular").transpose();
    m.kernel()
        .basis()
        .iter()
        .map(|k| {
            let mut t = vec![Scalar::zero(); len];
            for (i, c) in k.iter() {
                for (o, x) in t.iter_mut().zip(&basis[i]) {
                    *o += c * x;
                }
            }
            t
        })
        .collect()
}

/// Random totally symmetric tensor with `t^{…ρ} b_ρ` zero (`annihilated`) or nonzero.
pub fn random_symmetric<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    rank: usize,
    b: &[Scalar],
    annihilated: bool,
    bound: i64,
) -> Vec<Scalar> {
    let len = dim.pow(rank as u32);
    if annihilated {
        return combine(rng, &annihilated_symmetric_basis(dim, rank, b), len, bound);
    }
    assert!(b.iter().any(|x| !x.is_zero()), "a zero covector annihilates everything");
    let basis = symmetric_basis(dim, rank);
    loop {
        let t = combine(rng, &basis, len, bound);
        if contract_last(&t, dim, b).iter().any(|x| !x.is_zero()) {
            return t;
        }
    }
}

pub fn random_antisymmetric<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize, bound: i64) -> Vec<Scalar> {
    combine(rng, &antisymmetric_basis(dim, rank), dim.pow(rank as u32), bound)
}

pub fn random_nonzero_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..dim).map(|_| random_scalar(rng, bound)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Seeded parameters with every side condition satisfied except `violate`.
pub fn sample_parameters<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    bound: i64,
    violate: Option<SideCondition>,
) -> CurrentParameters {
    let mut b = random_nonzero_vector(rng, dim, bound);
    // Keep b generic but occasionally sparse so that coordinate-aligned cases show up.
    if rng.gen_bool(0.25) {
        let keep = rng.gen_range(0..dim);
        for (i, x) in b.iter_mut().enumerate() {
            if i != keep {
                *x = Scalar::zero();
            } else if x.is_zero() {
                *x = random_nonzero_scalar(rng, bound);
            }
        }
    }
    let omega3 = random_antisymmetric(rng, dim, 3, bound);
    let s3 = random_symmetric(rng, dim, 3, &b, violate != Some(SideCondition::Cubic), bound);
    let s2 = random_symmetric(rng, dim, 2, &b, violate != Some(SideCondition::Quadratic), bound);
    let s1 = random_symmetric(rng, dim, 1, &b, violate != Some(SideCondition::Linear), bound);
    CurrentParameters { b, omega3, s3, s2, s1 }
}
