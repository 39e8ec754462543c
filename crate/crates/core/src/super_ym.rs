//! The cubic super Yang-Mills algebra on generators `S_0, …, S_s`.
//!
//! Relations `W̃^ρ = W̃^{ρλμν} S_λ⊗S_μ⊗S_ν` with
//! `W̃^{ρλμν} = g^{ρλ}g^{μν} - g^{ρν}g^{λμ}`, so that `W̃^ρ = -g^{ρν}[q, S_ν]`
//! for the quadratic element `q = g^{λμ} S_λ S_μ`. The relations are plain
//! tensors; no graded sign rule enters anywhere.

use crate::algebra::AlgebraPresentation;
use crate::current::{contract_last, is_totally_antisymmetric, Current};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec, Subspace};
use crate::metric::Metric;
use crate::tensor::{index_word, pow, FilteredCoords, TensorElement};
use crate::yang_mills::{check_dims, RelationTensor};

/// Currents on the super algebra share the layout of [`Current`].
pub type SuperCurrent = Current;

pub fn sym_tensor(g: &Metric) -> RelationTensor {
    RelationTensor::from_fn(g.dim(), |r, l, m, n| g.up(r, l) * g.up(m, n) - g.up(r, n) * g.up(l, m))
}

#[derive(Clone, Debug)]
pub struct SuperYangMills {
    metric: Metric,
    tensor: RelationTensor,
    algebra: AlgebraPresentation,
}

impl SuperYangMills {
    pub fn from_tensor(metric: Metric, tensor: RelationTensor) -> Result<Self> {
        if tensor.dim() != metric.dim() {
            return Err(Error::Shape("tensor and metric dimensions differ".into()));
        }
        let algebra = AlgebraPresentation::new(metric.dim(), 3, tensor.relations())?;
        Ok(SuperYangMills { metric, tensor, algebra })
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

    /// `w̃ = S_ρ⊗W̃^ρ`
    pub fn w(&self) -> SparseVec {
        let d = self.metric.dim();
        let d3 = pow(d, 3);
        SparseVec::from_entries((0..d).flat_map(|r| {
            self.tensor.relation(r).entries().iter().map(move |(c, v)| (r * d3 + c, v.clone())).collect::<Vec<_>>()
        }))
    }

    /// `W̃^ρ⊗S_ρ`
    fn w_right(&self) -> SparseVec {
        let d = self.metric.dim();
        SparseVec::from_entries((0..d).flat_map(|r| {
            self.tensor.relation(r).entries().iter().map(move |(c, v)| (c * d + r, v.clone())).collect::<Vec<_>>()
        }))
    }

    /// `q = g^{λμ} S_λ⊗S_μ`
    pub fn quadratic_element(&self) -> TensorElement {
        quadratic(&self.metric, &vec![Scalar::zero(); self.metric.dim()], &Scalar::zero())
    }
}

pub fn build_sym(s: usize, g: &Metric) -> Result<SuperYangMills> {
    check_dims(s, g)?;
    SuperYangMills::from_tensor(g.clone(), sym_tensor(g))
}

/// `g^{λμ} Ŝ_λ⊗Ŝ_μ` with `Ŝ_λ = S_λ + shift·b_λ 1`.
fn quadratic(g: &Metric, b: &[Scalar], shift: &Scalar) -> TensorElement {
    let d = g.dim();
    let hat: Vec<TensorElement> = (0..d).map(|l| shifted(d, l, b, shift)).collect();
    let mut q = TensorElement::zero(d);
    for l in 0..d {
        for m in 0..d {
            let k = g.up(l, m);
            if !k.is_zero() {
                q = q + (&hat[l] * &hat[m]).scale(k);
            }
        }
    }
    q
}

fn shifted(d: usize, l: usize, b: &[Scalar], shift: &Scalar) -> TensorElement {
    TensorElement::generator(d, l) + TensorElement::scalar(d, shift * &b[l])
}

/// `g^{λμ}[S_λ,{S_μ,S_ν}]`
fn anticommutator_relation(g: &Metric, nu: usize) -> TensorElement {
    let d = g.dim();
    let sn = TensorElement::generator(d, nu);
    let mut out = TensorElement::zero(d);
    for l in 0..d {
        for m in 0..d {
            let k = g.up(l, m);
            if k.is_zero() {
                continue;
            }
            let inner = TensorElement::generator(d, m).anticommutator(&sn).expect("same space");
            out = out + TensorElement::generator(d, l).commutator(&inner).expect("same space").scale(k);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymIdentityReport {
    /// `W̃^{λμνρ} = -W̃^{ρλμν}`
    pub index_antirotation: bool,
    /// `S_ρ⊗W̃^ρ = -W̃^ρ⊗S_ρ`
    pub w_two_sided: bool,
    /// `W̃^ρ = -g^{ρν} g^{λμ}[S_λ,{S_μ,S_ν}]` after expansion.
    pub anticommutator_form: bool,
    pub overlap_dim: usize,
    pub w_spans_overlap: bool,
}

impl SymIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.index_antirotation
            && self.w_two_sided
            && self.anticommutator_form
            && self.overlap_dim == 1
            && self.w_spans_overlap
    }
}

pub fn verify_super_identities(sym: &SuperYangMills) -> SymIdentityReport {
    let t = &sym.tensor;
    let g = &sym.metric;
    let d = g.dim();
    let mut index_antirotation = true;
    for r in 0..d {
        for l in 0..d {
            for m in 0..d {
                for n in 0..d {
                    if t.get(l, m, n, r) != &-t.get(r, l, m, n) {
                        index_antirotation = false;
                    }
                }
            }
        }
    }
    let w = sym.w();
    let w_two_sided = w == sym.w_right().neg();
    let forms: Vec<TensorElement> = (0..d).map(|nu| anticommutator_relation(g, nu)).collect();
    let anticommutator_form = (0..d).all(|rho| {
        let mut x = TensorElement::zero(d);
        for (nu, f) in forms.iter().enumerate() {
            x = x - f.scale(g.up(rho, nu));
        }
        x.is_homogeneous() && x.component(3) == t.relation(rho)
    });
    let overlap = sym.algebra.overlap_space();
    let w_spans_overlap = Subspace::span(overlap.ambient_dim(), [w]).map(|s| s == overlap).unwrap_or(false);
    SymIdentityReport {
        index_antirotation,
        w_two_sided,
        anticommutator_form,
        overlap_dim: overlap.dim(),
        w_spans_overlap,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralityReport {
    /// `span{[q, S_ν]} = R̃` in degree 3.
    pub relation_span_equal: bool,
    /// `(n, [q, m] ∈ I_n for every monomial m of degree n - 2)`.
    pub per_degree: Vec<(usize, bool)>,
}

impl CentralityReport {
    pub fn holds(&self) -> bool {
        self.relation_span_equal && self.per_degree.iter().all(|(_, ok)| *ok)
    }
}

/// `q` commutes with everything modulo the relations, checked up to `n_max`.
pub fn centrality_check(sym: &SuperYangMills, n_max: usize) -> Result<CentralityReport> {
    let d = sym.metric.dim();
    let q = sym.quadratic_element();
    let brackets = (0..d)
        .map(|nu| Ok(q.commutator(&TensorElement::generator(d, nu))?.component(3)))
        .collect::<Result<Vec<_>>>()?;
    let relation_span_equal = Subspace::span(pow(d, 3), brackets)? == *sym.algebra.relation_space();
    let ideal = sym.algebra.ideal_components(n_max);
    let mut per_degree = Vec::new();
    for n in 2..=n_max {
        let mut ok = true;
        for i in 0..pow(d, n - 2) {
            let m = TensorElement::monomial(d, index_word(d, n - 2, i)?, Scalar::one());
            let c = q.commutator(&m)?.component(n);
            if !ideal[n].contains(&c)? {
                ok = false;
                break;
            }
        }
        per_degree.push((n, ok));
    }
    Ok(CentralityReport { relation_span_equal, per_degree })
}

/// `j̃^{αβγ} = (g^{αγ}g^{βρ} - g^{βγ}g^{αρ}) b_ρ`, `j̃^{αβ} = ω^{αβ}`, `j̃^α = ½ ω^{αρ} b_ρ`.
///
/// The constant term is fixed by the level-one cancellation
/// `j̃^{αρ} b_ρ - 2 j̃^α = 0` on the overlap vector `w̃`.
pub fn super_current_from_parameters(b: &[Scalar], omega2: &[Scalar], g: &Metric) -> Result<SuperCurrent> {
    let d = g.dim();
    if b.len() != d || omega2.len() != d * d {
        return Err(Error::Shape("parameter arrays do not match the metric".into()));
    }
    if !is_totally_antisymmetric(omega2, d, 2) {
        return Err(Error::Symmetry("omega2 must be antisymmetric".into()));
    }
    let bu = g.raise(b);
    let mut c = Current::zero(d);
    for a in 0..d {
        for be in 0..d {
            for ga in 0..d {
                c.set_cubic(a, be, ga, g.up(a, ga) * &bu[be] - g.up(be, ga) * &bu[a]);
            }
            c.set_linear(a, be, omega2[a * d + be].clone());
        }
    }
    for (a, v) in contract_last(omega2, d, b).into_iter().enumerate() {
        c.set_constant(a, Scalar::half() * v);
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedReport {
    /// `[q, S_ν] = -[g^{λμ}b_λ S_μ, S_ν] + ω^{λρ}g_{ρν}(S_λ + ½ b_λ)` spans `P`.
    pub commutator_form: bool,
    /// `[q̂, Ŝ_ν] = ω^{τρ}g_{ρν} Ŝ_τ` spans `P`.
    pub hatted_form: bool,
}

impl ShiftedReport {
    pub fn holds(&self) -> bool {
        self.commutator_form && self.hatted_form
    }
}

/// Compares the two rewritten presentations against `P` in `F^3`.
///
/// The rewritten relations with parameters `(b, ω)` describe the member of
/// [`super_current_from_parameters`] at `(-b, -ω)`. `shift` is the coefficient
/// in `Ŝ_λ = S_λ + shift·b_λ 1`; only `½` gives an equivalent presentation
/// when `b ≠ 0`.
pub fn shifted_generator_check(
    sym: &SuperYangMills,
    b: &[Scalar],
    omega2: &[Scalar],
    shift: &Scalar,
) -> Result<ShiftedReport> {
    let g = &sym.metric;
    let d = g.dim();
    let neg = |v: &[Scalar]| v.iter().map(|x| -x).collect::<Vec<_>>();
    let cur = super_current_from_parameters(&neg(b), &neg(omega2), g)?;
    let def = cur.to_deformation(&sym.algebra)?;
    let fc = FilteredCoords::new(d, 3);
    let p = Subspace::span(fc.total_dim(), (0..d).map(|r| fc.encode(&def.deformed_relation(r)).expect("degree 3")))?;

    // (ω g)_ν^λ = ω^{λρ} g_{ρν}
    let rot = |lam: usize, nu: usize| -> Scalar { (0..d).map(|r| &omega2[lam * d + r] * g.down(r, nu)).sum() };
    let bu = g.raise(b);
    let big_b = (0..d).fold(TensorElement::zero(d), |acc, m| acc + TensorElement::generator(d, m).scale(&bu[m]));
    let q = sym.quadratic_element();
    let half = Scalar::half();

    let mut first = Vec::with_capacity(d);
    let mut second = Vec::with_capacity(d);
    let q_hat = quadratic(g, b, shift);
    for nu in 0..d {
        let sn = TensorElement::generator(d, nu);
        let mut x = q.commutator(&sn)? + big_b.commutator(&sn)?;
        for lam in 0..d {
            let k = rot(lam, nu);
            if !k.is_zero() {
                x = x - shifted(d, lam, b, &half).scale(&k);
            }
        }
        first.push(fc.encode(&x)?);

        let sn_hat = shifted(d, nu, b, shift);
        let mut y = q_hat.commutator(&sn_hat)?;
        for tau in 0..d {
            let k = rot(tau, nu);
            if !k.is_zero() {
                y = y - shifted(d, tau, b, shift).scale(&k);
            }
        }
        second.push(fc.encode(&y)?);
    }
    Ok(ShiftedReport {
        commutator_form: Subspace::span(fc.total_dim(), first)? == p,
        hatted_form: Subspace::span(fc.total_dim(), second)? == p,
    })
}
