//! Operator-valued frame pairs (A_j, Ψ_j) with A_j, Ψ_j : K^m → K^{d_j}.
//!
//! θ_A stacks the A_j vertically (Σd_j × m), S = ΣΨ_j*A_j = θ_Ψ*θ_A and
//! P = θ_A S⁻¹ θ_Ψ*. Codomains are usually uniform; the tight extension is the
//! one operation that appends a member with its own codomain.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::frame::{self, FramePair, FrameReport};
use crate::numerics::{self, inverse, spectral, Field, Mat, Tolerance, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct OvfPair {
    a: Vec<Mat>,
    psi: Vec<Mat>,
    m: usize,
    tol: Tolerance,
}

impl OvfPair {
    pub fn new(a: Vec<Mat>, psi: Vec<Mat>, tol: Tolerance) -> Result<OvfPair> {
        if a.is_empty() || a.len() != psi.len() {
            return Err(Error::ShapeMismatch("A and Psi need the same positive count"));
        }
        let m = a[0].cols();
        if m == 0 {
            return Err(Error::ShapeMismatch("domain dimension must be positive"));
        }
        for (aj, pj) in a.iter().zip(&psi) {
            if aj.shape() != pj.shape() || aj.cols() != m || aj.rows() == 0 {
                return Err(Error::ShapeMismatch("member shapes differ"));
            }
        }
        let field = a.iter().chain(&psi).fold(Field::Real, |f, z| f.join(z.field()));
        let a = a.iter().map(|z| z.with_field(field)).collect();
        let psi = psi.iter().map(|z| z.with_field(field)).collect();
        Ok(OvfPair { a, psi, m, tol })
    }

    pub fn a(&self) -> &[Mat] {
        &self.a
    }

    pub fn psi(&self) -> &[Mat] {
        &self.psi
    }

    pub fn domain_dim(&self) -> usize {
        self.m
    }

    pub fn count(&self) -> usize {
        self.a.len()
    }

    pub fn codims(&self) -> Vec<usize> {
        self.a.iter().map(|z| z.rows()).collect()
    }

    /// The common codomain dimension, if all members share one.
    pub fn uniform_codim(&self) -> Option<usize> {
        let d = self.a[0].rows();
        self.a.iter().all(|z| z.rows() == d).then_some(d)
    }

    pub fn total_codim(&self) -> usize {
        self.a.iter().map(|z| z.rows()).sum()
    }

    pub fn field(&self) -> Field {
        self.a[0].field()
    }

    pub fn tol(&self) -> Tolerance {
        self.tol
    }

    pub fn with_tol(mut self, tol: Tolerance) -> OvfPair {
        self.tol = tol;
        self
    }

    pub fn theta_a(&self) -> Mat {
        stack(&self.a)
    }

    pub fn theta_psi(&self) -> Mat {
        stack(&self.psi)
    }

    fn same_shape(&self, other: &OvfPair) -> Result<()> {
        if self.m != other.m || self.codims() != other.codims() {
            return Err(Error::ShapeMismatch("operator pairs differ in shape"));
        }
        Ok(())
    }
}

fn stack(ms: &[Mat]) -> Mat {
    let mut out = ms[0].clone();
    for z in &ms[1..] {
        out = out.vstack(z).expect("members share the domain");
    }
    out
}

fn frame_operator(op: &OvfPair) -> Mat {
    let mut s = Mat::zeros(op.m, op.m, op.field());
    for (aj, pj) in op.a.iter().zip(&op.psi) {
        s = &s + &(&pj.adjoint() * aj);
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct OvfOperators {
    pub s: Mat,
    pub theta_a: Mat,
    pub theta_psi: Mat,
    /// Present exactly when S is invertible.
    pub p: Option<Mat>,
}

fn invertible(m: &Mat, tol: &Tolerance) -> bool {
    let sv = numerics::singular_values(m);
    sv.last().copied().unwrap_or(0.0) > tol.bound(sv.first().copied().unwrap_or(0.0))
}

pub fn ovf_operators(op: &OvfPair) -> OvfOperators {
    let s = frame_operator(op);
    let theta_a = op.theta_a();
    let theta_psi = op.theta_psi();
    let p = if invertible(&s, &op.tol) {
        inverse(&s).ok().map(|sinv| &(&theta_a * &sinv) * &theta_psi.adjoint())
    } else {
        None
    };
    OvfOperators { s, theta_a, theta_psi, p }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OvfReport {
    pub frame: FrameReport,
    pub riesz_ovf: bool,
    pub orthonormal_ovf: bool,
}

fn cross_identities(a: &[Mat], psi: &[Mat], tol: &Tolerance) -> bool {
    for (j, aj) in a.iter().enumerate() {
        for (k, pk) in psi.iter().enumerate() {
            let prod = aj * &pk.adjoint();
            let ok = if j == k {
                prod.is_square() && tol.mat_close(&prod, &Mat::identity(prod.rows(), Field::Real))
            } else {
                tol.mat_small(&prod, aj.norm_fro() * pk.norm_fro())
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

pub fn verify_ovf(op: &OvfPair) -> OvfReport {
    let ops = ovf_operators(op);
    let frame = frame::report_for_operator(&ops.s, &op.tol);
    let riesz_ovf = frame.is_frame
        && ops.p.as_ref().is_some_and(|p| op.tol.mat_close(p, &Mat::identity(p.rows(), Field::Real)));
    let orthonormal_ovf = frame.parseval && cross_identities(&op.a, &op.psi, &op.tol);
    OvfReport { frame, riesz_ovf, orthonormal_ovf }
}

fn require_frame(op: &OvfPair) -> Result<Mat> {
    if !verify_ovf(op).frame.is_frame {
        return Err(Error::NotAFrame);
    }
    Ok(inverse(&frame_operator(op).hermitian_part())?.hermitian_part())
}

/// (A_jS⁻¹, Ψ_jS⁻¹).
pub fn canonical_dual_ovf(op: &OvfPair) -> Result<OvfPair> {
    let sinv = require_frame(op)?;
    OvfPair::new(op.a.iter().map(|z| z * &sinv).collect(), op.psi.iter().map(|z| z * &sinv).collect(), op.tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualityRelation {
    pub dual: bool,
    pub orthogonal: bool,
}

/// Classifies the mixed sums ΣΦ_j*A_j and ΣB_j*Ψ_j of op1 = (A, Ψ) and op2 = (B, Φ).
pub fn duality_relation(op1: &OvfPair, op2: &OvfPair) -> Result<DualityRelation> {
    op1.same_shape(op2)?;
    let m = op1.m;
    let mut s1 = Mat::zeros(m, m, Field::Complex);
    let mut s2 = Mat::zeros(m, m, Field::Complex);
    let mut scale1 = 0.0;
    let mut scale2 = 0.0;
    for j in 0..op1.count() {
        s1 = &s1 + &(&op2.psi[j].adjoint() * &op1.a[j]);
        s2 = &s2 + &(&op2.a[j].adjoint() * &op1.psi[j]);
        scale1 += op2.psi[j].norm_fro() * op1.a[j].norm_fro();
        scale2 += op2.a[j].norm_fro() * op1.psi[j].norm_fro();
    }
    let id = Mat::identity(m, Field::Real);
    let tol = op1.tol;
    Ok(DualityRelation {
        dual: tol.mat_close(&s1, &id) && tol.mat_close(&s2, &id),
        orthogonal: tol.mat_small(&s1, scale1) && tol.mat_small(&s2, scale2),
    })
}

/// Coordinate block selectors: A_j = Ψ_j = rows [jd, (j+1)d) of I_{nd}.
pub fn onb_blocks(n: usize, d: usize) -> Result<OvfPair> {
    if n == 0 || d == 0 {
        return Err(Error::ShapeMismatch("n and d must be positive"));
    }
    let id = Mat::identity(n * d, Field::Real);
    let blocks: Vec<Mat> = (0..n).map(|j| id.submatrix(j * d, (j + 1) * d, 0, n * d)).collect();
    OvfPair::new(blocks.clone(), blocks, Tolerance::default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorClass {
    None,
    Bessel,
    Frame,
    RieszOvf,
    RieszBasis,
    OrthonormalOvf,
    OnbPair,
}

impl FactorClass {
    pub fn name(&self) -> &'static str {
        match self {
            FactorClass::None => "None",
            FactorClass::Bessel => "Bessel",
            FactorClass::Frame => "Frame",
            FactorClass::RieszOvf => "RieszOvf",
            FactorClass::RieszBasis => "RieszBasis",
            FactorClass::OrthonormalOvf => "OrthonormalOvf",
            FactorClass::OnbPair => "OnbPair",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FactorFlags {
    pub bessel: bool,
    pub frame: bool,
    pub riesz_ovf: bool,
    pub orthonormal_ovf: bool,
    pub riesz_basis: bool,
    pub onb_pair: bool,
}

impl FactorFlags {
    /// Strongest label, precedence OnbPair > OrthonormalOvf > RieszBasis >
    /// RieszOvf > Frame > Bessel.
    pub fn strongest(&self) -> FactorClass {
        if self.onb_pair {
            FactorClass::OnbPair
        } else if self.orthonormal_ovf {
            FactorClass::OrthonormalOvf
        } else if self.riesz_basis {
            FactorClass::RieszBasis
        } else if self.riesz_ovf {
            FactorClass::RieszOvf
        } else if self.frame {
            FactorClass::Frame
        } else if self.bessel {
            FactorClass::Bessel
        } else {
            FactorClass::None
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub u: Mat,
    pub v: Mat,
    pub class: FactorClass,
    pub flags: FactorFlags,
    /// Ψ_j = c_jA_j weights when such a structure exists.
    pub weights: Option<Vec<f64>>,
}

fn is_onb(f: &OvfPair, tol: &Tolerance) -> bool {
    let Some(d) = f.uniform_codim() else { return false };
    if f.m != f.count() * d {
        return false;
    }
    if f.a.iter().zip(&f.psi).any(|(a, p)| !tol.mat_close(a, p)) {
        return false;
    }
    cross_identities(&f.a, &f.a, tol) && tol.mat_close(&frame_operator(f), &Mat::identity(f.m, Field::Real))
}

/// Positive weights c_j with Ψ_j = c_jA_j, when that structure holds.
fn proportional_weights(a: &[Mat], psi: &[Mat], tol: &Tolerance) -> Option<Vec<f64>> {
    let mut out = Vec::with_capacity(a.len());
    for (aj, pj) in a.iter().zip(psi) {
        let na = aj.norm_fro();
        if na == 0.0 {
            return None;
        }
        let c: C64 = aj.data().iter().zip(pj.data()).map(|(x, y)| y * x.conj()).sum::<C64>() / (na * na);
        if c.re <= tol.abs_tol || !tol.is_small(c.im, c.re) {
            return None;
        }
        if !tol.mat_close(&aj.scale_real(c.re), pj) {
            return None;
        }
        out.push(c.re);
    }
    Some(out)
}

/// Writes op against an orthonormal operator basis F: A_j = F_jU, Ψ_j = F_jV
/// with U = ΣF_j*A_j and V = ΣF_j*Ψ_j, then classifies through (U, V).
///
/// With m = n·d the matrices U, V are square, so the Frame, RieszOvf and
/// RieszBasis conditions coincide; the precedence picks RieszBasis for all three.
pub fn factorize_against_onb(op: &OvfPair, f: &OvfPair) -> Result<Factorization> {
    let tol = op.tol;
    if f.count() != op.count() || f.m != op.m || f.codims() != op.codims() || !is_onb(f, &tol) {
        return Err(Error::NotOnb);
    }
    let m = op.m;
    let mut u = Mat::zeros(m, m, op.field());
    let mut v = Mat::zeros(m, m, op.field());
    for j in 0..op.count() {
        u = &u + &(&f.a[j].adjoint() * &op.a[j]);
        v = &v + &(&f.a[j].adjoint() * &op.psi[j]);
    }
    for j in 0..op.count() {
        debug_assert!(tol.mat_close(&(&f.a[j] * &u), &op.a[j]));
    }
    let id = Mat::identity(m, Field::Real);
    let vu = &v.adjoint() * &u;
    let spec = spectral(&vu, &tol)?;
    let mut flags = FactorFlags { bessel: spec.is_psd, frame: spec.is_pd, ..Default::default() };
    if flags.frame {
        let proj = &(&u * &inverse(&vu)?) * &v.adjoint();
        flags.riesz_ovf = tol.mat_close(&proj, &id);
        flags.riesz_basis = invertible(&u, &tol) && invertible(&v, &tol);
    }
    flags.orthonormal_ovf = tol.mat_close(&vu, &id) && tol.mat_close(&(&u * &v.adjoint()), &id);
    let weights = proportional_weights(&op.a, &op.psi, &tol);
    flags.onb_pair = weights.is_some() && tol.mat_close(&(&u.adjoint() * &u), &id);
    Ok(Factorization { class: flags.strongest(), u, v, flags, weights })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedCheck {
    pub holds: bool,
    pub deficiency: Mat,
}

/// Generalized Bessel inequality for Ψ_j = c_jA_j over an orthonormal set:
/// Σ(2 − c_j)Ψ_j*A_j ≤ I.
pub fn weighted_onb_bessel_check(op: &OvfPair, c: &[f64]) -> Result<WeightedCheck> {
    if c.len() != op.count() {
        return Err(Error::CountMismatch(c.len(), op.count()));
    }
    let tol = op.tol;
    if c.iter().any(|&w| w > 2.0 + tol.bound(2.0)) {
        return Err(Error::WeightTooLarge);
    }
    if c.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::NotWeightedOnb);
    }
    for (j, aj) in op.a.iter().enumerate() {
        if !tol.mat_close(&aj.scale_real(c[j]), &op.psi[j]) {
            return Err(Error::NotWeightedOnb);
        }
    }
    if !cross_identities(&op.a, &op.a, &tol) {
        return Err(Error::NotWeightedOnb);
    }
    let m = op.m;
    let mut sum = Mat::zeros(m, m, op.field());
    for j in 0..op.count() {
        sum = &sum + &(&op.psi[j].adjoint() * &op.a[j]).scale_real(2.0 - c[j]);
    }
    let deficiency = &Mat::identity(m, op.field()) - &sum;
    let holds = spectral(&deficiency, &tol)?.is_psd;
    Ok(WeightedCheck { holds, deficiency })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RightSimilarity {
    /// B_j = A_j R_ab
    pub r_ab: Mat,
    /// Φ_j = Ψ_j R_psiphi
    pub r_psiphi: Mat,
}

pub fn right_similarity_detect(op1: &OvfPair, op2: &OvfPair) -> Result<Option<RightSimilarity>> {
    op1.same_shape(op2)?;
    let sinv = require_frame(op1)?;
    require_frame(op2)?;
    let r_ab = &(&sinv * &op1.theta_psi().adjoint()) * &op2.theta_a();
    let r_psiphi = &(&sinv * &op1.theta_a().adjoint()) * &op2.theta_psi();
    let tol = op1.tol;
    if !invertible(&r_ab, &tol) || !invertible(&r_psiphi, &tol) {
        return Ok(None);
    }
    for j in 0..op1.count() {
        if !tol.mat_close(&(&op1.a[j] * &r_ab), &op2.a[j]) || !tol.mat_close(&(&op1.psi[j] * &r_psiphi), &op2.psi[j]) {
            return Ok(None);
        }
    }
    Ok(Some(RightSimilarity { r_ab, r_psiphi }))
}

/// C_{(l,j)} = B_lA_j, Ξ_{(l,j)} = Φ_lΨ_j at index l·n_inner + j.
pub fn compose_ovf(outer: &OvfPair, inner: &OvfPair) -> Result<OvfPair> {
    if inner.codims().iter().any(|&d| d != outer.m) {
        return Err(Error::ShapeMismatch("inner codomain must equal outer domain"));
    }
    let mut a = Vec::with_capacity(outer.count() * inner.count());
    let mut psi = Vec::with_capacity(a.capacity());
    for l in 0..outer.count() {
        for j in 0..inner.count() {
            a.push(&outer.a[l] * &inner.a[j]);
            psi.push(&outer.psi[l] * &inner.psi[j]);
        }
    }
    OvfPair::new(a, psi, inner.tol)
}

/// C_{(j,l)} = A_j ⊗ B_l at index j·n₂ + l.
pub fn tensor_ovf(op1: &OvfPair, op2: &OvfPair) -> OvfPair {
    let mut a = Vec::with_capacity(op1.count() * op2.count());
    let mut psi = Vec::with_capacity(a.capacity());
    for j in 0..op1.count() {
        for l in 0..op2.count() {
            a.push(op1.a[j].kron(&op2.a[l]));
            psi.push(op1.psi[j].kron(&op2.psi[l]));
        }
    }
    OvfPair::new(a, psi, op1.tol).expect("tensor members share shapes")
}

/// Appends B = (λI − S)^{1/2} (an m×m member) to both families, giving S' = λI.
pub fn extend_tight_ovf(op: &OvfPair, lambda: f64) -> Result<OvfPair> {
    let s = frame_operator(op);
    let tol = op.tol;
    let spec = spectral(&s, &tol)?;
    if !spec.is_psd {
        return Err(Error::NotBessel);
    }
    let top = spec.eigenvalues.last().map(|z| z.re).unwrap_or(0.0);
    if !(lambda > top + tol.bound(top)) {
        return Err(Error::LambdaTooSmall);
    }
    let gap = &Mat::identity(op.m, op.field()).scale_real(lambda) - &s.hermitian_part();
    let b = numerics::hermitian_function(&gap, |l| l.max(0.0).sqrt())?;
    let mut a = op.a.clone();
    let mut psi = op.psi.clone();
    a.push(b.clone());
    psi.push(b);
    OvfPair::new(a, psi, tol)
}

/// Orthonormal OVF on K^m ⊕ ran(θ_A)⊥ with B_j = [A_j | L_j*P⊥] and
/// Φ_j = [Ψ_j | L_j*P⊥], the second block written in an orthonormal basis of
/// ran(θ_A)⊥.
pub fn dilate_ovf(op: &OvfPair) -> Result<OvfPair> {
    if !verify_ovf(op).frame.parseval {
        return Err(Error::NotParseval);
    }
    let sinv = require_frame(op)?;
    let p = frame::dilation_projection(&op.theta_a(), &op.theta_psi(), &sinv, &op.tol)?;
    let w = frame::projector_complement_basis(&p)?;
    if w.cols() == 0 {
        return Ok(op.clone());
    }
    let mut a = Vec::with_capacity(op.count());
    let mut psi = Vec::with_capacity(op.count());
    let mut row = 0;
    for j in 0..op.count() {
        let d = op.a[j].rows();
        let wj = w.submatrix(row, row + d, 0, w.cols());
        row += d;
        a.push(op.a[j].hstack(&wj)?);
        psi.push(op.psi[j].hstack(&wj)?);
    }
    OvfPair::new(a, psi, op.tol)
}

/// A_j = x_j* and Ψ_j = τ_j* (1×m rows).
pub fn ovf_bridge(fp: &FramePair) -> OvfPair {
    let xs = fp.x().adjoint();
    let ts = fp.t().adjoint();
    let n = fp.count();
    let a = (0..n).map(|j| xs.submatrix(j, j + 1, 0, fp.dim())).collect();
    let psi = (0..n).map(|j| ts.submatrix(j, j + 1, 0, fp.dim())).collect();
    OvfPair::new(a, psi, fp.tol()).expect("bridge preserves shapes")
}

/// Inverse of [`ovf_bridge`]; only defined for one-dimensional codomains.
pub fn ovf_to_frame(op: &OvfPair) -> Result<FramePair> {
    if op.uniform_codim() != Some(1) {
        return Err(Error::CodomainNotOneDim);
    }
    let x = stack(&op.a).adjoint();
    let t = stack(&op.psi).adjoint();
    FramePair::new(x, t, op.tol)
}
