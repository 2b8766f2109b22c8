//! Dual-pair frames ({x_j}, {τ_j}) for K^m.
//!
//! A pair is stored as two m×n matrices whose columns are the vectors. The
//! frame operator is S = T·X* = Σ τ_j x_j*, the analysis operators are
//! θ_x = X* and θ_τ = T*.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::{self, hermitian_eigen, inverse, is_hermitian, spectral, Field, Mat, Tolerance, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct FramePair {
    x: Mat,
    t: Mat,
    tol: Tolerance,
}

impl FramePair {
    /// Pairs two m×n matrices (columns are the vectors). Fields are joined.
    pub fn new(x: Mat, t: Mat, tol: Tolerance) -> Result<FramePair> {
        if x.shape() != t.shape() {
            return Err(Error::ShapeMismatch("x and tau must share shape"));
        }
        if x.rows() == 0 || x.cols() == 0 {
            return Err(Error::ShapeMismatch("dim and count must be positive"));
        }
        let field = x.field().join(t.field());
        Ok(FramePair { x: x.with_field(field), t: t.with_field(field), tol })
    }

    /// The classical case τ_j = x_j.
    pub fn self_pair(x: Mat, tol: Tolerance) -> Result<FramePair> {
        FramePair::new(x.clone(), x, tol)
    }

    pub fn from_columns(dim: usize, x: &[Vec<C64>], tau: &[Vec<C64>], field: Field, tol: Tolerance) -> Result<FramePair> {
        FramePair::new(Mat::from_columns(dim, x, field)?, Mat::from_columns(dim, tau, field)?, tol)
    }

    pub fn x(&self) -> &Mat {
        &self.x
    }

    pub fn t(&self) -> &Mat {
        &self.t
    }

    pub fn tol(&self) -> Tolerance {
        self.tol
    }

    pub fn with_tol(mut self, tol: Tolerance) -> FramePair {
        self.tol = tol;
        self
    }

    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    pub fn count(&self) -> usize {
        self.x.cols()
    }

    pub fn field(&self) -> Field {
        self.x.field()
    }

    pub fn x_col(&self, j: usize) -> Vec<C64> {
        self.x.col(j)
    }

    pub fn t_col(&self, j: usize) -> Vec<C64> {
        self.t.col(j)
    }

    fn same_shape(&self, other: &FramePair) -> Result<()> {
        if self.dim() != other.dim() || self.count() != other.count() {
            return Err(Error::ShapeMismatch("pairs differ in dim or count"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameReport {
    pub self_adjoint: bool,
    pub psd: bool,
    pub invertible: bool,
    pub is_frame: bool,
    pub is_bessel: bool,
    pub lower_a: f64,
    pub upper_b: f64,
    pub tight: bool,
    pub parseval: bool,
}

pub fn frame_operator(fp: &FramePair) -> Mat {
    &fp.t * &fp.x.adjoint()
}

/// Frame verdict for a Hermitian-or-not operator S.
///
/// Shared with the operator-valued layer, which reports the same flags.
pub(crate) fn report_for_operator(s: &Mat, tol: &Tolerance) -> FrameReport {
    let self_adjoint = is_hermitian(s, tol);
    let spec = match spectral(s, tol) {
        Ok(r) => r,
        Err(_) => {
            return FrameReport {
                self_adjoint,
                psd: false,
                invertible: false,
                is_frame: false,
                is_bessel: false,
                lower_a: 0.0,
                upper_b: 0.0,
                tight: false,
                parseval: false,
            }
        }
    };
    let psd = spec.is_psd;
    let invertible = spec.eigenvalues.iter().all(|z| z.norm() > tol.abs_tol);
    let is_frame = self_adjoint && psd && invertible;
    let (lower_a, upper_b) = if is_frame {
        (spec.eigenvalues[0].re, spec.eigenvalues[spec.eigenvalues.len() - 1].re)
    } else {
        (0.0, 0.0)
    };
    let tight = is_frame && upper_b - lower_a <= tol.bound(upper_b);
    let parseval = tight && (upper_b - 1.0).abs() <= tol.bound(1.0) && (lower_a - 1.0).abs() <= tol.bound(1.0);
    FrameReport { self_adjoint, psd, invertible, is_frame, is_bessel: self_adjoint && psd, lower_a, upper_b, tight, parseval }
}

/// Checks self-adjointness, then positivity, then invertibility of S.
/// In finite dimension weak frames coincide with frames, so this is also the
/// weak-frame predicate.
pub fn verify(fp: &FramePair) -> FrameReport {
    report_for_operator(&frame_operator(fp), &fp.tol)
}

fn require_frame(fp: &FramePair) -> Result<(FrameReport, Mat)> {
    let rep = verify(fp);
    if !rep.is_frame {
        return Err(Error::NotAFrame);
    }
    let s = frame_operator(fp).hermitian_part();
    let sinv = inverse(&s)?.hermitian_part();
    Ok((rep, sinv))
}

pub fn canonical_dual(fp: &FramePair) -> Result<FramePair> {
    let (_, sinv) = require_frame(fp)?;
    FramePair::new(&sinv * &fp.x, &sinv * &fp.t, fp.tol)
}

pub fn is_dual(fp: &FramePair, gq: &FramePair) -> Result<bool> {
    fp.same_shape(gq)?;
    let id = Mat::identity(fp.dim(), Field::Real);
    let a = &gq.t * &fp.x.adjoint();
    let b = &gq.x * &fp.t.adjoint();
    Ok(fp.tol.mat_close(&a, &id) && fp.tol.mat_close(&b, &id))
}

/// Zero test for a product, scaled by the Frobenius norms of its factors.
fn product_vanishes(prod: &Mat, f1: &Mat, f2: &Mat, tol: &Tolerance) -> bool {
    tol.mat_small(prod, f1.norm_fro() * f2.norm_fro())
}

pub fn is_orthogonal(fp: &FramePair, gq: &FramePair) -> Result<bool> {
    fp.same_shape(gq)?;
    let a = &gq.t * &fp.x.adjoint();
    let b = &gq.x * &fp.t.adjoint();
    Ok(product_vanishes(&a, &gq.t, &fp.x, &fp.tol) && product_vanishes(&b, &gq.x, &fp.t, &fp.tol))
}

/// Every dual of a frame: y_j = S⁻¹x_j + V(e_j − θ_τS⁻¹x_j),
/// ω_j = S⁻¹τ_j + U(e_j − θ_xS⁻¹τ_j), kept only when the resulting frame
/// operator S⁻¹ + UV* − UX*S⁻¹TV* is Hermitian positive definite.
pub fn make_dual_from_params(fp: &FramePair, u: &Mat, v: &Mat) -> Result<FramePair> {
    let (_, sinv) = require_frame(fp)?;
    let (m, n) = (fp.dim(), fp.count());
    if u.shape() != (m, n) || v.shape() != (m, n) {
        return Err(Error::ShapeMismatch("U and V must be m x n"));
    }
    let idn = Mat::identity(n, Field::Real);
    let sx = &sinv * &fp.x;
    let st = &sinv * &fp.t;
    let y = &sx + &(v * &(&idn - &(&fp.t.adjoint() * &sx)));
    let w = &st + &(u * &(&idn - &(&fp.x.adjoint() * &st)));
    let cond = &(&sinv + &(u * &v.adjoint())) - &(&(u * &(&fp.x.adjoint() * &st)) * &v.adjoint());
    let rep = spectral(&cond, &fp.tol)?;
    if !rep.is_pd {
        return Err(Error::ParamNotAdmissible);
    }
    FramePair::new(y, w, fp.tol)
}

pub fn common_dual(fp: &FramePair, gq: &FramePair) -> Result<FramePair> {
    let (_, s1) = require_frame(fp)?;
    let (_, s2) = require_frame(gq)?;
    if !is_orthogonal(fp, gq)? {
        return Err(Error::NotOrthogonal);
    }
    let z = &(&s1 * &fp.x) + &(&s2 * &gq.x);
    let rho = &(&s1 * &fp.t) + &(&s2 * &gq.t);
    FramePair::new(z, rho, fp.tol)
}

/// P = θ_x S⁻¹ θ_τ* = X* S⁻¹ T, an n×n idempotent.
pub fn frame_idempotent(fp: &FramePair) -> Result<Mat> {
    let (_, sinv) = require_frame(fp)?;
    Ok(&(&fp.x.adjoint() * &sinv) * &fp.t)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub riesz_frame: bool,
    pub orthonormal_frame: bool,
    /// Entry (k, j) is ⟨x_j, τ_k⟩.
    pub cross_gram: Mat,
}

pub fn classify(fp: &FramePair) -> Result<Classification> {
    let p = frame_idempotent(fp)?;
    let rep = verify(fp);
    let id = Mat::identity(fp.count(), Field::Real);
    let cross_gram = &fp.t.adjoint() * &fp.x;
    let riesz_frame = fp.tol.mat_close(&p, &id);
    let orthonormal_frame = rep.parseval && fp.tol.mat_close(&cross_gram, &id);
    Ok(Classification { riesz_frame, orthonormal_frame, cross_gram })
}

/// Stacks (x_j ⊕ y_j, τ_j ⊕ ω_j) in K^{m₁+m₂}.
pub fn direct_sum(fp: &FramePair, gq: &FramePair) -> Result<FramePair> {
    if fp.count() != gq.count() {
        return Err(Error::CountMismatch(fp.count(), gq.count()));
    }
    FramePair::new(fp.x.vstack(&gq.x)?, fp.t.vstack(&gq.t)?, fp.tol)
}

/// Columns x_j ⊗ y_l and τ_j ⊗ ω_l at index j·n₂ + l.
pub fn tensor_product(fp: &FramePair, gq: &FramePair) -> FramePair {
    FramePair { x: fp.x.kron(&gq.x), t: fp.t.kron(&gq.t), tol: fp.tol }
}

/// Mixes two orthogonal Parseval pairs: ({Ax_j + By_j}, {Cτ_j + Dω_j}),
/// Parseval whenever AC* + BD* = I.
pub fn interpolate_parseval(fp: &FramePair, gq: &FramePair, a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Result<FramePair> {
    fp.same_shape(gq)?;
    let m = fp.dim();
    if [a, b, c, d].iter().any(|z| z.shape() != (m, m)) {
        return Err(Error::ShapeMismatch("coefficients must be m x m"));
    }
    if !verify(fp).parseval || !verify(gq).parseval {
        return Err(Error::NotParseval);
    }
    if !is_orthogonal(fp, gq)? {
        return Err(Error::NotOrthogonal);
    }
    let mix = &(a * &c.adjoint()) + &(b * &d.adjoint());
    if !fp.tol.mat_close(&mix, &Mat::identity(m, Field::Real)) {
        return Err(Error::BadCoefficients);
    }
    FramePair::new(&(a * &fp.x) + &(b * &gq.x), &(c * &fp.t) + &(d * &gq.t), fp.tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Similarity {
    /// y_j = Txy x_j
    pub txy: Mat,
    /// ω_j = Ttw τ_j
    pub ttw: Mat,
}

fn numerically_invertible(m: &Mat, tol: &Tolerance) -> bool {
    let sv = numerics::singular_values(m);
    sv.last().copied().unwrap_or(0.0) > tol.bound(sv.first().copied().unwrap_or(0.0))
}

/// The only candidates are Txy = YT*S⁻¹ and Ttw = ΩX*S⁻¹; they are returned
/// when invertible and reproducing. Equivalent to equal frame idempotents.
pub fn similarity_detect(fp: &FramePair, gq: &FramePair) -> Result<Option<Similarity>> {
    fp.same_shape(gq)?;
    let (_, sinv) = require_frame(fp)?;
    require_frame(gq)?;
    let txy = &(&gq.x * &fp.t.adjoint()) * &sinv;
    let ttw = &(&gq.t * &fp.x.adjoint()) * &sinv;
    let tol = fp.tol;
    if !numerically_invertible(&txy, &tol) || !numerically_invertible(&ttw, &tol) {
        return Ok(None);
    }
    if !tol.mat_close(&(&txy * &fp.x), &gq.x) || !tol.mat_close(&(&ttw * &fp.t), &gq.t) {
        return Ok(None);
    }
    Ok(Some(Similarity { txy, ttw }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParsevalMode {
    /// (S⁻¹X, T)
    LeftOnX,
    /// (S^{-1/2}X, S^{-1/2}T)
    Split,
    /// (X, S⁻¹T)
    LeftOnT,
}

pub fn parsevalize(fp: &FramePair, mode: ParsevalMode) -> Result<FramePair> {
    let (_, sinv) = require_frame(fp)?;
    match mode {
        ParsevalMode::LeftOnX => FramePair::new(&sinv * &fp.x, fp.t.clone(), fp.tol),
        ParsevalMode::LeftOnT => FramePair::new(fp.x.clone(), &sinv * &fp.t, fp.tol),
        ParsevalMode::Split => {
            let s = frame_operator(fp).hermitian_part();
            let half = numerics::hermitian_function(&s, |l| 1.0 / l.sqrt())?;
            FramePair::new(&half * &fp.x, &half * &fp.t, fp.tol)
        }
    }
}

/// Orthogonal projector onto the column space of `a` (full column rank assumed).
pub(crate) fn range_projector(a: &Mat) -> Result<Mat> {
    let g = &a.adjoint() * a;
    Ok(&(a * &inverse(&g)?) * &a.adjoint())
}

/// Orthonormal basis (columns) of the kernel of an orthogonal projector `p`.
pub(crate) fn projector_complement_basis(p: &Mat) -> Result<Mat> {
    let n = p.rows();
    let comp = &Mat::identity(n, p.field()) - p;
    let (vals, v) = hermitian_eigen(&comp)?;
    let keep: Vec<usize> = (0..n).filter(|&k| vals[k] > 0.5).collect();
    Ok(Mat::from_fn(n, keep.len(), p.field(), |i, j| v[(i, keep[j])]))
}

/// Checks the dilation preconditions on analysis operators (n×m-shaped) and
/// returns the frame idempotent.
pub(crate) fn dilation_projection(theta_a: &Mat, theta_psi: &Mat, sinv: &Mat, tol: &Tolerance) -> Result<Mat> {
    let pa = range_projector(theta_a).map_err(|_| Error::RangesDiffer)?;
    let pp = range_projector(theta_psi).map_err(|_| Error::RangesDiffer)?;
    if !tol.mat_small(&(&pa - &pp), 1.0) {
        return Err(Error::RangesDiffer);
    }
    let p = &(theta_a * sinv) * &theta_psi.adjoint();
    if !tol.mat_close(&p, &p.adjoint()) || !tol.mat_close(&(&p * &p), &p) {
        return Err(Error::IdempotentNotProjection);
    }
    Ok(p.hermitian_part())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dilation {
    pub big: FramePair,
    pub embed_dim: usize,
}

/// Naimark-type dilation of a Parseval pair to an orthonormal frame on
/// K^m ⊕ ran(θ_x)⊥, with y_j = x_j ⊕ P⊥e_j and ω_j = τ_j ⊕ P⊥e_j expressed
/// in an orthonormal basis W of ran(θ_x)⊥.
pub fn dilate(fp: &FramePair) -> Result<Dilation> {
    if !verify(fp).parseval {
        return Err(Error::NotParseval);
    }
    let (_, sinv) = require_frame(fp)?;
    let p = dilation_projection(&fp.x.adjoint(), &fp.t.adjoint(), &sinv, &fp.tol)?;
    let w = projector_complement_basis(&p)?;
    let extra = w.adjoint();
    let big = if extra.rows() == 0 {
        fp.clone()
    } else {
        FramePair::new(fp.x.vstack(&extra)?, fp.t.vstack(&extra)?, fp.tol)?
    };
    let embed_dim = big.dim();
    Ok(Dilation { big, embed_dim })
}
