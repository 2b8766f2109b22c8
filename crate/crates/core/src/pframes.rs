//! Sequential p-frames on ℓᵖ_m = (K^m, ‖·‖_p).
//!
//! Functionals f_j are the rows of F (n×m), vectors τ_j the columns of T
//! (m×n), and Ŝ = T·F. Operator norms away from p = 2 are only known up to
//! an interval, so every bound here is reported as one.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{
    eigenvalues, hermitian_eigen, inverse, norm_p, pnorm_estimate, principal_power, rank, sampling, sigma_max,
    sigma_min, Field, Interval, Mat, Tolerance, C64,
};

pub const DEFAULT_SAMPLES: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct PFramePair {
    p: f64,
    f: Mat,
    tau: Mat,
    tol: Tolerance,
}

impl PFramePair {
    pub fn new(p: f64, f: Mat, tau: Mat, tol: Tolerance) -> Result<PFramePair> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::BadExponent(p));
        }
        if f.rows() != tau.cols() || f.cols() != tau.rows() || f.rows() == 0 || f.cols() == 0 {
            return Err(Error::ShapeMismatch("f must be n×m and tau m×n"));
        }
        if !f.is_finite() || !tau.is_finite() {
            return Err(Error::NonFinite);
        }
        let field = f.field().join(tau.field());
        Ok(PFramePair { p, f: f.with_field(field), tau: tau.with_field(field), tol })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn f(&self) -> &Mat {
        &self.f
    }

    pub fn tau(&self) -> &Mat {
        &self.tau
    }

    pub fn tol(&self) -> Tolerance {
        self.tol
    }

    pub fn with_tol(mut self, tol: Tolerance) -> PFramePair {
        self.tol = tol;
        self
    }

    pub fn dim(&self) -> usize {
        self.tau.rows()
    }

    pub fn count(&self) -> usize {
        self.tau.cols()
    }

    pub fn field(&self) -> Field {
        self.tau.field()
    }

    pub fn s_hat(&self) -> Mat {
        &self.tau * &self.f
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PReport {
    pub resolvent_ok: bool,
    pub tight: bool,
    pub parseval: bool,
    /// Absent when Ŝ^{1/p} could not be formed (e.g. Ŝ not diagonalizable).
    pub lower_a: Option<Interval>,
    pub upper_b: Option<Interval>,
}

/// No eigenvalue of Ŝ within tol of the cut (−∞, 0].
fn resolvent_ok(s: &Mat, tol: &Tolerance) -> bool {
    let Ok(vals) = eigenvalues(s) else { return false };
    let radius = vals.iter().fold(0.0f64, |r, z| r.max(z.norm()));
    vals.iter().all(|l| {
        let dist = if l.re <= 0.0 { l.im.abs() } else { l.norm() };
        dist > tol.bound(radius)
    })
}

pub fn p_verify(pf: &PFramePair) -> PReport {
    p_verify_with(pf, DEFAULT_SAMPLES, 0)
}

pub fn p_verify_with(pf: &PFramePair, samples: usize, seed: u64) -> PReport {
    let tol = pf.tol;
    let s = pf.s_hat();
    let ok = resolvent_ok(&s, &tol);
    let m = pf.dim();
    let alpha = s.trace() / m as f64;
    let scalar = Mat::identity(m, s.field()).scale(alpha);
    let tight = ok && tol.mat_close(&s, &scalar);
    let parseval = tight && tol.mat_close(&s, &Mat::identity(m, s.field()));
    let mut report = PReport { resolvent_ok: ok, tight, parseval, lower_a: None, upper_b: None };
    if !ok {
        return report;
    }
    let p = pf.p;
    let Ok(root) = principal_power(&s, 1.0 / p, &tol) else { return report };
    let Ok(rinv) = inverse(&root) else { return report };
    let (Ok(nr), Ok(ni)) = (pnorm_estimate(&root, p, samples, seed), pnorm_estimate(&rinv, p, samples, seed)) else {
        return report;
    };
    report.upper_b = Some(Interval { lower: nr.lower.powf(p), upper: nr.upper.powf(p) });
    report.lower_a = Some(Interval { lower: 1.0 / ni.upper.powf(p), upper: 1.0 / ni.lower.powf(p) });
    report
}

#[derive(Clone, Debug, PartialEq)]
pub struct POrthonormal {
    pub consistent: bool,
    pub witness: Option<Vec<C64>>,
}

/// Falsifier for ‖Σc_jx_j‖_pᵖ = Σ|c_j|ᵖ: unit norms, every ±1 pattern when
/// n ≤ 12, then `trials` seeded Gaussian coefficient vectors with random zeros.
pub fn p_orthonormal_check(vectors: &Mat, p: f64, trials: usize, seed: u64, tol: &Tolerance) -> Result<POrthonormal> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::BadExponent(p));
    }
    let n = vectors.cols();
    let violates = |c: &[C64]| {
        let want: f64 = c.iter().map(|z| z.norm().powf(p)).sum();
        let got = norm_p(&vectors.mul_vec(c), p).powf(p);
        (got - want).abs() > tol.bound(want)
    };
    let found = |c: Vec<C64>| Ok(POrthonormal { consistent: false, witness: Some(c) });
    for j in 0..n {
        let mut e = vec![C64::new(0.0, 0.0); n];
        e[j] = C64::new(1.0, 0.0);
        if violates(&e) {
            return found(e);
        }
    }
    if n <= 12 {
        for mask in 0u32..(1u32 << n) {
            let c: Vec<C64> = (0..n).map(|j| C64::new(if mask >> j & 1 == 1 { -1.0 } else { 1.0 }, 0.0)).collect();
            if violates(&c) {
                return found(c);
            }
        }
    }
    let mut rng = sampling::rng(seed);
    for _ in 0..trials {
        let mut c = sampling::gaussian_vec(&mut rng, n, vectors.field());
        for cj in c.iter_mut() {
            if rng.random_bool(0.25) {
                *cj = C64::new(0.0, 0.0);
            }
        }
        if violates(&c) {
            return found(c);
        }
    }
    Ok(POrthonormal { consistent: true, witness: None })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RieszBounds {
    /// Certified lower end; the upper end is the smallest sampled ratio.
    pub a: Interval,
    pub b: Interval,
}

/// Two-sided bounds a·Σ|c_j|ᵖ ≤ ‖Σc_jx_j‖ᵖ ≤ b·Σ|c_j|ᵖ.
pub fn riesz_p_bounds(vectors: &Mat, p: f64, trials: usize, seed: u64, tol: &Tolerance) -> Result<RieszBounds> {
    let n = vectors.cols();
    let nb = pnorm_estimate(vectors, p, trials, seed)?;
    let b = Interval { lower: nb.lower.powf(p), upper: nb.upper.powf(p) };
    if rank(vectors, tol.bound(sigma_max(vectors))) < n {
        return Err(Error::RankDeficient);
    }
    // left inverse L: ‖c‖ = ‖L·Xc‖ ≤ ‖L‖·‖Xc‖
    let gram = &vectors.adjoint() * vectors;
    let left = &inverse(&gram)? * &vectors.adjoint();
    let nl = pnorm_estimate(&left, p, trials, seed)?;
    let certified = 1.0 / nl.upper.powf(p);

    let ratio = |c: &[C64]| norm_p(&vectors.mul_vec(c), p).powf(p) / norm_p(c, p).powf(p);
    let mut sampled = f64::INFINITY;
    for j in 0..n {
        let mut e = vec![C64::new(0.0, 0.0); n];
        e[j] = C64::new(1.0, 0.0);
        sampled = sampled.min(ratio(&e));
    }
    let (_, v) = hermitian_eigen(&gram)?;
    sampled = sampled.min(ratio(&v.col(0)));
    let mut rng = sampling::rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    for _ in 0..trials {
        let c = sampling::gaussian_vec(&mut rng, n, vectors.field());
        if norm_p(&c, p) > 0.0 {
            sampled = sampled.min(ratio(&c));
        }
    }
    let upper = sampled.min(b.upper).max(certified);
    Ok(RieszBounds { a: Interval { lower: certified.min(upper), upper }, b })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PaleyWiener {
    pub lambda_upper: f64,
    pub concluded: bool,
    /// When concluded: whether I − X⁻¹(X − Y) = X⁻¹Y is invertible.
    pub riesz: Option<bool>,
}

/// ‖Σc_j(x_j−y_j)‖ ≤ λ(Σ|c_j|ᵖ)^{1/p} with λ < 1 around a p-orthonormal basis.
pub fn paley_wiener_check(base: &Mat, y: &Mat, p: f64, trials: usize, seed: u64, tol: &Tolerance) -> Result<PaleyWiener> {
    if !base.is_square() || !p_orthonormal_check(base, p, trials, seed, tol)?.consistent {
        return Err(Error::BaseNotOrthonormal);
    }
    if y.shape() != base.shape() {
        return Err(Error::ShapeMismatch("Y must match the base"));
    }
    let diff = base.try_sub(y)?;
    let lambda_upper = pnorm_estimate(&diff, p, trials, seed)?.upper;
    let concluded = lambda_upper < 1.0;
    let riesz = if concluded {
        let coeff = &inverse(base)? * y;
        Some(sigma_min(&coeff) > tol.bound(sigma_max(&coeff)))
    } else {
        None
    };
    Ok(PaleyWiener { lambda_upper, concluded, riesz })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PDual {
    pub dual: PFramePair,
    pub is_dual: bool,
}

/// (g, ω) is dual to (f, τ) when T_ω·F = T·G = I.
pub fn p_is_dual(pf: &PFramePair, other: &PFramePair) -> Result<bool> {
    if pf.f.shape() != other.f.shape() {
        return Err(Error::ShapeMismatch("pairs differ in dim or count"));
    }
    let id = Mat::identity(pf.dim(), pf.field());
    Ok(pf.tol.mat_close(&(&other.tau * &pf.f), &id) && pf.tol.mat_close(&(&pf.tau * &other.f), &id))
}

/// Rows F·Ŝ⁻¹ and columns Ŝ⁻¹·T.
pub fn p_canonical_dual(pf: &PFramePair) -> Result<PDual> {
    let s = pf.s_hat();
    if !resolvent_ok(&s, &pf.tol) {
        return Err(Error::NotPFrame);
    }
    let sinv = inverse(&s).map_err(|_| Error::NotPFrame)?;
    let dual = PFramePair::new(pf.p, &pf.f * &sinv, &sinv * &pf.tau, pf.tol)?;
    let is_dual = p_is_dual(pf, &dual)?;
    Ok(PDual { dual, is_dual })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourLaws {
    /// (‖x+y‖⁴ − ‖x−y‖⁴)/8
    pub ineq4_lhs: f64,
    /// (‖x‖² + ‖y‖²)‖x‖‖y‖
    pub ineq4_rhs: f64,
    pub ineq4_ok: bool,
    /// ‖x+y‖⁴ + ‖x−y‖⁴
    pub pl4_lhs: f64,
    /// 2(‖x‖⁴ + ‖y‖⁴) + 12‖x‖²‖y‖²
    pub pl4_rhs: f64,
    pub pl4_ok: bool,
}

/// The 4-inequality and 4-parallelogram law in ℓ⁴.
pub fn four_laws_check(x: &[C64], y: &[C64], tol: &Tolerance) -> Result<FourLaws> {
    if x.len() != y.len() {
        return Err(Error::DimMismatch { expected: x.len(), got: y.len() });
    }
    let n4 = |v: &[C64]| norm_p(v, 4.0);
    let sum: Vec<C64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    let dif: Vec<C64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let (nx, ny, ns, nd) = (n4(x), n4(y), n4(&sum), n4(&dif));
    let ineq4_lhs = (ns.powi(4) - nd.powi(4)) / 8.0;
    let ineq4_rhs = (nx * nx + ny * ny) * nx * ny;
    let pl4_lhs = ns.powi(4) + nd.powi(4);
    let pl4_rhs = 2.0 * (nx.powi(4) + ny.powi(4)) + 12.0 * nx * nx * ny * ny;
    let scale = (nx + ny).powi(4);
    Ok(FourLaws {
        ineq4_lhs,
        ineq4_rhs,
        ineq4_ok: ineq4_lhs <= ineq4_rhs + tol.bound(scale),
        pl4_lhs,
        pl4_rhs,
        pl4_ok: pl4_lhs <= pl4_rhs + tol.bound(scale),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineProjection {
    pub t_star: f64,
    pub dist: f64,
}

/// argmin_t ‖x − t·y‖₄ over real t.
///
/// φ(t)⁴ = Σ(x_i − t·y_i)⁴ is a strictly convex quartic, so its derivative is
/// increasing and the minimizer is found by bisection on the derivative sign
/// in [−B, B], B = 1 + 2‖x‖₄/‖y‖₄. Comparing φ values instead would stall near
/// flat minima at about the fourth root of machine precision.
pub fn project_line_l4(x: &[C64], y: &[C64], tol: &Tolerance) -> Result<LineProjection> {
    if x.len() != y.len() {
        return Err(Error::DimMismatch { expected: x.len(), got: y.len() });
    }
    if x.iter().chain(y).any(|z| z.im != 0.0) {
        return Err(Error::NotReal);
    }
    let xr: Vec<f64> = x.iter().map(|z| z.re).collect();
    let yr: Vec<f64> = y.iter().map(|z| z.re).collect();
    let ny = norm_p(y, 4.0);
    if ny == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let slope = |t: f64| -4.0 * xr.iter().zip(&yr).map(|(a, b)| b * (a - t * b).powi(3)).sum::<f64>();
    let bound = 1.0 + 2.0 * norm_p(x, 4.0) / ny;
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        if hi - lo <= tol.abs_tol.max(f64::EPSILON * bound) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let t_star = 0.5 * (lo + hi);
    let res: Vec<C64> = xr.iter().zip(&yr).map(|(a, b)| C64::new(a - t_star * b, 0.0)).collect();
    Ok(LineProjection { t_star, dist: norm_p(&res, 4.0) })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BanachFormulas {
    /// Σ f_j(τ_j)
    pub dim_sum: C64,
    pub dim_ok: bool,
    pub trace_lhs: Option<C64>,
    /// Σ f_j(Mτ_j)
    pub trace_rhs: Option<C64>,
    pub trace_ok: Option<bool>,
}

pub fn banach_formulas(pf: &PFramePair, mat: Option<&Mat>) -> Result<BanachFormulas> {
    let tol = pf.tol;
    let m = pf.dim();
    if !tol.mat_close(&pf.s_hat(), &Mat::identity(m, pf.field())) {
        return Err(Error::NotParseval);
    }
    let scale = pf.f.norm_fro() * pf.tau.norm_fro();
    let dim_sum = (&pf.f * &pf.tau).trace();
    let dim_ok = (dim_sum - C64::new(m as f64, 0.0)).norm() <= tol.bound(scale.max(m as f64));
    let (mut trace_lhs, mut trace_rhs, mut trace_ok) = (None, None, None);
    if let Some(mt) = mat {
        if mt.shape() != (m, m) {
            return Err(Error::DimMismatch { expected: m, got: mt.rows() });
        }
        let lhs = mt.trace();
        let rhs = (&(&pf.f * mt) * &pf.tau).trace();
        trace_ok = Some((lhs - rhs).norm() <= tol.bound(scale * mt.norm_fro()));
        trace_lhs = Some(lhs);
        trace_rhs = Some(rhs);
    }
    Ok(BanachFormulas { dim_sum, dim_ok, trace_lhs, trace_rhs, trace_ok })
}
