//! Algorithms and certificates on frame pairs: the reconstruction iteration,
//! tight extensions, the span characterization, trace/dimension/variation
//! formulas, weighted Bessel checks, perturbation certificates and the
//! real/complex transfer.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::frame::{self, frame_operator, FramePair};
use crate::numerics::{
    hermitian_eigen, herm_sqrt, inner, inverse, norm2, rank, sampling, sigma_max, spectral, vsub, Field, Mat,
    Tolerance, C64,
};

#[derive(Clone, Debug, PartialEq)]
pub struct IterationTrace {
    pub iterates: Vec<Vec<C64>>,
    pub errors: Vec<f64>,
    pub bound_curve: Vec<f64>,
}

fn frame_inverse(fp: &FramePair) -> Result<(frame::FrameReport, Mat, Mat)> {
    let rep = frame::verify(fp);
    if !rep.is_frame {
        return Err(Error::NotAFrame);
    }
    let s = frame_operator(fp).hermitian_part();
    let sinv = inverse(&s)?.hermitian_part();
    Ok((rep, s, sinv))
}

fn check_dim(v: &[C64], m: usize) -> Result<()> {
    if v.len() != m {
        return Err(Error::DimMismatch { expected: m, got: v.len() });
    }
    Ok(())
}

/// h_0 = 0, h_n = h_{n−1} + 2/(a+b)·S(h − h_{n−1}) with a, b the optimal bounds.
pub fn iterate_reconstruct(fp: &FramePair, h: &[C64], steps: usize) -> Result<IterationTrace> {
    let (rep, s, _) = frame_inverse(fp)?;
    check_dim(h, fp.dim())?;
    let (a, b) = (rep.lower_a, rep.upper_b);
    let lam = C64::new(2.0 / (a + b), 0.0);
    let ratio = (b - a) / (b + a);
    let hn = norm2(h);
    let mut cur = vec![C64::new(0.0, 0.0); h.len()];
    let mut trace = IterationTrace { iterates: Vec::new(), errors: Vec::new(), bound_curve: Vec::new() };
    for n in 0..=steps {
        if n > 0 {
            let step = s.mul_vec(&vsub(h, &cur));
            for (c, d) in cur.iter_mut().zip(step) {
                *c += lam * d;
            }
        }
        trace.errors.push(norm2(&vsub(h, &cur)));
        trace.bound_curve.push(ratio.powi(n as i32) * hn);
        trace.iterates.push(cur.clone());
    }
    Ok(trace)
}

fn append_columns(fp: &FramePair, extra: &Mat) -> Result<FramePair> {
    if extra.cols() == 0 {
        return Ok(fp.clone());
    }
    FramePair::new(fp.x().hstack(extra)?, fp.t().hstack(extra)?, fp.tol())
}

/// Appends the columns of (λI − S)^{1/2} to both families; the result has S' = λI.
pub fn extend_tight_append(fp: &FramePair, lambda: f64) -> Result<FramePair> {
    let tol = fp.tol();
    let rep = frame::verify(fp);
    if !rep.is_bessel {
        return Err(Error::NotBessel);
    }
    let s = frame_operator(fp).hermitian_part();
    let (vals, _) = hermitian_eigen(&s)?;
    let top = vals.last().copied().unwrap_or(0.0);
    if !(lambda > top + tol.bound(top)) {
        return Err(Error::LambdaTooSmall);
    }
    let gap = &Mat::identity(fp.dim(), s.field()).scale_real(lambda) - &s;
    append_columns(fp, &herm_sqrt(&gap, &tol)?)
}

/// Appends √(λ₁ − λ_j)·v_j for every eigenvalue strictly below λ₁.
pub fn extend_tight_minimal(fp: &FramePair) -> Result<FramePair> {
    let tol = fp.tol();
    if !tol.mat_close(fp.x(), fp.t()) {
        return Err(Error::NotSelfPair);
    }
    let (_, s, _) = frame_inverse(fp)?;
    let (vals, v) = hermitian_eigen(&s)?;
    let top = vals[vals.len() - 1];
    let cols: Vec<Vec<C64>> = (0..vals.len())
        .filter(|&j| top - vals[j] > tol.bound(top))
        .map(|j| v.col(j).iter().map(|z| z * (top - vals[j]).sqrt()).collect())
        .collect();
    append_columns(fp, &Mat::from_columns(fp.dim(), &cols, s.field())?)
}

/// u·v* is Hermitian positive semidefinite, i.e. ⟨h,v⟩⟨u,h⟩ ≥ 0 for all h.
fn rank_one_psd(u: &[C64], v: &[C64], tol: &Tolerance) -> bool {
    let scale = norm2(u) * norm2(v);
    for i in 0..u.len() {
        for k in 0..u.len() {
            if (u[i] * v[k].conj() - v[i] * u[k].conj()).norm() > tol.bound(scale) {
                return false;
            }
        }
    }
    // a rank-one Hermitian matrix is psd iff its trace v*u is nonnegative
    inner(u, v).re >= -tol.bound(scale)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pick {
    X,
    Tau,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpanResult {
    pub is_frame: bool,
    /// A selection (one pick per index) that fails to span.
    pub witness: Option<Vec<Pick>>,
}

pub const SPAN_MAX_VECTORS: usize = 20;

/// Frame ⇔ every mixed selection {x_j or τ_j} spans K^m, under the
/// hypothesis that each τ_jx_j* is Hermitian psd.
pub fn span_characterization(fp: &FramePair) -> Result<SpanResult> {
    let n = fp.count();
    if n > SPAN_MAX_VECTORS {
        return Err(Error::TooManyVectors(n));
    }
    let tol = fp.tol();
    let xs = fp.x().columns();
    let ts = fp.t().columns();
    if !(0..n).all(|j| rank_one_psd(&ts[j], &xs[j], &tol)) {
        return Err(Error::HypothesisFails);
    }
    let m = fp.dim();
    // Indices where x_j and τ_j span the same line give identical selections
    // either way, so only the remaining ones are enumerated.
    let free: Vec<usize> = (0..n)
        .filter(|&j| {
            let pair = Mat::from_columns(m, &[xs[j].clone(), ts[j].clone()], fp.field()).expect("shapes agree");
            let one = |v: &[C64]| usize::from(norm2(v) > tol.abs_tol);
            let r = rank(&pair, tol.bound(sigma_max(&pair)));
            !(r == one(&xs[j]) && r == one(&ts[j]))
        })
        .collect();
    for mask in 0u32..(1u32 << free.len()) {
        let mut picks = vec![Pick::X; n];
        for (bit, &j) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                picks[j] = Pick::Tau;
            }
        }
        let cols: Vec<Vec<C64>> =
            (0..n).map(|j| if picks[j] == Pick::X { xs[j].clone() } else { ts[j].clone() }).collect();
        let sel = Mat::from_columns(m, &cols, fp.field())?;
        if rank(&sel, tol.bound(sigma_max(&sel))) < m {
            return Ok(SpanResult { is_frame: false, witness: Some(picks) });
        }
    }
    Ok(SpanResult { is_frame: true, witness: None })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormulasReport {
    pub trace_s: C64,
    /// Σ⟨x_j, τ_j⟩
    pub sum_inner: C64,
    pub trace_s2: C64,
    /// ΣΣ⟨τ_j, x_k⟩⟨τ_k, x_j⟩
    pub double_sum: C64,
    pub trace_ok: bool,
    pub trace_s2_ok: bool,
    /// Tight pairs: double_sum = (Σ⟨x_j,τ_j⟩)²/m.
    pub variation_ok: Option<bool>,
    /// Parseval pairs: Σ⟨x_j,τ_j⟩ = m.
    pub dim_formula_ok: Option<bool>,
    /// Tight pairs with all ⟨x_j,τ_j⟩ equal: b·m/n.
    pub equal_diag_b: Option<f64>,
    pub equal_diag_ok: Option<bool>,
}

pub fn formulas_report(fp: &FramePair) -> FormulasReport {
    let tol = fp.tol();
    let xs = fp.x().columns();
    let ts = fp.t().columns();
    let (m, n) = (fp.dim(), fp.count());
    let s = frame_operator(fp);
    let diag: Vec<C64> = (0..n).map(|j| inner(&xs[j], &ts[j])).collect();
    let sum_inner: C64 = diag.iter().sum();
    let trace_s = s.trace();
    let trace_s2 = (&s * &s).trace();
    let mut double_sum = C64::new(0.0, 0.0);
    for j in 0..n {
        for k in 0..n {
            double_sum += inner(&ts[j], &xs[k]) * inner(&ts[k], &xs[j]);
        }
    }
    let mass: f64 = (0..n).map(|j| norm2(&xs[j]) * norm2(&ts[j])).sum();
    let near = |a: C64, b: C64, scale: f64| (a - b).norm() <= tol.bound(scale);
    // Σ⟨x_j,τ_j⟩ is the conjugate of trace(S) = Σ⟨τ_j,x_j⟩.
    let trace_ok = near(sum_inner, trace_s.conj(), mass);
    let trace_s2_ok = near(double_sum, trace_s2, mass * mass);
    let rep = frame::verify(fp);
    let variation_ok = rep.tight.then(|| near(double_sum, sum_inner * sum_inner / m as f64, mass * mass));
    let dim_formula_ok = rep.parseval.then(|| near(sum_inner, C64::new(m as f64, 0.0), mass.max(m as f64)));
    let equal = diag.iter().all(|d| near(*d, diag[0], mass));
    let equal_diag_b = (rep.tight && equal).then(|| rep.upper_b * m as f64 / n as f64);
    let equal_diag_ok = equal_diag_b.map(|v| near(C64::new(v, 0.0), diag[0], mass));
    FormulasReport {
        trace_s,
        sum_inner,
        trace_s2,
        double_sum,
        trace_ok,
        trace_s2_ok,
        variation_ok,
        dim_formula_ok,
        equal_diag_b,
        equal_diag_ok,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceFormula {
    pub lhs: C64,
    /// Σ τ_j*·M·x_j
    pub rhs: C64,
    /// Σ x_j*·M·τ_j
    pub mirrored: C64,
    pub ok: bool,
}

/// trace(M) = Σ⟨Mx_j, τ_j⟩ for a Parseval pair.
pub fn trace_formula(fp: &FramePair, mat: &Mat) -> Result<TraceFormula> {
    if mat.shape() != (fp.dim(), fp.dim()) {
        return Err(Error::DimMismatch { expected: fp.dim(), got: mat.rows() });
    }
    if !frame::verify(fp).parseval {
        return Err(Error::NotParseval);
    }
    let tol = fp.tol();
    let xs = fp.x().columns();
    let ts = fp.t().columns();
    let mut rhs = C64::new(0.0, 0.0);
    let mut mirrored = C64::new(0.0, 0.0);
    let mut mass = 0.0;
    for (x, t) in xs.iter().zip(&ts) {
        rhs += inner(&mat.mul_vec(x), t);
        mirrored += inner(&mat.mul_vec(t), x);
        mass += norm2(x) * norm2(t);
    }
    let lhs = mat.trace();
    let scale = mat.norm_fro() * mass.max(1.0);
    let ok = (lhs - rhs).norm() <= tol.bound(scale) && (lhs - mirrored).norm() <= tol.bound(scale);
    Ok(TraceFormula { lhs, rhs, mirrored, ok })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedOnb {
    pub holds: bool,
    /// Smallest eigenvalue of I − Σ(2−c_j)c_j·x_jx_j*.
    pub min_eig: f64,
}

/// Σ(2−c_j)⟨h,x_j⟩⟨τ_j,h⟩ ≤ ‖h‖² for an orthonormal {x_j} with τ_j = c_jx_j.
pub fn weighted_onb_check(fp: &FramePair, c: &[f64]) -> Result<WeightedOnb> {
    let tol = fp.tol();
    let n = fp.count();
    if c.len() != n {
        return Err(Error::CountMismatch(c.len(), n));
    }
    if c.iter().any(|&w| w > 2.0 + tol.bound(2.0)) {
        return Err(Error::WeightTooLarge);
    }
    let gram = &fp.x().adjoint() * fp.x();
    if !tol.mat_close(&gram, &Mat::identity(n, gram.field())) {
        return Err(Error::NotWeightedOnb);
    }
    let scaled = fp.x() * &Mat::diag_real(c);
    if !tol.mat_close(&scaled, fp.t()) {
        return Err(Error::NotWeightedOnb);
    }
    let w: Vec<f64> = c.iter().map(|&cj| (2.0 - cj) * cj).collect();
    let sum = &(fp.x() * &Mat::diag_real(&w)) * &fp.x().adjoint();
    let gap = &Mat::identity(fp.dim(), sum.field()) - &sum;
    let (vals, _) = hermitian_eigen(&gap.hermitian_part())?;
    let min_eig = vals[0];
    Ok(WeightedOnb { holds: min_eig >= -tol.bound(1.0), min_eig })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerturbKind {
    Quadratic,
    NormSum,
    SampledLinear,
    SampledBessel,
}

impl PerturbKind {
    pub fn name(&self) -> &'static str {
        match self {
            PerturbKind::Quadratic => "Quadratic",
            PerturbKind::NormSum => "NormSum",
            PerturbKind::SampledLinear => "SampledLinear",
            PerturbKind::SampledBessel => "SampledBessel",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbCertificate {
    pub kind: PerturbKind,
    /// For the sampled kinds this means "not falsified".
    pub hypothesis_ok: bool,
    pub predicted_lower: f64,
    pub predicted_upper: f64,
    /// Optimal bounds of (y, τ); zero when it is not a frame.
    pub actual_lower: f64,
    pub actual_upper: f64,
    pub actual_is_frame: bool,
    /// Actual bounds inside [lower·(1−rel), upper·(1+rel)] up to abs_tol.
    pub window_holds: bool,
}

struct PerturbSetup {
    sinv: Mat,
    a: f64,
    b: f64,
    xs: Vec<Vec<C64>>,
    ys: Vec<Vec<C64>>,
    ts: Vec<Vec<C64>>,
    side_ok: bool,
    norm_x: f64,
    norm_t: f64,
}

fn perturb_setup(fp: &FramePair, y: &Mat) -> Result<PerturbSetup> {
    let (rep, _, sinv) = frame_inverse(fp)?;
    if y.shape() != fp.x().shape() {
        return Err(Error::ShapeMismatch("Y must match the shape of X"));
    }
    let tol = fp.tol();
    let xs = fp.x().columns();
    let ys = y.columns();
    let ts = fp.t().columns();
    // ⟨h,y_j⟩τ_j = ⟨h,τ_j⟩y_j and ⟨h,y_j⟩⟨τ_j,h⟩ ≥ 0
    let side_ok = ts.iter().zip(&ys).all(|(t, yj)| rank_one_psd(t, yj, &tol));
    Ok(PerturbSetup {
        sinv,
        a: rep.lower_a,
        b: rep.upper_b,
        xs,
        ys,
        ts,
        side_ok,
        norm_x: sigma_max(fp.x()),
        norm_t: sigma_max(fp.t()),
    })
}

fn finish(
    fp: &FramePair,
    y: &Mat,
    kind: PerturbKind,
    hypothesis_ok: bool,
    predicted_lower: f64,
    predicted_upper: f64,
) -> Result<PerturbCertificate> {
    let tol = fp.tol();
    let perturbed = FramePair::new(y.clone(), fp.t().clone(), tol)?;
    let rep = frame::verify(&perturbed);
    let window_holds = rep.is_frame
        && rep.lower_a >= predicted_lower * (1.0 - tol.rel_tol) - tol.abs_tol
        && rep.upper_b <= predicted_upper * (1.0 + tol.rel_tol) + tol.abs_tol;
    Ok(PerturbCertificate {
        kind,
        hypothesis_ok,
        predicted_lower,
        predicted_upper,
        actual_lower: rep.lower_a,
        actual_upper: rep.upper_b,
        actual_is_frame: rep.is_frame,
        window_holds,
    })
}

/// Certificate from Σ‖x_j−y_j‖·‖S⁻¹τ_j‖ < 1.
///
/// The upper bound is ‖θ_τ‖(‖θ_x‖ + max(r, √r)) with r = Σ‖x_j−y_j‖².
/// The form ‖θ_τ‖(‖θ_x‖ + r) underestimates when r < 1: for x = τ = 1 and
/// y = 1+ε the true bound is 1+ε while it predicts 1+ε². The argument only
/// gives ‖θ_y‖ ≤ ‖θ_x‖ + √r, and max(r, √r) keeps both regimes sound.
pub fn perturb_quadratic(fp: &FramePair, y: &Mat) -> Result<PerturbCertificate> {
    let st = perturb_setup(fp, y)?;
    let mut sum = 0.0;
    let mut r = 0.0;
    for j in 0..st.xs.len() {
        let d = norm2(&vsub(&st.xs[j], &st.ys[j]));
        sum += d * norm2(&st.sinv.mul_vec(&st.ts[j]));
        r += d * d;
    }
    let hypothesis_ok = st.side_ok && sum < 1.0;
    // ‖S⁻¹‖ = 1/a
    let lower = (1.0 - sum) * st.a;
    let upper = st.norm_t * (st.norm_x + r.max(r.sqrt()));
    finish(fp, y, PerturbKind::Quadratic, hypothesis_ok, lower, upper)
}

/// Certificate from r = Σ‖x_j−y_j‖² < 1/‖θ_τS⁻¹‖².
pub fn perturb_normsum(fp: &FramePair, y: &Mat) -> Result<PerturbCertificate> {
    let st = perturb_setup(fp, y)?;
    let r: f64 = st.xs.iter().zip(&st.ys).map(|(x, yj)| norm2(&vsub(x, yj)).powi(2)).sum();
    let q = sigma_max(&(&st.sinv * fp.t()));
    let hypothesis_ok = st.side_ok && r * q * q < 1.0;
    let lower = (1.0 - r.sqrt() * q) * st.a;
    let upper = st.norm_t * (st.norm_x + r.sqrt());
    finish(fp, y, PerturbKind::NormSum, hypothesis_ok, lower, upper)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampledForm {
    /// ‖Σc_j(x_j−y_j)‖ ≤ α‖Σc_jx_j‖ + γ‖c‖ + β‖Σc_jy_j‖
    Linear,
    /// |Σ⟨h,x_j−y_j⟩⟨τ_j,h⟩|^{1/2} ≤ α(Σ⟨h,x_j⟩⟨τ_j,h⟩)^{1/2} + β(Σ⟨h,y_j⟩⟨τ_j,h⟩)^{1/2} + γ‖h‖
    Quadratic,
}

/// Sampled falsifier for the universally quantified perturbation hypotheses.
///
/// Tries the basis directions and then `samples` seeded Gaussian directions
/// (coefficient vectors with random zeroing for `Linear`, vectors h for
/// `Quadratic`). `hypothesis_ok` only means no violation was found.
#[allow(clippy::too_many_arguments)]
pub fn perturb_sampled(
    fp: &FramePair,
    y: &Mat,
    form: SampledForm,
    alpha: f64,
    beta: f64,
    gamma: f64,
    samples: usize,
    seed: u64,
) -> Result<PerturbCertificate> {
    let st = perturb_setup(fp, y)?;
    if [alpha, beta, gamma].iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::BadParams);
    }
    let tol = fp.tol();
    let mut rng = sampling::rng(seed);
    let field = fp.field();
    match form {
        SampledForm::Linear => {
            let q = sigma_max(&(&st.sinv * fp.t()));
            if (alpha + gamma * q).max(beta) >= 1.0 {
                return Err(Error::BadParams);
            }
            let n = fp.count();
            let diff = fp.x().try_sub(y)?;
            let violated = |c: &[C64]| {
                let lhs = norm2(&diff.mul_vec(c));
                let rhs = alpha * norm2(&fp.x().mul_vec(c)) + gamma * norm2(c) + beta * norm2(&y.mul_vec(c));
                lhs > rhs + tol.bound(rhs)
            };
            let mut falsified = (0..n).any(|j| {
                let mut e = vec![C64::new(0.0, 0.0); n];
                e[j] = C64::new(1.0, 0.0);
                violated(&e)
            });
            for _ in 0..samples {
                if falsified {
                    break;
                }
                let mut c = sampling::gaussian_vec(&mut rng, n, field);
                for cj in c.iter_mut() {
                    if rng.random_bool(0.25) {
                        *cj = C64::new(0.0, 0.0);
                    }
                }
                falsified = violated(&c);
            }
            let lower = (1.0 - (alpha + gamma * q)) * st.a / (1.0 + beta);
            let upper = st.norm_t * ((1.0 + alpha) * st.norm_x + gamma) / (1.0 - beta);
            finish(fp, y, PerturbKind::SampledLinear, st.side_ok && !falsified, lower, upper)
        }
        SampledForm::Quadratic => {
            let (a, b) = (st.a, st.b);
            if (alpha + gamma / a.sqrt()).max(beta) >= 1.0 {
                return Err(Error::BadParams);
            }
            let sx = frame_operator(fp);
            let sy = fp.t() * &y.adjoint();
            let sy_psd = spectral(&sy, &tol).map(|r| r.is_hermitian && r.is_psd).unwrap_or(false);
            let m = fp.dim();
            let dxy = &sx - &sy;
            let quad = |mat: &Mat, h: &[C64]| inner(&mat.mul_vec(h), h);
            let scale = sx.max_abs() + sy.max_abs();
            let violated = |h: &[C64]| {
                // principal modulus of the complex sum; compared squared
                let lhs2 = quad(&dxy, h).norm();
                let rhs = alpha * quad(&sx, h).re.max(0.0).sqrt()
                    + beta * quad(&sy, h).re.max(0.0).sqrt()
                    + gamma * norm2(h);
                lhs2 > rhs * rhs + tol.bound(scale * norm2(h).powi(2))
            };
            let mut falsified = (0..m).any(|i| {
                let mut e = vec![C64::new(0.0, 0.0); m];
                e[i] = C64::new(1.0, 0.0);
                violated(&e)
            });
            for _ in 0..samples {
                if falsified {
                    break;
                }
                falsified = violated(&sampling::gaussian_vec(&mut rng, m, field));
            }
            let lower = a * (1.0 - (alpha + beta + gamma / a.sqrt()) / (1.0 + beta)).powi(2);
            let upper = b * (1.0 + (alpha + beta + gamma / b.sqrt()) / (1.0 - beta)).powi(2);
            finish(fp, y, PerturbKind::SampledBessel, sy_psd && !falsified, lower, upper)
        }
    }
}

/// Retags a real pair as complex; needs Στ_jx_jᵀ symmetric.
pub fn real_to_complex(fp: &FramePair) -> Result<FramePair> {
    if fp.field() != Field::Real {
        return Err(Error::NotReal);
    }
    let s = frame_operator(fp);
    if !fp.tol().mat_close(&s, &s.transpose()) {
        return Err(Error::HypothesisFails);
    }
    FramePair::new(fp.x().with_field(Field::Complex), fp.t().with_field(Field::Complex), fp.tol())
}

/// ({Re x_j} ∪ {Im x_j}, {Re τ_j} ∪ {Im τ_j}); needs
/// ΣIm(τ_j)Re(x_j)ᵀ = ΣRe(τ_j)Im(x_j)ᵀ.
pub fn complex_to_real(fp: &FramePair) -> Result<FramePair> {
    let (x, t) = (fp.x(), fp.t());
    let lhs = &t.im() * &x.re().transpose();
    let rhs = &t.re() * &x.im().transpose();
    if !fp.tol().mat_close(&lhs, &rhs) {
        return Err(Error::HypothesisFails);
    }
    let xr = x.re().hstack(&x.im())?.with_field(Field::Real);
    let tr = t.re().hstack(&t.im())?.with_field(Field::Real);
    FramePair::new(xr, tr, fp.tol())
}
