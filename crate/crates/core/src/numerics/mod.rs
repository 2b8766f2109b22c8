//! Dense spectral primitives: Hermitian detection, eigendecompositions,
//! square roots, principal fractional powers and ℓᵖ operator-norm intervals.

pub mod eigen;
pub mod lu;
pub mod mat;
pub mod sampling;
pub mod tolerance;

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

pub use eigen::{eigen_general, eigenvalues, hermitian_eigen, rank, schur, sigma_max, sigma_min, singular_values};
pub use lu::{inverse, solve};
pub use mat::{inner, kron_vec, norm2, norm_p, real_vec, vadd, vscale, vsub, Field, Mat, C64};
pub use tolerance::Tolerance;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub is_hermitian: bool,
    /// Sorted by real part ascending.
    pub eigenvalues: Vec<C64>,
    pub min_real_eig: f64,
    pub is_psd: bool,
    pub is_pd: bool,
}

/// A certified enclosure `[lower, upper]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn point(x: f64) -> Interval {
        Interval { lower: x, upper: x }
    }

    pub fn contains(&self, x: f64, tol: &Tolerance) -> bool {
        x >= self.lower - tol.bound(self.lower) && x <= self.upper + tol.bound(self.upper)
    }
}

pub fn is_hermitian(m: &Mat, tol: &Tolerance) -> bool {
    m.is_square() && tol.mat_small(&(m - &m.adjoint()), m.max_abs())
}

pub fn spectral(m: &Mat, tol: &Tolerance) -> Result<SpectralReport> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let herm = is_hermitian(m, tol);
    let eigenvalues: Vec<C64> = if herm {
        hermitian_eigen(m)?.0.into_iter().map(|r| C64::new(r, 0.0)).collect()
    } else {
        eigenvalues(m)?
    };
    let min_real_eig = eigenvalues.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    Ok(SpectralReport {
        is_hermitian: herm,
        is_psd: herm && min_real_eig >= -tol.abs_tol,
        is_pd: herm && min_real_eig > tol.abs_tol,
        min_real_eig,
        eigenvalues,
    })
}

/// V·diag(f(λ))·V* for the Hermitian part of `m`.
pub(crate) fn hermitian_function(m: &Mat, f: impl Fn(f64) -> f64) -> Result<Mat> {
    let (vals, v) = hermitian_eigen(m)?;
    let d: Vec<f64> = vals.iter().map(|&l| f(l)).collect();
    let n = m.rows();
    let mut vd = v.clone();
    for j in 0..n {
        for i in 0..n {
            vd[(i, j)] = vd[(i, j)] * d[j];
        }
    }
    let mut out = &vd * &v.adjoint();
    out = out.hermitian_part().with_field(m.field());
    Ok(out)
}

/// Positive square root of a Hermitian psd matrix.
pub fn herm_sqrt(m: &Mat, tol: &Tolerance) -> Result<Mat> {
    let rep = spectral(m, tol)?;
    if !rep.is_psd {
        return Err(Error::NotPsd);
    }
    hermitian_function(m, |l| l.max(0.0).sqrt())
}

/// Principal-branch power M^α for a diagonalizable matrix whose spectrum
/// avoids (−∞, 0].
pub fn principal_power(m: &Mat, alpha: f64, tol: &Tolerance) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    if is_hermitian(m, tol) {
        let (vals, _) = hermitian_eigen(m)?;
        if vals.iter().any(|&l| l <= tol.abs_tol) {
            return Err(Error::SpectrumOnCut);
        }
        return hermitian_function(m, |l| l.powf(alpha));
    }
    let (vals, v) = eigen_general(m)?;
    for l in &vals {
        let dist = if l.re <= 0.0 { l.im.abs() } else { l.norm() };
        if dist <= tol.abs_tol {
            return Err(Error::SpectrumOnCut);
        }
    }
    let sv = singular_values(&v);
    let cond = sv[0] / sv[sv.len() - 1];
    let limit = if tol.abs_tol > 0.0 { 1.0 / tol.abs_tol } else { f64::INFINITY };
    if !(cond.is_finite() && cond <= limit) {
        return Err(Error::NotDiagonalizable(cond));
    }
    let vinv = inverse(&v)?;
    let n = m.rows();
    let mut vd = v.clone();
    for j in 0..n {
        let p = vals[j].powf(alpha);
        for i in 0..n {
            vd[(i, j)] = vd[(i, j)] * p;
        }
    }
    let out = &vd * &vinv;
    // a real matrix with no eigenvalue on the cut has a real principal power
    Ok(out.with_field(m.field()))
}

/// Enclosure of the induced ℓᵖ→ℓᵖ operator norm of `m`.
///
/// The lower end is attained by an explicit vector (basis vectors, ±1 sign
/// patterns for up to 12 columns, random draws, then Boyd/Higham refinement).
/// The upper end is the Riesz–Thorin interpolation ‖M‖₁^{1/p}‖M‖_∞^{1−1/p},
/// replaced by σ_max at p = 2.
pub fn pnorm_estimate(m: &Mat, p: f64, samples: usize, seed: u64) -> Result<Interval> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::BadExponent(p));
    }
    let n = m.cols();
    let upper = if p == 2.0 { sigma_max(m) } else { m.norm_one().powf(1.0 / p) * m.norm_inf().powf(1.0 - 1.0 / p) };
    if n == 0 || m.rows() == 0 {
        return Ok(Interval { lower: 0.0, upper });
    }
    let ratio = |c: &[C64]| {
        let d = norm_p(c, p);
        if d == 0.0 {
            0.0
        } else {
            norm_p(&m.mul_vec(c), p) / d
        }
    };

    let mut best: Vec<(f64, Vec<C64>)> = Vec::new();
    let consider = |c: Vec<C64>, best: &mut Vec<(f64, Vec<C64>)>| {
        let r = ratio(&c);
        best.push((r, c));
        if best.len() > 8 {
            best.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(core::cmp::Ordering::Equal));
            best.truncate(4);
        }
    };
    for j in 0..n {
        let mut e = alloc::vec![C64::new(0.0, 0.0); n];
        e[j] = C64::new(1.0, 0.0);
        consider(e, &mut best);
    }
    if n <= 12 && n > 1 {
        for mask in 0u32..(1u32 << (n - 1)) {
            let c: Vec<C64> = (0..n).map(|j| C64::new(if j > 0 && mask & (1 << (j - 1)) != 0 { -1.0 } else { 1.0 }, 0.0)).collect();
            consider(c, &mut best);
        }
    }
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let c = sampling::gaussian_vec(&mut rng, n, m.field());
        consider(c, &mut best);
    }
    if p == 2.0 {
        let (_, v) = hermitian_eigen(&(&m.adjoint() * m))?;
        consider(v.col(n - 1), &mut best);
    }
    best.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(core::cmp::Ordering::Equal));
    let mut lower = best.first().map(|b| b.0).unwrap_or(0.0);

    if p > 1.0 && p != 2.0 {
        let q = p / (p - 1.0);
        let adj = m.adjoint();
        for (_, start) in best.iter().take(3) {
            let mut c = start.clone();
            let mut prev = ratio(&c);
            for _ in 0..30 {
                let y = m.mul_vec(&c);
                if norm_p(&y, p) == 0.0 {
                    break;
                }
                let z = adj.mul_vec(&dual_vector(&y, p));
                if norm_p(&z, q) == 0.0 {
                    break;
                }
                c = dual_vector(&z, q);
                let r = ratio(&c);
                lower = lower.max(r);
                if r <= prev * (1.0 + 1e-14) {
                    break;
                }
                prev = r;
            }
        }
    }
    // a rounding-level overshoot of the attained ratio widens the enclosure
    Ok(Interval { lower, upper: upper.max(lower) })
}

/// The unit-ℓ^{p'} vector norming `y` in ℓᵖ: sgn(y_i)|y_i|^{p−1}/‖y‖_p^{p−1}.
fn dual_vector(y: &[C64], p: f64) -> Vec<C64> {
    let nrm = norm_p(y, p);
    y.iter()
        .map(|z| {
            let a = z.norm();
            if a == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                (z / a) * (a / nrm).powf(p - 1.0)
            }
        })
        .collect()
}
