//! Dense eigen and singular value kernels.
//!
//! Hermitian problems use cyclic complex Jacobi rotations, singular values use
//! one-sided (Hestenes) Jacobi, and general matrices go through a Householder
//! Hessenberg reduction followed by single-shift complex QR.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::mat::{Field, Mat, C64, ONE, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const EPS: f64 = f64::EPSILON;

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of the
/// Hermitian part of `m`.
pub fn hermitian_eigen(m: &Mat) -> Result<(Vec<f64>, Mat)> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = Mat::identity(n, m.field());
    let scale = a.norm_fro();
    if scale == 0.0 || n == 1 {
        let vals = (0..n).map(|i| a[(i, i)].re).collect();
        return Ok((vals, v));
    }

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= EPS * scale * 0.01 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let ph_c = phase.conj();
                // A <- A J on columns p, q
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c - aiq * ph_c * s;
                    a[(i, q)] = aip * s + aiq * ph_c * c;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * ph_c * s;
                    v[(i, q)] = vip * s + viq * ph_c * c;
                }
                // A <- J* A on rows p, q
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * c - aqj * phase * s;
                    a[(q, j)] = apj * s + aqj * phase * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
    }
    if !converged {
        return Err(Error::EigenFailure);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap_or(core::cmp::Ordering::Equal));
    let vals = order.iter().map(|&i| a[(i, i)].re).collect();
    let vecs = Mat::from_fn(n, n, m.field(), |i, j| v[(i, order[j])]);
    Ok((vals, vecs))
}

/// Singular values in descending order.
pub fn singular_values(m: &Mat) -> Vec<f64> {
    let work = if m.rows() >= m.cols() { m.clone() } else { m.adjoint() };
    let (r, c) = work.shape();
    if c == 0 {
        return Vec::new();
    }
    // column-major copy for cache-friendly column sweeps
    let mut cols: Vec<Vec<C64>> = (0..c).map(|j| work.col(j)).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..c {
            for q in p + 1..c {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if alpha == 0.0 || beta == 0.0 || g <= EPS * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let ph_c = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..r {
                    let ap = cols[p][i];
                    let aq = cols[q][i] * ph_c;
                    cols[p][i] = ap * cs - aq * sn;
                    cols[q][i] = ap * sn + aq * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    sv
}

/// Largest singular value (operator 2-norm).
pub fn sigma_max(m: &Mat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Smallest singular value among min(rows, cols).
pub fn sigma_min(m: &Mat) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Numerical rank: singular values above `threshold`.
pub fn rank(m: &Mat, threshold: f64) -> usize {
    singular_values(m).iter().filter(|&&s| s > threshold).count()
}

fn givens(a: C64, b: C64) -> (f64, C64) {
    if b == ZERO {
        return (1.0, ZERO);
    }
    if a == ZERO {
        return (0.0, b.conj() / b.norm());
    }
    let an = a.norm();
    let r = an.hypot(b.norm());
    (an / r, (a / an) * b.conj() / r)
}

/// Complex Schur form: returns (T, Q) with M = Q T Q*, T upper triangular.
pub fn schur(m: &Mat) -> Result<(Mat, Mat)> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut h = m.with_field(Field::Complex);
    let mut q = Mat::identity(n, Field::Complex);
    if n <= 1 {
        return Ok((h, q));
    }

    // Householder reduction to upper Hessenberg form.
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let alpha = if x0.norm() == 0.0 { C64::new(-norm, 0.0) } else { -(x0 / x0.norm()) * norm };
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vn2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vn2 == 0.0 {
            continue;
        }
        let f = 2.0 / vn2;
        for j in 0..n {
            let s: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)]).sum();
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= vi * s * f;
            }
        }
        for i in 0..n {
            let s: C64 = v.iter().enumerate().map(|(j, vj)| h[(i, k + 1 + j)] * vj).sum();
            for (j, vj) in v.iter().enumerate() {
                h[(i, k + 1 + j)] -= s * vj.conj() * f;
            }
            let s: C64 = v.iter().enumerate().map(|(j, vj)| q[(i, k + 1 + j)] * vj).sum();
            for (j, vj) in v.iter().enumerate() {
                q[(i, k + 1 + j)] -= s * vj.conj() * f;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }

    let hnorm = h.norm_fro().max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if h[(l, l - 1)].norm() <= EPS * s {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > 300 || total > 100 * n {
            return Err(Error::EigenFailure);
        }
        let mu = if iter % 10 == 0 {
            // exceptional shift to break cycles
            h[(hi, hi)] + C64::new(1.5 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            let (a, b, c, d) = (h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let m1 = (a + d) * 0.5 + disc;
            let m2 = (a + d) * 0.5 - disc;
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };
        for k in l..=hi {
            h[(k, k)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = a * c + s * b;
                h[(k + 1, j)] = -s.conj() * a + b * c;
            }
            h[(k + 1, k)] = ZERO;
            rots.push((c, s));
        }
        for (idx, k) in (l..hi).enumerate() {
            let (c, s) = rots[idx];
            for i in 0..=k + 1 {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * c + b * s.conj();
                h[(i, k + 1)] = -a * s + b * c;
            }
            for i in 0..n {
                let a = q[(i, k)];
                let b = q[(i, k + 1)];
                q[(i, k)] = a * c + b * s.conj();
                q[(i, k + 1)] = -a * s + b * c;
            }
        }
        for k in l..=hi {
            h[(k, k)] += mu;
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok((h, q))
}

/// Eigenvalues of a general square matrix, sorted by real part then imaginary part.
pub fn eigenvalues(m: &Mat) -> Result<Vec<C64>> {
    let (t, _) = schur(m)?;
    let mut vals: Vec<C64> = (0..t.rows()).map(|i| t[(i, i)]).collect();
    sort_complex(&mut vals);
    Ok(vals)
}

pub(crate) fn sort_complex(vals: &mut [C64]) {
    vals.sort_by(|a, b| {
        a.re.partial_cmp(&b.re).unwrap_or(core::cmp::Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(core::cmp::Ordering::Equal))
    });
}

/// Eigenvalues and unit eigenvectors (columns) of a general square matrix,
/// from back substitution on the Schur factor.
pub fn eigen_general(m: &Mat) -> Result<(Vec<C64>, Mat)> {
    let (t, q) = schur(m)?;
    let n = t.rows();
    let tiny = (EPS * t.norm_fro()).max(f64::MIN_POSITIVE);
    let mut y = Mat::zeros(n, n, Field::Complex);
    for k in 0..n {
        let lam = t[(k, k)];
        let mut col = vec![ZERO; n];
        col[k] = ONE;
        for i in (0..k).rev() {
            let s: C64 = (i + 1..=k).map(|j| t[(i, j)] * col[j]).sum();
            let mut d = t[(i, i)] - lam;
            if d.norm() < tiny {
                d = C64::new(tiny, 0.0);
            }
            col[i] = -s / d;
        }
        y.set_col(k, &col);
    }
    let mut v = &q * &y;
    for k in 0..n {
        let c = v.col(k);
        let nrm = super::mat::norm2(&c);
        if nrm > 0.0 {
            let scaled: Vec<C64> = c.iter().map(|z| z / nrm).collect();
            v.set_col(k, &scaled);
        }
    }
    let vals = (0..n).map(|i| t[(i, i)]).collect();
    Ok((vals, v))
}
