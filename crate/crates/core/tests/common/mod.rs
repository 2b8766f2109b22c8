#![allow(dead_code)]

use framekit_core::numerics::sampling::{gaussian, gaussian_vec, rng, SeededRng};
use framekit_core::{Field, Mat, C64};
use rand::Rng;

pub fn seeded(seed: u64) -> SeededRng {
    rng(seed)
}

pub fn random_mat(r: &mut SeededRng, rows: usize, cols: usize, field: Field) -> Mat {
    let data = gaussian_vec(r, rows * cols, field);
    Mat::new(rows, cols, data, field).unwrap()
}

pub fn random_field(r: &mut SeededRng) -> Field {
    if r.random::<bool>() {
        Field::Real
    } else {
        Field::Complex
    }
}

/// Hermitian positive definite with eigenvalues bounded below by `floor`.
pub fn random_pd(r: &mut SeededRng, n: usize, field: Field, floor: f64) -> Mat {
    let b = random_mat(r, n, n, field);
    let g = &b * &b.adjoint();
    &g + &Mat::identity(n, field).scale_real(floor)
}

pub fn random_hermitian(r: &mut SeededRng, n: usize, field: Field) -> Mat {
    random_mat(r, n, n, field).hermitian_part()
}

pub fn random_psd(r: &mut SeededRng, n: usize, rank: usize, field: Field) -> Mat {
    let b = random_mat(r, n, rank, field);
    &b * &b.adjoint()
}

pub fn unit(n: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[k] = C64::new(1.0, 0.0);
    v
}

pub fn uniform(r: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * r.random::<f64>()
}

pub fn normal(r: &mut SeededRng) -> f64 {
    gaussian(r)
}

/// Characteristic polynomial coefficients c_0..c_n (c_n = 1) by Faddeev–LeVerrier.
pub fn char_poly(a: &Mat) -> Vec<C64> {
    let n = a.rows();
    let mut c = vec![C64::new(0.0, 0.0); n + 1];
    c[n] = C64::new(1.0, 0.0);
    let id = Mat::identity(n, Field::Complex);
    let mut mk = Mat::zeros(n, n, Field::Complex);
    for k in 1..=n {
        mk = &(a * &mk) + &id.scale(c[n - k + 1]);
        let am = a * &mk;
        c[n - k] = -am.trace() / (k as f64);
    }
    c
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

/// All roots (ascending, with multiplicity) of a real polynomial known to be
/// real-rooted. Roots of the derivative split the line into monotone pieces.
pub fn real_roots(c: &[f64]) -> Vec<f64> {
    let d = c.len() - 1;
    if d == 0 {
        return vec![];
    }
    if d == 1 {
        return vec![-c[0] / c[1]];
    }
    let deriv: Vec<f64> = (1..=d).map(|i| c[i] * i as f64).collect();
    let crit = real_roots(&deriv);
    let bound = 1.0 + c[..d].iter().map(|ci| (ci / c[d]).abs()).fold(0.0, f64::max);
    let mut pts = vec![-bound];
    pts.extend(crit.iter().copied());
    pts.push(bound);
    let mut roots = Vec::with_capacity(d);
    for w in pts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (horner(c, lo), horner(c, hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() {
            roots.push(if flo.abs() < fhi.abs() { lo } else { hi });
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let fm = horner(c, mid);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

/// Eigenvalues of a Hermitian matrix by the characteristic polynomial.
pub fn oracle_hermitian_eigs(a: &Mat) -> Vec<f64> {
    let c: Vec<f64> = char_poly(a).iter().map(|z| z.re).collect();
    real_roots(&c)
}

/// Brute-force frame predicate: S Hermitian and every eigenvalue above abs_tol.
pub fn oracle_is_frame(s: &Mat, abs_tol: f64, rel_tol: f64) -> bool {
    let diff = (s - &s.adjoint()).max_abs();
    if diff > abs_tol + rel_tol * s.max_abs() {
        return false;
    }
    oracle_hermitian_eigs(&s.hermitian_part()).iter().all(|&l| l > abs_tol)
}

pub fn real(rows: usize, data: &[f64]) -> Mat {
    Mat::from_real(rows, data.len() / rows, data).unwrap()
}

/// Columns (1,0), (−1/2, √3/2), (−1/2, −√3/2).
pub fn mercedes_benz() -> Mat {
    let h = 3f64.sqrt() / 2.0;
    real(2, &[1.0, -0.5, -0.5, 0.0, h, -h])
}

/// A frame pair with a prescribed Hermitian pd frame operator and τ not a
/// multiple of x: T = S(XX*)⁻¹X + Z(I − X*(XX*)⁻¹X).
pub fn random_frame(r: &mut SeededRng, m: usize, n: usize, field: Field) -> (Mat, Mat) {
    assert!(n >= m);
    let x = loop {
        let x = random_mat(r, m, n, field);
        let sv = framekit_core::numerics::singular_values(&x);
        if sv[m - 1] > 0.1 * sv[0] {
            break x;
        }
    };
    let s = random_pd(r, m, field, 0.2);
    let g = framekit_core::numerics::inverse(&(&x * &x.adjoint())).unwrap();
    let proj = &(&x.adjoint() * &g) * &x;
    let z = random_mat(r, m, n, field).scale_real(0.3);
    let t = &(&(&s * &g) * &x) + &(&z * &(&Mat::identity(n, field) - &proj));
    (x, t)
}

/// Mixed generator: frames, singular psd (Bessel only), indefinite
/// Hermitian and unstructured pairs.
pub fn random_any_pair(r: &mut SeededRng, m: usize, n: usize, field: Field) -> (Mat, Mat) {
    match r.random_range(0..4) {
        0 if n >= m => random_frame(r, m, n, field),
        1 => {
            // x_j in a proper coordinate subspace: S singular
            let mut x = random_mat(r, m, n, field);
            for j in 0..n {
                x[(m - 1, j)] = C64::new(0.0, 0.0);
            }
            let w: Vec<f64> = (0..n).map(|_| uniform(r, 0.5, 2.0)).collect();
            let t = &x * &Mat::diag_real(&w);
            (x, t)
        }
        2 => {
            let x = random_mat(r, m, n, field);
            let w: Vec<f64> = (0..n).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 }).collect();
            let t = &x * &Mat::diag_real(&w);
            (x, t)
        }
        _ => (random_mat(r, m, n, field), random_mat(r, m, n, field)),
    }
}
