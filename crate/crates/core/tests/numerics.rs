mod common;

use common::*;
use framekit_core::numerics::*;
use framekit_core::Error;
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn r(v: &[f64], n: usize) -> Mat {
    Mat::from_real(n, v.len() / n, v).unwrap()
}

#[test]
fn spectral_examples() {
    let s = spectral(&Mat::identity(2, Field::Real), &tol()).unwrap();
    assert!(s.is_hermitian && s.is_pd);
    assert_eq!(s.eigenvalues, vec![C64::new(1.0, 0.0); 2]);

    let nil = r(&[0.0, 1.0, 0.0, 0.0], 2);
    let s = spectral(&nil, &tol()).unwrap();
    assert!(!s.is_hermitian && !s.is_psd);
    assert!(s.eigenvalues.iter().all(|z| z.norm() < 1e-12));

    let s = spectral(&Mat::diag_real(&[2.0, 1.0]), &tol()).unwrap();
    assert!((s.eigenvalues[0].re - 1.0).abs() < 1e-14 && (s.eigenvalues[1].re - 2.0).abs() < 1e-14);
    assert!(s.is_pd);

    assert!(matches!(spectral(&r(&[1.0, 2.0], 1), &tol()), Err(Error::NonSquare { .. })));
}

#[test]
fn herm_sqrt_examples() {
    let out = herm_sqrt(&Mat::diag_real(&[4.0, 9.0]), &tol()).unwrap();
    assert!(tol().mat_close(&out, &Mat::diag_real(&[2.0, 3.0])));
    let id = Mat::identity(3, Field::Real);
    assert!(tol().mat_close(&herm_sqrt(&id, &tol()).unwrap(), &id));
    let m = r(&[2.0, 1.0, 1.0, 2.0], 2);
    let s = herm_sqrt(&m, &tol()).unwrap();
    assert!((&(&s * &s) - &m).max_abs() < 1e-9);
    assert_eq!(herm_sqrt(&Mat::diag_real(&[1.0, -1.0]), &tol()), Err(Error::NotPsd));
}

#[test]
fn herm_sqrt_clips_roundoff_negatives() {
    let m = Mat::diag_real(&[1.0, -1e-12]);
    let s = herm_sqrt(&m, &tol()).unwrap();
    assert_eq!(s[(1, 1)].re, 0.0);
}

#[test]
fn principal_power_examples() {
    let out = principal_power(&Mat::diag_real(&[4.0]), 0.5, &tol()).unwrap();
    assert!((out[(0, 0)].re - 2.0).abs() < 1e-12);
    let out = principal_power(&Mat::diag_real(&[1.0, 16.0]), 0.25, &tol()).unwrap();
    assert!(tol().mat_close(&out, &Mat::diag_real(&[1.0, 2.0])));
    assert_eq!(principal_power(&Mat::diag_real(&[-1.0, 1.0]), 0.5, &tol()), Err(Error::SpectrumOnCut));
}

#[test]
fn principal_power_non_normal_and_rotation() {
    // upper triangular, distinct positive eigenvalues
    let m = r(&[1.0, 3.0, 0.0, 4.0], 2);
    let h = principal_power(&m, 0.5, &tol()).unwrap();
    assert!((&(&h * &h) - &m).max_abs() < 1e-10);
    assert_eq!(h.field(), Field::Real);
    // rotation by 90 degrees scaled: eigenvalues ±2i, off the cut
    let rot = r(&[0.0, -2.0, 2.0, 0.0], 2);
    let h = principal_power(&rot, 0.5, &tol()).unwrap();
    assert!((&(&h * &h) - &rot).max_abs() < 1e-10);
    // Jordan block is rejected
    let jordan = r(&[1.0, 1.0, 0.0, 1.0], 2);
    assert!(matches!(principal_power(&jordan, 0.5, &tol()), Err(Error::NotDiagonalizable(_))));
}

#[test]
fn principal_power_matches_sqrt_chain() {
    let mut g = seeded(7);
    for _ in 0..50 {
        let f = random_field(&mut g);
        let m = random_pd(&mut g, 4, f, 0.5);
        let q = principal_power(&m, 0.25, &tol()).unwrap();
        let s2 = herm_sqrt(&herm_sqrt(&m, &tol()).unwrap(), &tol()).unwrap();
        assert!((&q - &s2).max_abs() < 1e-9 * m.max_abs().max(1.0));
    }
}

#[test]
fn principal_power_roots_reproduce() {
    let mut g = seeded(11);
    for i in 0..100 {
        let f = random_field(&mut g);
        let n = 1 + i % 5;
        // non-Hermitian but similar to a pd matrix
        let d = random_pd(&mut g, n, f, 0.3);
        let p = random_mat(&mut g, n, n, f);
        let p = &p + &Mat::identity(n, f).scale_real(3.0);
        let m = &(&p * &d) * &inverse(&p).unwrap();
        let k = 2 + i % 3;
        let root = principal_power(&m, 1.0 / k as f64, &tol()).unwrap();
        let mut acc = root.clone();
        for _ in 1..k {
            acc = &acc * &root;
        }
        assert!((&acc - &m).max_abs() <= 1e-7 * m.max_abs().max(1.0), "case {i}");
        let comm = &(&root * &m) - &(&m * &root);
        assert!(comm.max_abs() <= 1e-7 * m.max_abs().max(1.0) * root.max_abs().max(1.0));
    }
}

#[test]
fn herm_sqrt_random_psd() {
    let mut g = seeded(3);
    for i in 0..200 {
        let n = 1 + i % 8;
        let f = random_field(&mut g);
        let rank = 1 + (i / 8) % n;
        let m = random_psd(&mut g, n, rank, f);
        let s = herm_sqrt(&m, &tol()).unwrap();
        let err = (&(&s * &s) - &m).max_abs();
        assert!(err <= 10.0 * 1e-9 * m.max_abs().max(1.0), "err {err}");
        assert!(spectral(&s, &tol()).unwrap().is_psd);
    }
}

#[test]
fn hermitian_eigen_against_char_poly() {
    let mut g = seeded(5);
    for i in 0..200 {
        let n = 1 + i % 4;
        let f = random_field(&mut g);
        let m = random_hermitian(&mut g, n, f);
        let (vals, v) = hermitian_eigen(&m).unwrap();
        let oracle = oracle_hermitian_eigs(&m);
        for (a, b) in vals.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
        let recon = &(&v * &Mat::diag_real(&vals)) * &v.adjoint();
        assert!((&recon - &m).max_abs() < 1e-12 * m.max_abs().max(1.0) * 100.0);
    }
}

#[test]
fn schur_eigenvalues_of_companion() {
    // roots 1, 2, 3, 4
    let m = r(&[10.0, -35.0, 50.0, -24.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0], 4);
    let vals = eigenvalues(&m).unwrap();
    for (k, z) in vals.iter().enumerate() {
        assert!((z.re - (k + 1) as f64).abs() < 1e-9 && z.im.abs() < 1e-9);
    }
    let (vals, v) = eigen_general(&m).unwrap();
    for k in 0..4 {
        let col = v.col(k);
        let mv = m.mul_vec(&col);
        let res: f64 = mv.iter().zip(&col).map(|(a, b)| (a - vals[k] * b).norm()).fold(0.0, f64::max);
        assert!(res < 1e-9);
    }
}

#[test]
fn schur_random_complex() {
    let mut g = seeded(21);
    for i in 0..100 {
        let n = 1 + i % 7;
        let m = random_mat(&mut g, n, n, Field::Complex);
        let (t, q) = schur(&m).unwrap();
        let recon = &(&q * &t) * &q.adjoint();
        assert!((&recon - &m).max_abs() < 1e-11 * m.max_abs().max(1.0));
        let qq = &q.adjoint() * &q;
        assert!((&qq - &Mat::identity(n, Field::Complex)).max_abs() < 1e-12);
    }
}

#[test]
fn singular_values_and_rank() {
    let m = r(&[3.0, 0.0, 0.0, 0.0, 4.0, 0.0], 2);
    let sv = singular_values(&m);
    assert!((sv[0] - 4.0).abs() < 1e-14 && (sv[1] - 3.0).abs() < 1e-14);
    let low = r(&[1.0, 2.0, 2.0, 4.0], 2);
    assert_eq!(rank(&low, 1e-9), 1);
}

#[test]
fn inverse_and_solve() {
    let mut g = seeded(9);
    for n in 1..7 {
        let m = random_mat(&mut g, n, n, Field::Complex);
        let inv = inverse(&m).unwrap();
        assert!((&(&m * &inv) - &Mat::identity(n, Field::Complex)).max_abs() < 1e-9);
        let b = random_mat(&mut g, n, 2, Field::Complex);
        let x = solve(&m, &b).unwrap();
        assert!((&(&m * &x) - &b).max_abs() < 1e-9);
    }
    assert_eq!(inverse(&Mat::zeros(2, 2, Field::Real)), Err(Error::Singular));
}

#[test]
fn pnorm_examples() {
    for p in [1.0, 1.5, 2.0, 3.0, 7.0] {
        let e = pnorm_estimate(&Mat::identity(2, Field::Real), p, 10, 0).unwrap();
        assert!((e.lower - 1.0).abs() < 1e-12 && (e.upper - 1.0).abs() < 1e-12);
    }
    let d = Mat::diag_real(&[1.0, 3.0]);
    let e = pnorm_estimate(&d, 2.0, 10, 0).unwrap();
    assert!((e.lower - 3.0).abs() < 1e-12 && (e.upper - 3.0).abs() < 1e-12);
    let e = pnorm_estimate(&d, 4.0, 10, 0).unwrap();
    assert!(e.lower >= 3.0 - 1e-12 && (e.upper - 3.0).abs() < 1e-12);
    assert_eq!(pnorm_estimate(&d, 0.5, 10, 0), Err(Error::BadExponent(0.5)));
}

#[test]
fn pnorm_p2_is_tight() {
    let mut g = seeded(13);
    for i in 0..100 {
        let f = random_field(&mut g);
        let m = random_mat(&mut g, 1 + i % 6, 1 + (i / 6) % 6, f);
        let e = pnorm_estimate(&m, 2.0, 8, i as u64).unwrap();
        assert!((e.upper - e.lower).abs() <= 1e-9 * e.upper.max(1.0), "{e:?}");
    }
}

#[test]
fn pnorm_p1_exact_by_basis() {
    let mut g = seeded(17);
    for _ in 0..20 {
        let m = random_mat(&mut g, 4, 5, Field::Real);
        let e = pnorm_estimate(&m, 1.0, 4, 0).unwrap();
        assert!((e.upper - e.lower).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pnorm_lower_below_upper(seed in 0u64..10_000, p in 1.0f64..8.0, rows in 1usize..6, cols in 1usize..6) {
        let mut g = seeded(seed);
        let f = random_field(&mut g);
        let m = random_mat(&mut g, rows, cols, f);
        let e = pnorm_estimate(&m, p, 16, seed).unwrap();
        prop_assert!(e.lower <= e.upper + 1e-9 * e.upper.max(1.0));
    }

    #[test]
    fn principal_power_commutes(seed in 0u64..10_000, alpha in -1.5f64..1.5) {
        let mut g = seeded(seed);
        let m = random_pd(&mut g, 3, framekit_core::Field::Complex, 0.2);
        let pw = principal_power(&m, alpha, &Tolerance::default()).unwrap();
        let c = &(&pw * &m) - &(&m * &pw);
        prop_assert!(c.max_abs() <= 1e-8 * m.max_abs() * pw.max_abs().max(1.0));
    }
}
