use alloc::vec::Vec;

use super::mat::{Mat, C64, ZERO};
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, stored compactly.
struct Lu {
    lu: Mat,
    perm: Vec<usize>,
}

fn factor(m: &Mat) -> Result<Lu> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (piv, best) = (k..n).map(|i| (i, lu[(i, k)].norm())).fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == 0.0 {
            return Err(Error::Singular);
        }
        if piv != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = tmp;
            }
            perm.swap(k, piv);
        }
        let d = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / d;
            lu[(i, k)] = f;
            if f == ZERO {
                continue;
            }
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
        }
    }
    Ok(Lu { lu, perm })
}

impl Lu {
    fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.perm.len();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                let xj = x[j];
                x[i] -= u * xj;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

/// Inverse via partial-pivot LU. Fails only on an exactly zero pivot; callers
/// gate invertibility with a tolerance beforehand.
pub fn inverse(m: &Mat) -> Result<Mat> {
    let f = factor(m)?;
    let n = m.rows();
    let mut out = Mat::zeros(n, n, m.field());
    let mut e = alloc::vec![ZERO; n];
    for j in 0..n {
        e.iter_mut().for_each(|z| *z = ZERO);
        e[j] = C64::new(1.0, 0.0);
        out.set_col(j, &f.solve_vec(&e));
    }
    out.enforce_field();
    if !out.is_finite() {
        return Err(Error::Singular);
    }
    Ok(out)
}

/// Solves M X = B.
pub fn solve(m: &Mat, b: &Mat) -> Result<Mat> {
    if b.rows() != m.rows() {
        return Err(Error::ShapeMismatch("solve right-hand side"));
    }
    let f = factor(m)?;
    let mut out = Mat::zeros(m.cols(), b.cols(), m.field().join(b.field()));
    for j in 0..b.cols() {
        out.set_col(j, &f.solve_vec(&b.col(j)));
    }
    out.enforce_field();
    if !out.is_finite() {
        return Err(Error::Singular);
    }
    Ok(out)
}
