use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Scalar field of a matrix. `Real` matrices store exact-zero imaginary parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// The smallest field containing both.
    pub fn join(self, other: Field) -> Field {
        if self == Field::Complex || other == Field::Complex {
            Field::Complex
        } else {
            Field::Real
        }
    }
}

/// Dense row-major complex matrix tagged with its scalar field.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
    field: Field,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                if self.field == Field::Real {
                    write!(f, " {:.6}", z.re)?;
                } else {
                    write!(f, " {:.6}{:+.6}i", z.re, z.im)?;
                }
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl Mat {
    /// Validating constructor: checks length, finiteness and the real-field invariant.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>, field: Field) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch("data length != rows*cols"));
        }
        for z in &data {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite);
            }
            if field == Field::Real && z.im != 0.0 {
                return Err(Error::ImaginaryInReal);
            }
        }
        Ok(Mat { rows, cols, data, field })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Mat> {
        Mat::new(rows, cols, data.iter().map(|&r| C64::new(r, 0.0)).collect(), Field::Real)
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Mat {
        Mat { rows, cols, data: vec![ZERO; rows * cols], field }
    }

    pub fn identity(n: usize, field: Field) -> Mat {
        let mut m = Mat::zeros(n, n, field);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, field: Field, mut f: impl FnMut(usize, usize) -> C64) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        let mut m = Mat { rows, cols, data, field };
        m.enforce_field();
        m
    }

    pub fn diag_real(d: &[f64]) -> Mat {
        let n = d.len();
        Mat::from_fn(n, n, Field::Real, |i, j| if i == j { C64::new(d[i], 0.0) } else { ZERO })
    }

    pub fn diag(d: &[C64], field: Field) -> Mat {
        let n = d.len();
        Mat::from_fn(n, n, field, |i, j| if i == j { d[i] } else { ZERO })
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<C64>], field: Field) -> Result<Mat> {
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::ShapeMismatch("column length"));
        }
        let mut data = Vec::with_capacity(rows * cols.len());
        for i in 0..rows {
            for c in cols {
                data.push(c[i]);
            }
        }
        Mat::new(rows, cols.len(), data, field)
    }

    pub fn column_vector(v: &[C64], field: Field) -> Mat {
        Mat::from_fn(v.len(), 1, field, |i, _| v[i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Drops imaginary parts when tagged real. Used after computations known to be real.
    pub(crate) fn enforce_field(&mut self) {
        if self.field == Field::Real {
            for z in &mut self.data {
                z.im = 0.0;
            }
        }
    }

    /// Retags the matrix. Converting to `Real` discards imaginary parts.
    pub fn with_field(&self, field: Field) -> Mat {
        let mut m = self.clone();
        m.field = field;
        m.enforce_field();
        m
    }

    /// True when every imaginary part is zero.
    pub fn is_real_valued(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> Vec<C64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<C64>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[C64]) {
        for i in 0..self.rows {
            self[(i, j)] = v[i];
        }
    }

    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.field, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.field, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, self.field, |i, j| self[(i, j)].conj())
    }

    pub fn re(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, Field::Real, |i, j| C64::new(self[(i, j)].re, 0.0))
    }

    pub fn im(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, Field::Real, |i, j| C64::new(self[(i, j)].im, 0.0))
    }

    pub fn scale(&self, s: C64) -> Mat {
        let field = if s.im == 0.0 { self.field } else { Field::Complex };
        let mut m = Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect(), field };
        m.enforce_field();
        m
    }

    pub fn scale_real(&self, s: f64) -> Mat {
        self.scale(C64::new(s, 0.0))
    }

    /// Matrix product with a shape check.
    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch("inner dimensions of product"));
        }
        let mut out = Mat::zeros(self.rows, other.cols, self.field.join(other.field));
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "mul_vec shape");
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(C64, C64) -> C64) -> Result<Mat> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch("elementwise operands"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data, field: self.field.join(other.field) })
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum column sum (induced ℓ¹ norm).
    pub fn norm_one(&self) -> f64 {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Maximum row sum (induced ℓ^∞ norm).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows).map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn hermitian_part(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, self.field, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn kron(&self, other: &Mat) -> Mat {
        let (r2, c2) = other.shape();
        Mat::from_fn(self.rows * r2, self.cols * c2, self.field.join(other.field), |i, j| {
            self[(i / r2, j / c2)] * other[(i % r2, j % c2)]
        })
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack row counts"));
        }
        let c = self.cols;
        Ok(Mat::from_fn(self.rows, c + other.cols, self.field.join(other.field), |i, j| {
            if j < c {
                self[(i, j)]
            } else {
                other[(i, j - c)]
            }
        }))
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack column counts"));
        }
        let r = self.rows;
        Ok(Mat::from_fn(r + other.rows, self.cols, self.field.join(other.field), |i, j| {
            if i < r {
                self[(i, j)]
            } else {
                other[(i - r, j)]
            }
        }))
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        let (r, c) = self.shape();
        Mat::from_fn(r + other.rows, c + other.cols, self.field.join(other.field), |i, j| {
            if i < r && j < c {
                self[(i, j)]
            } else if i >= r && j >= c {
                other[(i - r, j - c)]
            } else {
                ZERO
            }
        })
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        Mat::from_fn(r1 - r0, c1 - c0, self.field, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// Operator sugar panics on shape mismatch; fallible call sites use try_* / matmul.
impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale_real(-1.0)
    }
}

/// ⟨a, b⟩ = Σ a_i·conj(b_i), linear in the first slot.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

pub fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ℓᵖ norm for finite p ≥ 1.
pub fn norm_p(v: &[C64], p: f64) -> f64 {
    if p == 2.0 {
        return norm2(v);
    }
    if p == 1.0 {
        return v.iter().map(|z| z.norm()).sum();
    }
    let scale = v.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if scale == 0.0 {
        return 0.0;
    }
    // Scaling avoids overflow in |z|^p for large p.
    scale * v.iter().map(|z| (z.norm() / scale).powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn vsub(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vadd(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vscale(a: &[C64], s: C64) -> Vec<C64> {
    a.iter().map(|x| x * s).collect()
}

pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

pub fn real_vec(v: &[f64]) -> Vec<C64> {
    v.iter().map(|&r| C64::new(r, 0.0)).collect()
}
