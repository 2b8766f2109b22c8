use super::mat::Mat;
use crate::error::{Error, Result};

/// Mixed absolute/relative comparison policy.
///
/// A quantity counts as zero when it is at most `abs_tol + rel_tol * scale`,
/// where `scale` is the largest magnitude among the operands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_tol: 1e-9, rel_tol: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Tolerance> {
        if !(abs_tol >= 0.0 && abs_tol.is_finite() && rel_tol >= 0.0 && rel_tol.is_finite()) {
            return Err(Error::BadTolerance);
        }
        Ok(Tolerance { abs_tol, rel_tol })
    }

    pub fn bound(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale.abs()
    }

    pub fn is_small(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.bound(scale)
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.bound(a.abs().max(b.abs()))
    }

    /// ‖a − b‖_max within tolerance, scaled by the larger max-entry.
    pub fn mat_close(&self, a: &Mat, b: &Mat) -> bool {
        if a.shape() != b.shape() {
            return false;
        }
        let diff = a.try_sub(b).map(|d| d.max_abs()).unwrap_or(f64::INFINITY);
        diff <= self.bound(a.max_abs().max(b.max_abs()))
    }

    /// ‖m‖_max small relative to an explicit scale.
    pub fn mat_small(&self, m: &Mat, scale: f64) -> bool {
        m.max_abs() <= self.bound(scale)
    }
}
