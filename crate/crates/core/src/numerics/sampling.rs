use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::mat::{Field, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Standard Gaussian vector; complex entries get independent real and imaginary parts.
pub fn gaussian_vec<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field) -> Vec<C64> {
    (0..n)
        .map(|_| {
            let re = gaussian(rng);
            let im = if field == Field::Complex { gaussian(rng) } else { 0.0 };
            C64::new(re, im)
        })
        .collect()
}
