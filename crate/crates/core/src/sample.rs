//! Seeded random inputs shared by tests, the acceptance suite and the CLI.

use crate::{VerblunskySequence, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic generator used everywhere a random sequence is needed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the closed disk of radius `r`.
pub fn disk_point<R: Rng>(rng: &mut R, r: f64) -> C64 {
    let rad = r * rng.random::<f64>().sqrt();
    let th = std::f64::consts::TAU * rng.random::<f64>();
    C64::from_polar(rad, th)
}

/// Sequence of length `n` with entries uniform in the disk of radius `max_abs`.
pub fn sequence<R: Rng>(rng: &mut R, n: usize, max_abs: f64) -> VerblunskySequence {
    let v: Vec<C64> = (0..n).map(|_| disk_point(rng, max_abs)).collect();
    VerblunskySequence::explicit(&v).expect("radius below one")
}

/// Sequence with random length in `1..=max_len`.
pub fn sequence_up_to<R: Rng>(rng: &mut R, max_len: usize, max_abs: f64) -> VerblunskySequence {
    let n = rng.random_range(1..=max_len);
    sequence(rng, n, max_abs)
}

/// Random complex vector with entries in the unit square scaled by `scale`.
pub fn complex_vec<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Vec<C64> {
    (0..n)
        .map(|_| {
            C64::new(
                scale * (2.0 * rng.random::<f64>() - 1.0),
                scale * (2.0 * rng.random::<f64>() - 1.0),
            )
        })
        .collect()
}
