//! Pinned random number generation.
//!
//! Reproducibility across runs, platforms, and language ports is part of the
//! contract for every seeded operation in this crate, so the primitives are
//! pinned here rather than left to library defaults:
//!
//! * Generator: ChaCha with 8 rounds (`ChaCha8Rng`), seeded through
//!   `seed_from_u64`. Counter-based, platform-independent output stream.
//! * Uniform doubles: the 53-bit construction `(x >> 11) * 2^-53`.
//! * Uniform integers in `[0, n)`: 64-bit rejection sampling (no modulo
//!   bias), consuming one `u64` per accepted draw.
//! * Normal variates: Box-Muller on two pinned uniforms. The ziggurat
//!   method is deliberately not used; its table layout varies between
//!   implementations and would break cross-implementation test vectors.
//! * Substreams: child seeds derived with SplitMix64, so independent
//!   consumers (sampling, basis fitting, pair selection) never share a
//!   stream position.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const TWO_POW_NEG53: f64 = 1.0 / (1u64 << 53) as f64;

/// Seeded generator used by every randomized operation in the crate.
pub struct Prng {
    inner: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl Prng {
    pub fn seed_from_u64(seed: u64) -> Self {
        Prng {
            inner: ChaCha8Rng::seed_from_u64(seed),
            spare_normal: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform double in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * TWO_POW_NEG53
    }

    /// Uniform double in `(0, 1]`, for logarithms.
    fn uniform_open_zero(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * TWO_POW_NEG53
    }

    /// Uniform integer in `[0, n)` without modulo bias.
    pub fn uniform_usize(&mut self, n: usize) -> usize {
        assert!(n > 0, "uniform_usize requires n > 0");
        let n = n as u64;
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return (x % n) as usize;
            }
        }
    }

    /// Standard normal variate via Box-Muller; generates in pairs and caches
    /// the spare.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform_open_zero();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(radius * theta.sin());
        radius * theta.cos()
    }

    /// First `n` entries of a uniform random permutation of `0..m`
    /// (partial Fisher-Yates).
    pub fn sample_indices(&mut self, m: usize, n: usize) -> Vec<usize> {
        assert!(n <= m);
        let mut idx: Vec<usize> = (0..m).collect();
        for i in 0..n {
            let j = i + self.uniform_usize(m - i);
            idx.swap(i, j);
        }
        idx.truncate(n);
        idx
    }
}

/// Derives an independent child seed (SplitMix64 finalizer over seed and tag).
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
