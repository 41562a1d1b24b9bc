//! Counter-based random streams.
//!
//! A value is a pure function of `(seed, domain, stream, draw index)`, so
//! results do not depend on how work is scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::operators::BlochVector;

/// Stream domain for optimizer start points.
pub const DOMAIN_OPTIMIZER: u64 = 0x6f70_7469_6d69_7a65;
/// Stream domain for derivation-chain audit samples.
pub const DOMAIN_AUDIT: u64 = 0x6175_6469_7463_6861;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterStream {
    key: [u8; 32],
}

impl CounterStream {
    pub fn new(seed: u64, domain: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&domain.to_le_bytes());
        Self { key }
    }

    /// Generator positioned at the start of `stream`.
    pub fn stream(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(stream);
        rng
    }

    /// Generator positioned at 64-bit draw `draw` of `stream`.
    pub fn at(&self, stream: u64, draw: u64) -> ChaCha8Rng {
        let mut rng = self.stream(stream);
        rng.set_word_pos(u128::from(draw) * 2);
        rng
    }

    /// Uniform `[0, 1)` value at `(stream, draw)`.
    pub fn uniform(&self, stream: u64, draw: u64) -> f64 {
        self.at(stream, draw).random::<f64>()
    }
}

/// Uniform direction on the unit sphere (two draws).
pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    let z: f64 = 2.0 * rng.random::<f64>() - 1.0;
    let phi: f64 = std::f64::consts::TAU * rng.random::<f64>();
    let r = (1.0 - z * z).max(0.0).sqrt();
    let (s, c) = phi.sin_cos();
    BlochVector::unnormalized(r * c, r * s, z)
}
