//! Seed derivation and named substreams.
//!
//! Every random quantity is drawn from a ChaCha8 stream keyed by a 64-bit
//! seed and selected by a stream id, so that regressor innovations, errors
//! and replications never share draws no matter how work is scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream roles within one seeded generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    /// Innovations `ξ` of the regressor process.
    Regressors = 0,
    /// Standardized errors `η`.
    Errors = 1,
    /// Innovations of the autoregressive recursion.
    Autoregression = 2,
    /// Brownian increments of the discretized diffusion.
    Diffusion = 3,
    /// Free-form auxiliary draws (tests, toy generators).
    Auxiliary = 4,
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes an ordered list of words into one seed.
pub fn derive_seed(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0x6A09_E667_F3BC_C908, |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// The generator for `role` under `seed`.
pub fn stream(seed: u64, role: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(role as u64);
    rng
}
