#![allow(clippy::needless_range_loop)]

//! Shared helpers for the benchmark targets.

use exela::tensor::ElasticityTensor;

/// Deterministic pseudo-random symmetric Kelvin matrix.
pub fn pseudo_random_tensor(seed: u64) -> ElasticityTensor {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let mut k = [[0.0; 6]; 6];
    for a in 0..6 {
        for b in a..6 {
            let v = next();
            k[a][b] = v;
            k[b][a] = v;
        }
    }
    ElasticityTensor::from_kelvin(k, 0.0).unwrap()
}
