#![allow(clippy::needless_range_loop)]

use exela::{ElasticityTensor, Rotation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random symmetric Kelvin matrix with entries in ±1.
pub fn random_tensor(rng: &mut ChaCha8Rng) -> ElasticityTensor {
    let mut k = [[0.0; 6]; 6];
    for a in 0..6 {
        for b in a..6 {
            let v = rng.gen_range(-1.0..1.0);
            k[a][b] = v;
            k[b][a] = v;
        }
    }
    ElasticityTensor::from_kelvin(k, 0.0).unwrap()
}

pub fn random_rotation(rng: &mut ChaCha8Rng) -> Rotation {
    loop {
        let q = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n: f64 = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 {
            return Rotation::from_quaternion(q).unwrap();
        }
    }
}

/// Random positive-definite tensor (isotropic offset plus bounded anisotropy).
#[allow(dead_code)]
pub fn random_pd_tensor(rng: &mut ChaCha8Rng) -> ElasticityTensor {
    loop {
        let aniso = random_tensor(rng);
        let c = exela::tensor::isotropic(3.0, 3.0) + aniso * 0.5;
        if c.is_positive_definite(1e-9) {
            return c;
        }
    }
}
