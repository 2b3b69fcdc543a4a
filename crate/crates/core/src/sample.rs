//! Seeded rational sampling.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational `n/d` with `1 <= d <= max_den` and `|n| <= max_num`.
pub fn rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Scalar {
    loop {
        let n = rng.gen_range(-max_num..=max_num);
        if n != 0 {
            let d = rng.gen_range(1..=max_den);
            return Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)));
        }
    }
}

pub fn rationals(rng: &mut ChaCha8Rng, count: usize, max_num: i64, max_den: i64) -> Vec<Scalar> {
    (0..count).map(|_| rational(rng, max_num, max_den)).collect()
}
