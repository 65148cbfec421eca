//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hhlab_core::{Mat, PrimeField};

/// A dense `n x n` matrix over GF(p) with entries from a fixed seed.
pub fn random_square(p: u64, n: usize, seed: u64) -> Mat {
    let f = PrimeField::new(p).expect("prime");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..n * n).map(|_| rng.gen_range(0..f.p())).collect();
    Mat::new(f, n, n, data).expect("n*n entries")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        assert_eq!(random_square(101, 8, 3), random_square(101, 8, 3));
        assert_eq!(random_square(101, 8, 3).rows(), 8);
    }
}
