//! Seeded random samples.
//!
//! Coordinates are integers drawn uniformly from `[−10n, 10n]` and divided
//! by 5. Seeds feed a ChaCha8 generator (`rand_chacha::ChaCha8Rng`), so a
//! seed determines the sample on every platform.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::point::Samples;
use crate::scalar::Rational;

/// `m` points of dimension `n` drawn from `rng`.
pub fn random_samples<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Samples<Rational> {
    let bound = 10 * n as i64;
    let rows = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| Rational::new(BigInt::from(rng.random_range(-bound..=bound)), BigInt::from(5)))
                .collect()
        })
        .collect();
    Samples::from_rows(rows).expect("n >= 2 and m >= 1")
}

/// Integer points with coordinates in `[lo, hi]`.
pub fn random_integer_samples<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, lo: i64, hi: i64) -> Samples<Rational> {
    let rows = (0..m)
        .map(|_| (0..n).map(|_| Rational::from_integer(BigInt::from(rng.random_range(lo..=hi)))).collect())
        .collect();
    Samples::from_rows(rows).expect("n >= 2 and m >= 1")
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn same_seed_same_sample() {
        let a = random_samples(&mut seeded_rng(7), 5, 10);
        let b = random_samples(&mut seeded_rng(7), 5, 10);
        assert_eq!(a, b);
        assert_ne!(a, random_samples(&mut seeded_rng(8), 5, 10));
        let five = Rational::from_integer(5.into());
        for p in &a {
            for v in p.coords() {
                // canonical coordinates are differences of two draws
                assert!((v * &five).is_integer());
                assert!(v.abs() <= Rational::from_integer(20.into()));
            }
        }
    }
}
