#![allow(dead_code)]

use grasscluster::exact::{int, RatMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random integer matrix of determinant 1, built from elementary row operations.
pub fn random_sl(a: usize, seed: u64) -> RatMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = RatMatrix::identity(a);
    for _ in 0..3 * a {
        let (r, s) = (rng.gen_range(0..a), rng.gen_range(0..a));
        if r == s {
            continue;
        }
        let t = int(rng.gen_range(-3..=3));
        let mut e = RatMatrix::identity(a);
        e.set(r, s, t);
        g = e.mul(&g).unwrap();
    }
    g
}

/// The exponent e with value ≈ c · 2^{-scale·e}, read off from bit lengths.
pub fn valuation(value: &Rational, scale: u64) -> i64 {
    assert!(value.is_positive(), "valuation of a non-positive value");
    let bits = |x: &BigInt| x.bits() as f64;
    let log2 = bits(value.numer()) - bits(value.denom());
    (-log2 / scale as f64).round() as i64
}

/// 2^{-scale·e} as an exact rational.
pub fn power_of_t(e: i64, scale: u64) -> Rational {
    let two = BigInt::from(2);
    let p = num_traits::pow(two, (scale * e.unsigned_abs()) as usize);
    if e >= 0 {
        Rational::new(BigInt::one(), p)
    } else {
        Rational::from_integer(p)
    }
}
