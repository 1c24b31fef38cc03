//! Seeded random inputs for property suites: rationals with varied
//! valuations, diagonal forms and unimodular integer matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Place, Rational};
use crate::forms::QuadraticForm;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64, stream: u64) -> SuiteRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

const SMALL_PRIMES: [i64; 6] = [2, 3, 5, 7, 11, 13];

/// `± prod p_i^{e_i}` times a small cofactor, with exponents in `-3..=3`,
/// so that every small prime shows up with both valuation parities.
pub fn random_rational(rng: &mut SuiteRng) -> Rational {
    let mut num = BigInt::from(rng.random_range(1..=20i64));
    let mut den = BigInt::from(rng.random_range(1..=20i64));
    for &p in &SMALL_PRIMES {
        let e: i32 = rng.random_range(-3..=3);
        let pe = BigInt::from(p).pow(e.unsigned_abs());
        if e > 0 {
            num *= pe;
        } else {
            den *= pe;
        }
    }
    if rng.random_bool(0.5) {
        num = -num;
    }
    Rational::new(num, den)
}

/// A random rational different from 0 and 1.
pub fn random_rational_not_one(rng: &mut SuiteRng) -> Rational {
    loop {
        let x = random_rational(rng);
        if !x.is_one() {
            return x;
        }
    }
}

pub fn random_form(rng: &mut SuiteRng, place: Place, rank: usize) -> QuadraticForm {
    QuadraticForm::new(place, (0..rank).map(|_| random_rational(rng)).collect()).expect("nonzero")
}

/// Product of random elementary matrices, a permutation and sign flips;
/// integer entries and determinant `±1`.
pub fn random_unimodular(rng: &mut SuiteRng, n: usize) -> Vec<Vec<Rational>> {
    let mut g: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    if n > 1 {
        for _ in 0..3 * n {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = BigInt::from(rng.random_range(-3..=3i64));
            for k in 0..n {
                let v = &g[j][k] * &c;
                g[i][k] += v;
            }
        }
    }
    g.shuffle(rng);
    for row in g.iter_mut() {
        if rng.random_bool(0.5) {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    g.into_iter()
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::determinant;
    use num_traits::Signed;

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut r = rng(3, 0);
        for n in 1..6 {
            let g = random_unimodular(&mut r, n);
            assert!(determinant(&g).abs().is_one());
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<Rational> = (0..5).map(|_| random_rational(&mut rng(9, 2))).collect();
        let b: Vec<Rational> = (0..5).map(|_| random_rational(&mut rng(9, 2))).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|x| !x.is_zero()));
    }
}
