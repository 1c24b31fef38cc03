//! Exact finite character sums over `Z_p`-grids.
//!
//! Sums are split into fixed-size chunks, evaluated in parallel and reduced
//! in chunk order, so the floating-point result does not depend on the
//! number of worker threads.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{mod_inv, padic_frac, padic_valuation, pow_u64, root_of_unity, Convention, Rational};
use crate::field::AdditiveCharacter;

/// Largest number of terms any single finite sum may have.
pub const TERM_BUDGET: u64 = 100_000_000;

const CHUNK: u64 = 1 << 14;

pub fn check_budget(terms: u128) -> Result<u64> {
    if terms > TERM_BUDGET as u128 {
        Err(Error::Budget {
            terms,
            budget: TERM_BUDGET,
        })
    } else {
        Ok(terms as u64)
    }
}

/// `p^k` as a term count, saturating instead of overflowing.
pub fn power_terms(p: u64, k: u32) -> u128 {
    (p as u128).checked_pow(k).unwrap_or(u128::MAX)
}

/// `sum_{i < n} f(i)` with a deterministic reduction order.
pub fn chunked_sum<F>(n: u64, f: F) -> Complex64
where
    F: Fn(u64) -> Complex64 + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let partial: Vec<Complex64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            let mut acc = Complex64::zero();
            for i in lo..hi {
                acc += f(i);
            }
            acc
        })
        .collect();
    partial.into_iter().fold(Complex64::zero(), |a, b| a + b)
}

/// `x mod m` for a p-adic integer `x` (denominator prime to `p`).
pub(crate) fn int_residue(x: &Rational, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mb = BigInt::from(m);
    let n = x.numer().mod_floor(&mb).to_u64().unwrap();
    let d = x.denom().mod_floor(&mb).to_u64().unwrap();
    (n as u128 * mod_inv(d, m) as u128 % m as u128) as u64
}

/// Denominator exponent `max(0, -v_p(x))`.
fn denominator_exponent(x: &Rational, p: u64) -> u32 {
    if x.is_zero() {
        0
    } else {
        (-padic_valuation(x, p)).max(0) as u32
    }
}

/// One coordinate of a separable quadratic phase `alpha z^2 + beta z`.
#[derive(Clone, Debug)]
pub struct QuadraticPhase {
    pub alpha: Rational,
    pub beta: Rational,
}

/// `∫_{Z_p} psi(alpha z^2 + beta z) dz` as an exact finite sum over
/// `z mod p^e`, where `p^e` clears both denominators.
pub fn quadratic_phase_integral(p: u64, phase: &QuadraticPhase, conv: Convention) -> Result<Complex64> {
    quadratic_phase_integral_grid(p, std::slice::from_ref(phase), conv)
}

/// `∫_{Z_p^n} psi(sum_i alpha_i z_i^2 + beta_i z_i) dz` by brute force over
/// the whole grid `(Z/p^e)^n`.
pub fn quadratic_phase_integral_grid(p: u64, phases: &[QuadraticPhase], conv: Convention) -> Result<Complex64> {
    let e = phases
        .iter()
        .map(|ph| denominator_exponent(&ph.alpha, p).max(denominator_exponent(&ph.beta, p)))
        .max()
        .unwrap_or(0);
    let n = phases.len() as u32;
    let terms = check_budget(power_terms(p, e * n))?;
    let m = pow_u64(p, e).expect("within budget");
    let scale = Rational::from_integer(BigInt::from(m));
    let coeffs: Vec<(u128, u128)> = phases
        .iter()
        .map(|ph| {
            (
                int_residue(&(&ph.alpha * &scale), m) as u128,
                int_residue(&(&ph.beta * &scale), m) as u128,
            )
        })
        .collect();
    let m128 = m as u128;
    let sum = chunked_sum(terms, |mut idx| {
        let mut r = 0u128;
        for &(a, b) in &coeffs {
            let z = (idx % m) as u128;
            idx /= m;
            r = (r + (a * (z * z % m128) + b * z) % m128) % m128;
        }
        root_of_unity(r as i128, m128, conv)
    });
    Ok(sum / terms as f64)
}

/// Product of one-dimensional integrals; equal to the grid sum by Fubini.
pub fn quadratic_phase_integral_product(
    p: u64,
    phases: &[QuadraticPhase],
    conv: Convention,
) -> Result<Complex64> {
    phases
        .iter()
        .try_fold(Complex64::new(1.0, 0.0), |acc, ph| Ok(acc * quadratic_phase_integral(p, ph, conv)?))
}

pub(crate) fn psi(p: u64, x: &Rational, conv: Convention) -> Complex64 {
    let r = padic_frac(x, p);
    AdditiveCharacter::with_convention(crate::field::Place::Padic(p), conv).eval(&r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    #[test]
    fn chunked_sum_is_order_independent() {
        let f = |i: u64| Complex64::new((i as f64).sin(), (i as f64).cos());
        let a = chunked_sum(100_003, f);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| chunked_sum(100_003, f));
        assert_eq!(a, b);
    }

    #[test]
    fn quadratic_gauss_sum_mod_p_squared() {
        // ∫_{Z_5} psi(z^2/25) dz = 5^{-2} * sum_{z mod 25} e(z^2/25) = 1/5
        let ph = QuadraticPhase {
            alpha: rat(1, 25),
            beta: int(0),
        };
        let v = quadratic_phase_integral(5, &ph, Convention::Plus).unwrap();
        assert!((v - Complex64::new(0.2, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn linear_phase_over_full_period_vanishes() {
        let ph = QuadraticPhase {
            alpha: int(0),
            beta: rat(3, 49),
        };
        let v = quadratic_phase_integral(7, &ph, Convention::Plus).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn grid_matches_product() {
        let phases = [
            QuadraticPhase {
                alpha: rat(2, 9),
                beta: rat(1, 3),
            },
            QuadraticPhase {
                alpha: rat(-5, 27),
                beta: int(4),
            },
        ];
        let g = quadratic_phase_integral_grid(3, &phases, Convention::Plus).unwrap();
        let p = quadratic_phase_integral_product(3, &phases, Convention::Plus).unwrap();
        assert!((g - p).norm() < 1e-12);
    }

    #[test]
    fn budget_is_enforced() {
        let ph = QuadraticPhase {
            alpha: Rational::new(1.into(), BigInt::from(13u64).pow(9)),
            beta: int(0),
        };
        assert!(matches!(
            quadratic_phase_integral(13, &ph, Convention::Plus),
            Err(Error::Budget { .. })
        ));
    }
}
