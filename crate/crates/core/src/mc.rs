//! Monte-Carlo probe of the functional equation of `|det|^s` on `Sym_3(Q_p)`
//! with the Hasse-sign weight, on coset indicators kept away from `det = 0`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{int, padic_valuation, pow_p, Convention, Place, Rational};
use crate::forms::SymMatrix;
use crate::json::complex_pair;
use crate::kernel::{check_budget, power_terms, psi};
use crate::symn::form_of;

/// Samples per block; blocks are the unit of parallelism and of resampling.
pub const BLOCK: u64 = 10_000;

/// Bootstrap resamples of the block means.
pub const BOOTSTRAP: usize = 400;

/// Largest tolerated fraction of samples whose determinant is 0 at the
/// truncation level.
pub const SINGULAR_LIMIT: f64 = 1e-3;

/// `1_{A_0 + p^k Sym_3(Z_p)}` with integral `A_0`.
#[derive(Clone, Debug, Serialize)]
pub struct SymCoset {
    pub label: String,
    pub center: [[i64; 3]; 3],
    pub level: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct McConfig {
    pub p: u64,
    pub s: f64,
    pub seed: u64,
    pub samples: u64,
    pub rhs_samples: u64,
    /// Digits kept per sampled entry.
    pub truncation: u32,
    pub convention: Convention,
}

impl McConfig {
    pub fn new(p: u64, s: f64, seed: u64, samples: u64) -> Self {
        McConfig {
            p,
            s,
            seed,
            samples,
            rhs_samples: 20_000,
            truncation: 10,
            convention: Convention::Plus,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct McRow {
    pub label: String,
    #[serde(serialize_with = "complex_pair")]
    pub lhs: Complex64,
    pub lhs_sigma: f64,
    #[serde(serialize_with = "complex_pair")]
    pub rhs: Complex64,
    pub rhs_sigma: f64,
    #[serde(serialize_with = "complex_pair")]
    pub ratio: Complex64,
    pub ratio_sigma: f64,
    pub singular_fraction: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct McReport {
    pub config: McConfig,
    pub rows: Vec<McRow>,
    /// `|r_1 - r_2|` in units of the combined bootstrap sigma.
    pub separation: f64,
    pub agrees: bool,
}

fn det3(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn valuation_i128(mut x: i128, p: u64) -> u32 {
    let p = p as i128;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn random_sym(rng: &mut ChaCha8Rng, m: u64) -> [[i128; 3]; 3] {
    let mut z = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v = rng.random_range(0..m) as i128;
            z[i][j] = v;
            z[j][i] = v;
        }
    }
    z
}

/// Mean and bootstrap sigma of per-block sums.
fn bootstrap(block_sums: &[(Complex64, u64)], seed: u64) -> (Complex64, f64) {
    let total: u64 = block_sums.iter().map(|b| b.1).sum();
    let mean = block_sums.iter().map(|b| b.0).sum::<Complex64>() / total as f64;
    let nb = block_sums.len();
    if nb < 2 {
        return (mean, f64::INFINITY);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut stats = Vec::with_capacity(BOOTSTRAP);
    for _ in 0..BOOTSTRAP {
        let (mut acc, mut n) = (Complex64::zero(), 0u64);
        for _ in 0..nb {
            let b = block_sums[rng.random_range(0..nb)];
            acc += b.0;
            n += b.1;
        }
        stats.push(acc / n as f64);
    }
    let m = stats.iter().sum::<Complex64>() / stats.len() as f64;
    let var = stats.iter().map(|x| (x - m).norm_sqr()).sum::<f64>() / (stats.len() - 1) as f64;
    (mean, var.sqrt())
}

fn block_sums<F>(samples: u64, seed: u64, stream_base: u64, f: F) -> Vec<(Complex64, u64)>
where
    F: Fn(&mut ChaCha8Rng) -> Complex64 + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream_base + b);
            let n = BLOCK.min(samples - b * BLOCK);
            let mut acc = Complex64::zero();
            for _ in 0..n {
                acc += f(&mut rng);
            }
            (acc, n)
        })
        .collect()
}

fn check_coset(phi: &SymCoset, p: u64) -> Result<u32> {
    let a: Vec<Vec<Rational>> = phi
        .center
        .iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect();
    let m = SymMatrix::new(a)?;
    let d = m.det();
    if d.is_zero() || padic_valuation(&d, p) >= phi.level as i64 {
        return Err(Error::Precondition(format!(
            "{}: support meets det = 0 (v(det A0) must be below the level {})",
            phi.label, phi.level
        )));
    }
    Ok(padic_valuation(&d, p) as u32)
}

/// `F(1_{A0 + p^k Sym})(Y) = p^{-6k} psi(tr(A0 Y)) 1_{p^{-k} Sym(Z_p)}(Y)` for
/// odd `p`, where the trace pairing on `Sym_3(Z_p)` is self-dual.
pub fn coset_fourier(phi: &SymCoset, y: &[[Rational; 3]; 3], p: u64, conv: Convention) -> Complex64 {
    let k = phi.level as i64;
    let inside = y
        .iter()
        .flatten()
        .all(|e| e.is_zero() || padic_valuation(e, p) >= -k);
    if !inside {
        return Complex64::zero();
    }
    let vol = pow_p(p, -6 * k).to_f64().unwrap();
    psi(p, &trace_pairing(&phi.center, y), conv) * vol
}

fn trace_pairing(a: &[[i64; 3]; 3], y: &[[Rational; 3]; 3]) -> Rational {
    let mut t = Rational::zero();
    for i in 0..3 {
        for j in 0..3 {
            t += &y[j][i] * int(a[i][j]);
        }
    }
    t
}

/// The same transform as a finite sum over `W mod p^m` in
/// `X = A0 + p^k W`, with `m` large enough for `psi(tr(XY))` to be
/// constant on the cells.
pub fn coset_fourier_direct(phi: &SymCoset, y: &[[Rational; 3]; 3], p: u64, conv: Convention) -> Result<Complex64> {
    let k = phi.level as i64;
    let e = y
        .iter()
        .flatten()
        .filter(|x| !x.is_zero())
        .map(|x| -padic_valuation(x, p))
        .max()
        .unwrap_or(0);
    let m = (e - k).max(0) as u32;
    let terms = check_budget(power_terms(p, 6 * m))?;
    let pm = p.pow(m);
    let pk = pow_p(p, k);
    let idx = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let mut acc = Complex64::zero();
    for t in 0..terms {
        let mut rest = t;
        let mut x: [[Rational; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| int(phi.center[i][j])));
        for &(i, j) in &idx {
            let w = int((rest % pm) as i64) * &pk;
            rest /= pm;
            x[i][j] += &w;
            if i != j {
                x[j][i] += &w;
            }
        }
        let mut tr = Rational::zero();
        for i in 0..3 {
            for j in 0..3 {
                tr += &x[i][j] * &y[j][i];
            }
        }
        acc += psi(p, &tr, conv);
    }
    let vol = pow_p(p, -6 * k).to_f64().unwrap();
    Ok(acc / terms as f64 * vol)
}

/// Two coset indicators at level 1: around `I` and around a hyperbolic
/// plane plus a line, which has the other unit determinant class at odd `p`.
/// On both the twist is constant, so the right-hand pairings are exact and
/// only the left-hand side carries sampling noise.
pub fn default_cosets(_p: u64) -> Vec<SymCoset> {
    vec![
        SymCoset {
            label: "1_{I + p Sym}".into(),
            center: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            level: 1,
        },
        SymCoset {
            label: "1_{H + p Sym}".into(),
            center: [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
            level: 1,
        },
    ]
}

fn lhs_estimate(phi: &SymCoset, cfg: &McConfig, stream_base: u64) -> Result<(Complex64, f64, f64)> {
    let p = cfg.p;
    let k = phi.level;
    let l = cfg.truncation;
    let m = p.pow(l);
    let pk = p.pow(k) as i128;
    let scale = (3.0 * k as f64 * cfg.s * (p as f64).ln()).exp();
    let a = phi.center;
    let singular = std::sync::atomic::AtomicU64::new(0);
    let sums = block_sums(cfg.samples, cfg.seed, stream_base, |rng| {
        let z = random_sym(rng, m);
        let d = det3(&z);
        if d == 0 || valuation_i128(d, p) >= l {
            singular.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            return Complex64::zero();
        }
        let v = valuation_i128(d, p) as f64;
        let mut tr = 0i128;
        for i in 0..3 {
            for j in 0..3 {
                tr += a[i][j] as i128 * z[j][i];
            }
        }
        let r = tr.rem_euclid(pk);
        let phase = crate::field::root_of_unity(r, pk as u128, cfg.convention);
        phase * scale * (-cfg.s * v * (p as f64).ln()).exp()
    });
    let (mean, sigma) = bootstrap(&sums, cfg.seed ^ stream_base);
    let frac = singular.into_inner() as f64 / cfg.samples as f64;
    Ok((mean, sigma, frac))
}

fn rhs_estimate(phi: &SymCoset, cfg: &McConfig, stream_base: u64) -> Result<(Complex64, f64)> {
    let p = cfg.p;
    let place = Place::Padic(p);
    let pk = p.pow(phi.level) as i128;
    let m = p.pow(cfg.truncation);
    let a = phi.center;
    let vol = pow_p(p, -6 * phi.level as i64).to_f64().unwrap();
    let sums = block_sums(cfg.rhs_samples, cfg.seed, stream_base, |rng| {
        let w = random_sym(rng, m);
        let entries: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| Rational::from_integer(BigInt::from(a[i][j] as i128 + pk * w[i][j]))).collect())
            .collect();
        let q = form_of(&SymMatrix::new(entries).expect("symmetric"), place).expect("support avoids det = 0");
        let det = q.det();
        let sign = q.hasse() * place.hilbert(&det, &int(-1)).expect("nonzero");
        let v = padic_valuation(&det, p) as f64;
        // |det|^{-s-2}
        Complex64::new(sign as f64 * ((cfg.s + 2.0) * v * (p as f64).ln()).exp(), 0.0)
    });
    let (mean, sigma) = bootstrap(&sums, cfg.seed ^ stream_base);
    Ok((mean * vol, sigma * vol))
}

/// Ratio of `<|det|^s, F(phi)>` to `<eps(q_A) (det A, -1) |det A|^{-s-2}, phi>`
/// for each coset, with bootstrap error bars.
pub fn padic_sym3_mc_check(cfg: &McConfig, cosets: &[SymCoset]) -> Result<McReport> {
    let p = cfg.p;
    if p == 2 || !crate::field::is_prime(p) {
        return Err(Error::Precondition(format!("p = {p} must be an odd prime")));
    }
    if !(cfg.s > 0.0 && cfg.s < 1.0) {
        return Err(Error::Precondition(format!("s = {} is outside (0, 1)", cfg.s)));
    }
    if cosets.len() < 2 {
        return Err(Error::Precondition("at least 2 test functions are required".into()));
    }
    if cfg.samples < 2 * BLOCK || cfg.rhs_samples < 2 * BLOCK {
        return Err(Error::Precondition(format!("at least {} samples are required", 2 * BLOCK)));
    }
    // determinants of entries below 2^30 stay inside i128
    if p.checked_pow(cfg.truncation).is_none_or(|m| m > 1 << 30) {
        return Err(Error::Precondition(format!("truncation {} is too deep for p = {p}", cfg.truncation)));
    }
    let mut rows = Vec::new();
    for (i, phi) in cosets.iter().enumerate() {
        check_coset(phi, p)?;
        let base = (i as u64 + 1) << 40;
        let (lhs, lhs_sigma, frac) = lhs_estimate(phi, cfg, base)?;
        if frac > SINGULAR_LIMIT {
            return Err(Error::Precondition(format!(
                "{}: {:.2e} of samples are singular at truncation {}; increase it",
                phi.label, frac, cfg.truncation
            )));
        }
        let (rhs, rhs_sigma) = rhs_estimate(phi, cfg, base | (1 << 39))?;
        let ratio = lhs / rhs;
        let rel = ((lhs_sigma / lhs.norm()).powi(2) + (rhs_sigma / rhs.norm()).powi(2)).sqrt();
        rows.push(McRow {
            label: phi.label.clone(),
            lhs,
            lhs_sigma,
            rhs,
            rhs_sigma,
            ratio,
            ratio_sigma: ratio.norm() * rel,
            singular_fraction: frac,
        });
    }
    let (a, b) = (&rows[0], &rows[1]);
    let combined = (a.ratio_sigma.powi(2) + b.ratio_sigma.powi(2)).sqrt();
    let separation = (a.ratio - b.ratio).norm() / combined;
    Ok(McReport {
        config: cfg.clone(),
        rows,
        separation,
        agrees: separation <= 3.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn sym(entries: [[Rational; 3]; 3]) -> [[Rational; 3]; 3] {
        entries
    }

    #[test]
    fn fourier_spot_checks() {
        let p = 3;
        let phi = &default_cosets(p)[0];
        let z = Rational::zero;
        // inside p^{-1} Sym: a single nontrivial phase
        let y = sym([[rat(1, 3), rat(2, 3), z()], [rat(2, 3), z(), int(1)], [z(), int(1), rat(-1, 3)]]);
        let a = coset_fourier(phi, &y, p, Convention::Plus);
        let b = coset_fourier_direct(phi, &y, p, Convention::Plus).unwrap();
        assert!((a - b).norm() < 1e-15);
        assert!(a.norm() > 0.0);
        // outside: the direct sum over W mod 3 cancels
        let y = sym([[rat(1, 9), z(), z()], [z(), z(), z()], [z(), z(), z()]]);
        assert_eq!(coset_fourier(phi, &y, p, Convention::Plus), Complex64::zero());
        assert!(coset_fourier_direct(phi, &y, p, Convention::Plus).unwrap().norm() < 1e-15);
    }

    #[test]
    fn degenerate_support_rejected() {
        let cfg = McConfig::new(3, 0.5, 1, 20_000);
        let bad = SymCoset {
            label: "1_{diag(1,1,9) + 9 Sym}".into(),
            center: [[1, 0, 0], [0, 1, 0], [0, 0, 9]],
            level: 2,
        };
        let cosets = vec![default_cosets(3)[0].clone(), bad];
        assert!(matches!(padic_sym3_mc_check(&cfg, &cosets), Err(Error::Precondition(_))));
    }

    #[test]
    fn reproducible_and_thread_independent() {
        let cfg = McConfig::new(3, 0.5, 42, 30_000);
        let a = padic_sym3_mc_check(&cfg, &default_cosets(3)).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| padic_sym3_mc_check(&cfg, &default_cosets(3)).unwrap());
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn hasse_weight_is_constant_on_unit_coset() {
        let cfg = McConfig::new(3, 0.5, 7, 20_000);
        let (rhs, sigma) = rhs_estimate(&default_cosets(3)[0], &cfg, 0).unwrap();
        assert!(sigma < 1e-15);
        assert!((rhs.re - 3f64.powi(-6)).abs() < 1e-15);
    }
}
