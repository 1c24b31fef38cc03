//! The matrix `v_ij(s)` relating orbital zeta integrals of `f` and of its
//! Fourier transform over `Sym_n(R)`, by direct summation over sign tuples,
//! and the product formulas for its column sums.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::{complex_matrix, complex_pair, complex_vec};

/// Largest `n` accepted by the direct summation (`2^n` tuples).
pub const MAX_N: usize = 20;

/// Ratio tolerance used by the sign-vector check.
pub const SIGN_TOL: f64 = 1e-10;

/// Column sums with modulus below this are treated as zeros of the products.
pub const ZERO_TOL: f64 = 1e-8;

const CHUNK: u64 = 1 << 12;

/// The three generic parameters used by the suites, away from every zero.
pub const GENERIC_S: [f64; 3] = [0.3, 1.7, -0.4];

#[derive(Clone, Debug, Serialize)]
pub struct GammaMatrix {
    pub n: usize,
    #[serde(serialize_with = "complex_pair")]
    pub s: Complex64,
    /// `entries[i][j] = v_ij(s)`.
    #[serde(serialize_with = "complex_matrix")]
    pub entries: Vec<Vec<Complex64>>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        Err(Error::Precondition(format!("n must be in 1..={MAX_N}, got {n}")))
    } else {
        Ok(())
    }
}

/// `i^k`.
fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `(v_0j, ..., v_nj)`: one pass over all `2^n` sign tuples, bucketed by the
/// number of plus signs.
///
/// The exponent is `(pi i / 2) (N + s M)` with integers
/// `N = sum_{k<=j} k e_k - sum_{k>j} (k-j) e_k` and
/// `M = sum_{k<=j} e_k - sum_{k>j} e_k`; `i^N` is exact.
fn column(n: usize, j: usize, s: Complex64) -> Vec<Complex64> {
    let half_pi_i = Complex64::new(0.0, std::f64::consts::FRAC_PI_2);
    // s-dependent factor indexed by M + n
    let s_factor: Vec<Complex64> = (-(n as i64)..=n as i64)
        .map(|m| (half_pi_i * s * m as f64).exp())
        .collect();
    let weights: Vec<(i64, i64)> = (1..=n)
        .map(|k| if k <= j { (k as i64, 1) } else { (-((k - j) as i64), -1) })
        .collect();
    let total = 1u64 << n;
    let chunks = total.div_ceil(CHUNK);
    let partial: Vec<Vec<Complex64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![Complex64::new(0.0, 0.0); n + 1];
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let (mut big_n, mut big_m) = (0i64, 0i64);
                for (k, &(w, sgn)) in weights.iter().enumerate() {
                    let e = if mask >> k & 1 == 1 { 1 } else { -1 };
                    big_n += w * e;
                    big_m += sgn * e;
                }
                let plus = mask.count_ones() as usize;
                acc[plus] += i_pow(big_n) * s_factor[(big_m + n as i64) as usize];
            }
            acc
        })
        .collect();
    partial.into_iter().fold(vec![Complex64::new(0.0, 0.0); n + 1], |mut a, b| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    })
}

/// `v_ij(s)` by direct summation over tuples with exactly `i` plus signs.
pub fn v_entry(n: usize, i: usize, j: usize, s: Complex64) -> Result<Complex64> {
    check_n(n)?;
    if i > n || j > n {
        return Err(Error::Precondition(format!("indices ({i}, {j}) out of range for n = {n}")));
    }
    Ok(column(n, j, s)[i])
}

pub fn gamma_matrix(n: usize, s: Complex64) -> Result<GammaMatrix> {
    check_n(n)?;
    let cols: Vec<Vec<Complex64>> = (0..=n).map(|j| column(n, j, s)).collect();
    let entries = (0..=n).map(|i| (0..=n).map(|j| cols[j][i]).collect()).collect();
    Ok(GammaMatrix { n, s, entries })
}

impl GammaMatrix {
    /// `c_j = sum_i v_ij`.
    pub fn c_vector(&self) -> Vec<Complex64> {
        (0..=self.n)
            .map(|j| self.entries.iter().map(|row| row[j]).sum())
            .collect()
    }

    /// `c'_j = sum_i (-1)^{n-i} v_ij`.
    pub fn c_prime_vector(&self) -> Vec<Complex64> {
        (0..=self.n)
            .map(|j| {
                self.entries
                    .iter()
                    .enumerate()
                    .map(|(i, row)| if (self.n - i) % 2 == 0 { row[j] } else { -row[j] })
                    .sum()
            })
            .collect()
    }
}

pub fn c_vector(n: usize, s: Complex64) -> Result<Vec<Complex64>> {
    Ok(gamma_matrix(n, s)?.c_vector())
}

pub fn c_prime_vector(n: usize, s: Complex64) -> Result<Vec<Complex64>> {
    Ok(gamma_matrix(n, s)?.c_prime_vector())
}

fn half_angle(k: usize, s: Complex64) -> Complex64 {
    (s + k as f64) * std::f64::consts::FRAC_PI_2
}

/// `2^n prod_{k<=j} cos(pi(k+s)/2) prod_{k<=n-j} cos(pi(k+s)/2)`.
pub fn c_closed_form(n: usize, j: usize, s: Complex64) -> Complex64 {
    let a: Complex64 = (1..=j).map(|k| half_angle(k, s).cos()).product();
    let b: Complex64 = (1..=n - j).map(|k| half_angle(k, s).cos()).product();
    a * b * 2f64.powi(n as i32)
}

/// `(2i)^n (-1)^{n-j} prod_{k<=j} sin(pi(k+s)/2) prod_{k<=n-j} sin(pi(k+s)/2)`.
pub fn c_prime_closed_form(n: usize, j: usize, s: Complex64) -> Complex64 {
    let a: Complex64 = (1..=j).map(|k| half_angle(k, s).sin()).product();
    let b: Complex64 = (1..=n - j).map(|k| half_angle(k, s).sin()).product();
    let sign = if (n - j) % 2 == 0 { 1.0 } else { -1.0 };
    a * b * Complex64::new(0.0, 2.0).powi(n as i32) * sign
}

/// `(-1)^{j(n-j)/2}` for odd `n`.
pub fn c_sign_vector(n: usize) -> Vec<i8> {
    (0..=n).map(|j| neg_one_pow(j * (n - j) / 2)).collect()
}

/// `(-1)^{j(n-j)/2 + j}` for odd `n`.
pub fn c_prime_sign_vector(n: usize) -> Vec<i8> {
    (0..=n).map(|j| neg_one_pow(j * (n - j) / 2 + j)).collect()
}

fn neg_one_pow(e: usize) -> i8 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of `c_j / c_{j-1}` at generic `s`: `(-1)^{(n+1)/2 + j}`.
pub fn consecutive_ratio_sign(n: usize, j: usize) -> i8 {
    neg_one_pow((n + 1) / 2 + j)
}

/// The sign vector rewritten through the negative-eigenvalue count `j`:
/// `(-1)^{j(j-1)/2} (-1)^{j(n-1)/2}`, compared as exact integers.
pub fn sign_vector_identity(n: usize) -> bool {
    n % 2 == 1
        && c_sign_vector(n)
            .into_iter()
            .enumerate()
            .all(|(j, v)| v == neg_one_pow(j * j.saturating_sub(1) / 2 + j * (n - 1) / 2))
}

#[derive(Clone, Debug, Serialize)]
pub struct SignVectorCheck {
    pub n: usize,
    #[serde(serialize_with = "complex_pair")]
    pub s: Complex64,
    #[serde(serialize_with = "complex_vec")]
    pub c: Vec<Complex64>,
    #[serde(serialize_with = "complex_vec")]
    pub c_prime: Vec<Complex64>,
    #[serde(serialize_with = "complex_vec")]
    pub c_normalized: Vec<Complex64>,
    #[serde(serialize_with = "complex_vec")]
    pub c_prime_normalized: Vec<Complex64>,
    pub expected_c: Vec<i8>,
    pub expected_c_prime: Vec<i8>,
    /// Largest gap between the direct sums and the product formulas.
    pub closed_form_error: f64,
    pub max_sign_error: f64,
    pub holds: bool,
}

/// Normalized column sums against the sign vectors, plus the product formulas.
pub fn check_sign_vectors(n: usize, s: Complex64) -> Result<SignVectorCheck> {
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("sign vectors need odd n, got {n}")));
    }
    let g = gamma_matrix(n, s)?;
    let c = g.c_vector();
    let cp = g.c_prime_vector();
    if let Some(j) = (0..=n).find(|&j| c[j].norm() < ZERO_TOL || cp[j].norm() < ZERO_TOL) {
        return Err(Error::Precondition(format!(
            "s = {s} is at a zero of the column sums (j = {j})"
        )));
    }
    let cn: Vec<Complex64> = c.iter().map(|z| z / c[0]).collect();
    let cpn: Vec<Complex64> = cp.iter().map(|z| z / cp[0]).collect();
    let ec = c_sign_vector(n);
    let ecp = c_prime_sign_vector(n);
    let mut max_sign_error = 0f64;
    for j in 0..=n {
        max_sign_error = max_sign_error
            .max((cn[j] - ec[j] as f64).norm())
            .max((cpn[j] - ecp[j] as f64).norm());
    }
    let closed_form_error = closed_form_error(&g);
    Ok(SignVectorCheck {
        n,
        s,
        c,
        c_prime: cp,
        c_normalized: cn,
        c_prime_normalized: cpn,
        expected_c: ec,
        expected_c_prime: ecp,
        closed_form_error,
        max_sign_error,
        holds: max_sign_error < SIGN_TOL && closed_form_error < SIGN_TOL,
    })
}

/// Max relative gap between direct column sums and the product formulas.
pub fn closed_form_error(g: &GammaMatrix) -> f64 {
    let c = g.c_vector();
    let cp = g.c_prime_vector();
    let mut err = 0f64;
    for j in 0..=g.n {
        let a = c_closed_form(g.n, j, g.s);
        let b = c_prime_closed_form(g.n, j, g.s);
        err = err
            .max((c[j] - a).norm() / a.norm().max(1.0))
            .max((cp[j] - b).norm() / b.norm().max(1.0));
    }
    err
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn n_one_entries() {
        let s = re(0.3);
        let i = Complex64::new(0.0, 1.0);
        let e = (i * std::f64::consts::FRAC_PI_2 * (1.0 + 0.3)).exp();
        assert!((v_entry(1, 1, 0, s).unwrap() - e.conj()).norm() < 1e-14);
        assert!((v_entry(1, 0, 0, s).unwrap() - e).norm() < 1e-14);
    }

    #[test]
    fn conjugate_symmetry_for_real_s() {
        let g = gamma_matrix(5, re(1.7)).unwrap();
        for i in 0..=5 {
            for j in 0..=5 {
                assert!((g.entries[i][j] - g.entries[5 - i][j].conj()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn entries_bounded_by_binomials() {
        let g = gamma_matrix(6, Complex64::new(0.2, 0.0)).unwrap();
        let binom = [1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0];
        for (i, row) in g.entries.iter().enumerate() {
            for z in row {
                assert!(z.norm() <= binom[i] + 1e-12);
            }
        }
    }

    #[test]
    fn n_three_examples() {
        let chk = check_sign_vectors(3, re(0.3)).unwrap();
        assert!(chk.holds, "{chk:?}");
        assert_eq!(chk.expected_c, vec![1, -1, -1, 1]);
        assert_eq!(chk.expected_c_prime, vec![1, 1, -1, -1]);
    }

    #[test]
    fn closed_forms_including_complex_s() {
        for n in [1, 2, 3, 4, 5, 7] {
            for s in [re(0.3), re(1.7), re(-0.4), Complex64::new(-0.5, 0.7)] {
                let g = gamma_matrix(n, s).unwrap();
                assert!(closed_form_error(&g) < 1e-10, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn consecutive_ratios() {
        for n in [3usize, 5, 7] {
            let c = c_vector(n, re(0.3)).unwrap();
            for j in 1..=n {
                let r = c[j] / c[j - 1];
                assert!((r - consecutive_ratio_sign(n, j) as f64).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn zeros_at_odd_integers() {
        // at s = 0 the k = 1 factor cos(pi/2) vanishes
        assert!(c_closed_form(3, 1, re(0.0)).norm() < 1e-15);
        assert!(check_sign_vectors(3, re(0.0)).is_err());
    }

    #[test]
    fn sign_identity_holds() {
        for n in [3, 5, 7, 9] {
            assert!(sign_vector_identity(n));
        }
        // the body-text exponent j(n-j) is even for odd n, hence constant
        assert!((0..=5).all(|j| (j * (5 - j)) % 2 == 0));
    }

    #[test]
    fn size_limits() {
        assert!(v_entry(21, 0, 0, re(0.3)).is_err());
        assert!(v_entry(3, 4, 0, re(0.3)).is_err());
    }
}
