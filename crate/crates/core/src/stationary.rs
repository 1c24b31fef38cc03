//! Oscillatory integrals `∫_{Z_p^n} psi(t f(x)) dx` for integer polynomial
//! phases in one or two variables, and their stationary-phase prediction
//! from Hensel-lifted critical points.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{mod_inv, padic_valuation, pow_p, pow_u64, root_of_unity, AdditiveCharacter, Convention, Place, Rational};
use crate::forms::{diagonalize, QuadraticForm, SymMatrix};
use crate::kernel::{check_budget, chunked_sum, int_residue, power_terms};
use crate::weil::{det_factor, gamma_form};

/// Agreement required between consecutive truncation levels.
pub const LEVEL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    coeff: i64,
    exps: [u32; 2],
}

/// An integer polynomial in `x` (and optionally `y`), read over `Q_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasePolynomial {
    nvars: usize,
    terms: Vec<Term>,
    p: u64,
}

impl PhasePolynomial {
    /// Parses strings such as `"x^3-3*x"` or `"x^2 + 2*x*y - y^2 + 1"`.
    pub fn parse(src: &str, p: u64) -> Result<Self> {
        if !crate::field::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let bad = |msg: String| Error::parse("polynomial", format!("{src:?}: {msg}"));
        let s: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty".into()));
        }
        let mut terms: Vec<Term> = Vec::new();
        let mut i = 0;
        let read_int = |i: &mut usize| -> Option<u64> {
            let start = *i;
            while *i < s.len() && s[*i].is_ascii_digit() {
                *i += 1;
            }
            (start < *i).then(|| s[start..*i].iter().collect::<String>().parse().ok())?
        };
        while i < s.len() {
            let mut sign = 1i64;
            if s[i] == '+' || s[i] == '-' {
                if s[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if !terms.is_empty() {
                return Err(bad(format!("expected + or - at position {i}")));
            }
            let mut coeff = sign;
            let mut exps = [0u32; 2];
            let mut factors = 0;
            loop {
                if i < s.len() && s[i].is_ascii_digit() {
                    let c = read_int(&mut i).ok_or_else(|| bad("bad coefficient".into()))?;
                    coeff = coeff
                        .checked_mul(c as i64)
                        .ok_or_else(|| bad("coefficient overflow".into()))?;
                } else if i < s.len() && (s[i] == 'x' || s[i] == 'y') {
                    let var = if s[i] == 'x' { 0 } else { 1 };
                    i += 1;
                    let mut e = 1;
                    if i < s.len() && s[i] == '^' {
                        i += 1;
                        e = read_int(&mut i).ok_or_else(|| bad("bad exponent".into()))? as u32;
                    }
                    exps[var] += e;
                } else {
                    return Err(bad(format!("unexpected character at position {i}")));
                }
                factors += 1;
                if i < s.len() && s[i] == '*' {
                    i += 1;
                    continue;
                }
                if i < s.len() && (s[i] == 'x' || s[i] == 'y') {
                    continue;
                }
                break;
            }
            debug_assert!(factors > 0);
            match terms.iter_mut().find(|t| t.exps == exps) {
                Some(t) => t.coeff += coeff,
                None => terms.push(Term { coeff, exps }),
            }
        }
        terms.retain(|t| t.coeff != 0);
        if terms.iter().all(|t| t.exps == [0, 0]) {
            return Err(bad("phase must be nonconstant".into()));
        }
        let nvars = if terms.iter().any(|t| t.exps[1] > 0) { 2 } else { 1 };
        Ok(PhasePolynomial { nvars, terms, p })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn derivative(&self, var: usize) -> PhasePolynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exps[var] > 0)
            .map(|t| {
                let mut exps = t.exps;
                exps[var] -= 1;
                Term {
                    coeff: t.coeff * t.exps[var] as i64,
                    exps,
                }
            })
            .collect();
        PhasePolynomial {
            nvars: self.nvars,
            terms,
            p: self.p,
        }
    }

    /// `f(point) mod m`, point coordinates already reduced mod `m`.
    pub fn eval_mod(&self, point: &[u64], m: u64) -> u64 {
        let m = m as u128;
        let mut acc = 0u128;
        for t in &self.terms {
            let c = (t.coeff as i128).rem_euclid(m as i128) as u128;
            let mut v = c;
            for (var, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    let x = point[var] as u128 % m;
                    for _ in 0..e {
                        v = v * x % m;
                    }
                }
            }
            acc = (acc + v) % m;
        }
        acc as u64
    }

    pub fn eval_big(&self, point: &[BigInt]) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, t| {
            let mut v = BigInt::from(t.coeff);
            for (var, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    v *= point[var].pow(e);
                }
            }
            acc + v
        })
    }

    fn is_separable(&self) -> bool {
        self.terms.iter().all(|t| t.exps[0] == 0 || t.exps[1] == 0)
    }

    /// `(g, h)` with `f(x, y) = g(x) + h(y)`; both returned as polynomials in `x`.
    fn split(&self) -> (PhasePolynomial, PhasePolynomial) {
        let g = self.terms.iter().filter(|t| t.exps[1] == 0).cloned().collect();
        let h = self
            .terms
            .iter()
            .filter(|t| t.exps[1] > 0)
            .map(|t| Term {
                coeff: t.coeff,
                exps: [t.exps[1], 0],
            })
            .collect();
        let mk = |terms| PhasePolynomial {
            nvars: 1,
            terms,
            p: self.p,
        };
        (mk(g), mk(h))
    }
}

impl fmt::Display for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            let sign = if t.coeff < 0 { "-" } else if k > 0 { "+" } else { "" };
            write!(f, "{sign}")?;
            let c = t.coeff.unsigned_abs();
            let mut parts = Vec::new();
            if c != 1 || t.exps == [0, 0] {
                parts.push(c.to_string());
            }
            for (name, e) in ["x", "y"].iter().zip(t.exps) {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    e => parts.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for PhasePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `t = u p^{-2m}` with `u` a unit square: returns `(m, u mod p^{2m})`.
fn split_parameter(t: &Rational, p: u64) -> Result<(u32, u64)> {
    if t.is_zero() {
        return Err(Error::Zero("oscillatory parameter t"));
    }
    let v = padic_valuation(t, p);
    if v > 0 || v % 2 != 0 {
        return Err(Error::Precondition(format!(
            "|t|_p must be p^(2m) with m >= 0, got v_p(t) = {v}"
        )));
    }
    let m = (-v / 2) as u32;
    let u = t * pow_p(p, 2 * m as i64);
    if !Place::Padic(p).square_class(&u)?.is_trivial() {
        return Err(Error::Precondition(format!("t p^(2m) = {u} is not a unit square")));
    }
    let den = pow_u64(p, 2 * m).ok_or_else(|| Error::Precondition("p^(2m) overflows".into()))?;
    Ok((m, int_residue(&u, den)))
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseIntegralResult {
    #[serde(serialize_with = "crate::json::complex_pair")]
    pub value: Complex64,
    pub level: u32,
    pub stabilized: bool,
}

fn level_sum(f: &PhasePolynomial, unit: u64, den: u64, level: u32, conv: Convention) -> Result<Complex64> {
    let p = f.p;
    let one_dim = |g: &PhasePolynomial| -> Result<Complex64> {
        let terms = check_budget(power_terms(p, level))?;
        let s = chunked_sum(terms, |x| {
            let r = g.eval_mod(&[x % den, 0], den) as u128 * unit as u128 % den as u128;
            root_of_unity(r as i128, den as u128, conv)
        });
        Ok(s / terms as f64)
    };
    if f.nvars == 1 {
        return one_dim(f);
    }
    if f.is_separable() {
        // Fubini: the integral of psi(t(g(x) + h(y))) factors
        let (g, h) = f.split();
        return Ok(one_dim(&g)? * one_dim(&h)?);
    }
    let side = pow_u64(p, level).ok_or(Error::Budget {
        terms: u128::MAX,
        budget: crate::kernel::TERM_BUDGET,
    })?;
    let terms = check_budget(power_terms(p, 2 * level))?;
    let s = chunked_sum(terms, |i| {
        let pt = [(i % side) % den, (i / side) % den];
        let r = f.eval_mod(&pt, den) as u128 * unit as u128 % den as u128;
        root_of_unity(r as i128, den as u128, conv)
    });
    Ok(s / terms as f64)
}

/// `p^{-nK} sum_{x mod p^K} psi(t f(x))`, raising `K` until two consecutive
/// levels agree. Starts at `max(level, 2m)`; below `2m` the sum is not yet
/// the integral.
pub fn exact_oscillatory_integral(
    f: &PhasePolynomial,
    t: &Rational,
    level: u32,
    conv: Convention,
) -> Result<PhaseIntegralResult> {
    let (m, unit) = split_parameter(t, f.p)?;
    let den = pow_u64(f.p, 2 * m).unwrap();
    let mut k = level.max(2 * m);
    let mut current = level_sum(f, unit, den, k, conv)?;
    loop {
        let next = match level_sum(f, unit, den, k + 1, conv) {
            Ok(v) => v,
            Err(Error::Budget { terms, budget }) => {
                return Err(Error::NoStabilization(format!(
                    "level {k} sum did not stabilize before the budget ({terms} > {budget})"
                )))
            }
            Err(e) => return Err(e),
        };
        if (next - current).norm() < LEVEL_TOL {
            return Ok(PhaseIntegralResult {
                value: current,
                level: k,
                stabilized: true,
            });
        }
        current = next;
        k += 1;
    }
}

/// A Hensel-lifted nondegenerate critical point.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint {
    /// Balanced residues modulo `p^precision`.
    pub point: Vec<i128>,
    pub precision: u32,
    /// `q` with `f(x0 + h) - f(x0) = q(h) + O(h^3)`, diagonalized.
    pub hessian_form: QuadraticForm,
    /// `f(x0) mod p^precision`.
    pub phase_value: i128,
}

fn balanced(r: u64, m: u64) -> i128 {
    let r = r as i128;
    if r > m as i128 / 2 {
        r - m as i128
    } else {
        r
    }
}

/// Critical points of `f` on `Z_p^n`, lifted to precision `p^precision`.
/// Every root of the gradient mod `p` must have a Hessian invertible mod `p`.
pub fn critical_points(f: &PhasePolynomial, precision: u32) -> Result<Vec<CriticalPoint>> {
    let p = f.p;
    let precision = precision.max(1);
    let modulus = pow_u64(p, precision)
        .filter(|m| *m < (1u64 << 62))
        .ok_or_else(|| Error::Precondition(format!("p^{precision} is too large")))?;
    let n = f.nvars;
    let grad: Vec<PhasePolynomial> = (0..n).map(|v| f.derivative(v)).collect();
    let hess: Vec<Vec<PhasePolynomial>> = grad
        .iter()
        .map(|g| (0..n).map(|v| g.derivative(v)).collect())
        .collect();
    let eval_at = |poly: &PhasePolynomial, x: &[u64], m: u64| {
        let mut pt = [0u64; 2];
        pt[..n].copy_from_slice(x);
        poly.eval_mod(&pt, m)
    };

    let residues: Vec<Vec<u64>> = if n == 1 {
        (0..p).map(|r| vec![r]).collect()
    } else {
        (0..p).flat_map(|a| (0..p).map(move |b| vec![a, b])).collect()
    };

    let mut out = Vec::new();
    for r in residues {
        if grad.iter().any(|g| eval_at(g, &r, p) != 0) {
            continue;
        }
        let hdet = hessian_det_mod(&hess, &r, p, &eval_at);
        if hdet == 0 {
            return Err(Error::Degenerate(format!(
                "{f}: gradient vanishes at {r:?} mod {p} with singular Hessian"
            )));
        }
        // Newton iteration x <- x - H(x)^{-1} grad f(x) mod p^K
        let mut x = r.clone();
        for _ in 0..64 {
            let g: Vec<u64> = grad.iter().map(|gp| eval_at(gp, &x, modulus)).collect();
            if g.iter().all(|&v| v == 0) {
                break;
            }
            let step = solve_hessian(&hess, &x, &g, modulus, &eval_at);
            for (xi, si) in x.iter_mut().zip(step) {
                *xi = ((*xi as u128 + modulus as u128 - si as u128) % modulus as u128) as u64;
            }
        }
        if grad.iter().any(|gp| eval_at(gp, &x, modulus) != 0) {
            return Err(Error::Precondition(format!("Hensel lifting from {r:?} did not converge")));
        }
        let point: Vec<i128> = x.iter().map(|&v| balanced(v, modulus)).collect();
        let big: Vec<BigInt> = {
            let mut b: Vec<BigInt> = point.iter().map(|&v| BigInt::from(v)).collect();
            b.resize(2, BigInt::zero());
            b
        };
        let half = |poly: &PhasePolynomial| Rational::new(poly.eval_big(&big), BigInt::from(2));
        let entries: Vec<Vec<Rational>> = hess.iter().map(|row| row.iter().map(half).collect()).collect();
        let (hessian_form, radical) = diagonalize(&SymMatrix::new(entries)?, Place::Padic(p));
        let margin = if p == 2 { 3 } else { 1 };
        if radical > 0
            || hessian_form
                .coeffs()
                .iter()
                .any(|a| padic_valuation(a, p) + margin > precision as i64)
        {
            return Err(Error::Precondition(format!(
                "precision p^{precision} does not certify the Hessian class at {point:?}"
            )));
        }
        let phase = eval_at(f, &x, modulus);
        out.push(CriticalPoint {
            point,
            precision,
            hessian_form,
            phase_value: balanced(phase, modulus),
        });
    }
    Ok(out)
}

fn hessian_det_mod<E>(hess: &[Vec<PhasePolynomial>], x: &[u64], m: u64, eval_at: &E) -> u64
where
    E: Fn(&PhasePolynomial, &[u64], u64) -> u64,
{
    if hess.len() == 1 {
        return eval_at(&hess[0][0], x, m);
    }
    let h = |i: usize, j: usize| eval_at(&hess[i][j], x, m) as u128;
    let m128 = m as u128;
    ((h(0, 0) * h(1, 1) % m128 + m128 - h(0, 1) * h(1, 0) % m128) % m128) as u64
}

/// `H(x)^{-1} g mod m` for a Hessian that is invertible mod `p`.
fn solve_hessian<E>(hess: &[Vec<PhasePolynomial>], x: &[u64], g: &[u64], m: u64, eval_at: &E) -> Vec<u64>
where
    E: Fn(&PhasePolynomial, &[u64], u64) -> u64,
{
    let m128 = m as u128;
    let det = hessian_det_mod(hess, x, m, eval_at);
    let inv = mod_inv(det, m) as u128;
    if hess.len() == 1 {
        return vec![(g[0] as u128 * inv % m128) as u64];
    }
    let h = |i: usize, j: usize| eval_at(&hess[i][j], x, m) as u128;
    let (a, b, c, d) = (h(0, 0), h(0, 1), h(1, 0), h(1, 1));
    let (g0, g1) = (g[0] as u128, g[1] as u128);
    // adj(H) = [[d, -b], [-c, a]]
    let s0 = (d * g0 % m128 + m128 - b * g1 % m128) % m128;
    let s1 = (a * g1 % m128 + m128 - c * g0 % m128) % m128;
    vec![(s0 * inv % m128) as u64, (s1 * inv % m128) as u64]
}

/// `sum_{x0} psi(t f(x0)) |t|^{-n/2} gamma(q_{x0}) |det q_{x0}|^{-1/2}`.
pub fn stationary_phase_prediction(f: &PhasePolynomial, t: &Rational, conv: Convention) -> Result<Complex64> {
    let p = f.p;
    let (m, unit) = split_parameter(t, p)?;
    let den = pow_u64(p, 2 * m).unwrap();
    let precision = 2 * m + 2;
    let psi = AdditiveCharacter::with_convention(Place::Padic(p), conv);
    let mut total = Complex64::zero();
    for cp in critical_points(f, precision)? {
        if cp.precision < 2 * m {
            return Err(Error::Precondition("critical point precision below 2m".into()));
        }
        let fx = (cp.phase_value.rem_euclid(den as i128)) as u128;
        let phase = root_of_unity((fx * unit as u128 % den as u128) as i128, den as u128, conv);
        let weight = (p as f64).powi(-((m as usize * f.nvars) as i32));
        let c = gamma_form(&cp.hessian_form, &psi)?.value * det_factor(&cp.hessian_form);
        total += phase * weight * c;
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareRow {
    pub m: u32,
    #[serde(serialize_with = "crate::json::complex_pair")]
    pub exact: Complex64,
    #[serde(serialize_with = "crate::json::complex_pair")]
    pub prediction: Complex64,
    pub difference: f64,
    pub level: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub phase: PhasePolynomial,
    pub p: u64,
    pub rows: Vec<CompareRow>,
    /// Smallest tested `m` from which every row agrees within `tol`.
    pub threshold: Option<u32>,
    pub tol: f64,
}

/// Exact integral versus prediction at `t = p^{-2m}` for each `m`.
pub fn compare(f: &PhasePolynomial, ms: &[u32], tol: f64, conv: Convention) -> Result<CompareReport> {
    let p = f.p;
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let t = pow_p(p, -2 * m as i64);
        let exact = exact_oscillatory_integral(f, &t, 2 * m, conv)?;
        let prediction = stationary_phase_prediction(f, &t, conv)?;
        rows.push(CompareRow {
            m,
            exact: exact.value,
            prediction,
            difference: (exact.value - prediction).norm(),
            level: exact.level,
        });
    }
    let mut sorted: Vec<&CompareRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.m);
    let mut threshold = None;
    for r in sorted.iter().rev() {
        if r.difference < tol {
            threshold = Some(r.m);
        } else {
            break;
        }
    }
    Ok(CompareReport {
        phase: f.clone(),
        p,
        rows,
        threshold,
        tol,
    })
}

impl CriticalPoint {
    pub fn point_f64(&self) -> Vec<f64> {
        self.point.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    const PLUS: Convention = Convention::Plus;

    #[test]
    fn parse_and_display() {
        let f = PhasePolynomial::parse("x^3 - 3*x", 7).unwrap();
        assert_eq!(f.nvars(), 1);
        assert_eq!(f.to_string(), "x^3-3*x");
        let g = PhasePolynomial::parse("x^2+y^2", 5).unwrap();
        assert_eq!(g.nvars(), 2);
        let h = PhasePolynomial::parse("2x*y + 3 - y^3", 5).unwrap();
        assert_eq!(h.eval_mod(&[1, 2], 1000), (4 + 3 + 1000 - 8) % 1000);
        assert!(PhasePolynomial::parse("5", 5).is_err());
        assert!(PhasePolynomial::parse("x^2+z", 5).is_err());
        assert!(PhasePolynomial::parse("x", 4).is_err());
    }

    #[test]
    fn linear_phase_integrates_to_zero() {
        let f = PhasePolynomial::parse("x", 5).unwrap();
        let r = exact_oscillatory_integral(&f, &rat(1, 25), 0, PLUS).unwrap();
        assert!(r.stabilized);
        assert!(r.value.norm() < 1e-12);
        assert!(critical_points(&f, 4).unwrap().is_empty());
    }

    #[test]
    fn square_phase_matches_gauss_sum() {
        let f = PhasePolynomial::parse("x^2", 5).unwrap();
        let r = exact_oscillatory_integral(&f, &rat(1, 25), 0, PLUS).unwrap();
        assert!((r.value - Complex64::new(0.2, 0.0)).norm() < 1e-12);
        let pred = stationary_phase_prediction(&f, &rat(1, 25), PLUS).unwrap();
        assert!((pred - r.value).norm() < 1e-12);
    }

    #[test]
    fn cubic_critical_points() {
        let f = PhasePolynomial::parse("x^3-3*x", 7).unwrap();
        let cps = critical_points(&f, 6).unwrap();
        let mut found: Vec<(i128, Rational)> = cps
            .iter()
            .map(|c| (c.point[0], c.hessian_form.coeffs()[0].clone()))
            .collect();
        found.sort();
        assert_eq!(found, vec![(-1, int(-3)), (1, int(3))]);
    }

    #[test]
    fn hensel_lifts_irrational_roots() {
        // f' = 3x^2 - 6 has roots ±sqrt(2) in Z_7 (3^2 = 2 mod 7)
        let f = PhasePolynomial::parse("x^3-6*x", 7).unwrap();
        let cps = critical_points(&f, 8).unwrap();
        assert_eq!(cps.len(), 2);
        let m = 7i128.pow(8);
        for c in cps {
            let x = c.point[0];
            assert_eq!((x * x - 2).rem_euclid(m), 0);
        }
    }

    #[test]
    fn degenerate_point_is_rejected() {
        let f = PhasePolynomial::parse("x^3", 5).unwrap();
        assert!(matches!(critical_points(&f, 3), Err(Error::Degenerate(_))));
    }

    #[test]
    fn square_of_x_has_single_critical_point() {
        for p in [3u64, 5, 11] {
            let f = PhasePolynomial::parse("x^2", p).unwrap();
            let cps = critical_points(&f, 4).unwrap();
            assert_eq!(cps.len(), 1);
            assert_eq!(cps[0].point, vec![0]);
            assert_eq!(cps[0].hessian_form.coeffs(), &[int(1)]);
        }
    }

    #[test]
    fn parameter_preconditions() {
        let f = PhasePolynomial::parse("x^2", 5).unwrap();
        assert!(exact_oscillatory_integral(&f, &rat(1, 5), 0, PLUS).is_err());
        assert!(exact_oscillatory_integral(&f, &rat(2, 25), 0, PLUS).is_err());
        assert!(exact_oscillatory_integral(&f, &rat(4, 25), 0, PLUS).is_ok());
    }

    #[test]
    fn two_variable_non_separable_phase() {
        // x^2 + x*y + y^2 has discriminant -3, nondegenerate mod 5
        let f = PhasePolynomial::parse("x^2+x*y+y^2+x", 5).unwrap();
        for m in [1u32, 2] {
            let t = pow_p(5, -2 * m as i64);
            let exact = exact_oscillatory_integral(&f, &t, 0, PLUS).unwrap();
            let pred = stationary_phase_prediction(&f, &t, PLUS).unwrap();
            assert!((exact.value - pred).norm() < 1e-10, "m={m}: {} vs {pred}", exact.value);
        }
    }

    #[test]
    fn separable_product_matches_grid() {
        let f = PhasePolynomial::parse("x^2+y^3-3*y", 5).unwrap();
        let den = 25;
        let prod = level_sum(&f, 1, den, 2, PLUS).unwrap();
        let side = 25u64;
        let grid = chunked_sum(side * side, |i| {
            let r = f.eval_mod(&[i % side, i / side], den);
            root_of_unity(r as i128, den as u128, PLUS)
        }) / (side * side) as f64;
        assert!((prod - grid).norm() < 1e-12);
    }
}
