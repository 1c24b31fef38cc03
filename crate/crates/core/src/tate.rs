//! The one-dimensional local functional equation over `Q_p`:
//! `∫ chi(x) F(phi)(x) dx = c(chi) ∫ |x|^{-1} chi^{-1}(x) phi(x) dx`
//! on locally constant test functions, evaluated in closed form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{int, least_nonresidue, padic_frac, padic_valuation, pow_p, rational_str, Convention, Place, Rational, SquareClass};
use crate::json::{complex_pair, complex_vec};
use crate::kernel::{check_budget, power_terms, psi};

/// Ratios whose denominator is below this are dropped from a report.
pub const ZERO_PAIRING: f64 = 1e-13;

/// `x -> (x, d) |x|^s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MultiplicativeCharacter {
    #[serde(serialize_with = "complex_pair")]
    pub s: Complex64,
    pub twist: SquareClass,
}

impl MultiplicativeCharacter {
    pub fn new(s: Complex64, twist: &Rational, place: Place) -> Result<Self> {
        Ok(MultiplicativeCharacter {
            s,
            twist: place.square_class(twist)?,
        })
    }

    pub fn unramified(s: Complex64, place: Place) -> Self {
        MultiplicativeCharacter {
            s,
            twist: SquareClass::one(place),
        }
    }

    pub fn place(&self) -> Place {
        self.twist.place
    }

    /// `|.|^{-1} chi^{-1}`; the quadratic twist is its own inverse.
    pub fn dual(&self) -> Self {
        MultiplicativeCharacter {
            s: -self.s - 1.0,
            twist: self.twist,
        }
    }

    /// `|x|^s` from the valuation, so no float power of a huge rational is formed.
    fn abs_pow(&self, x: &Rational) -> Complex64 {
        match self.place() {
            Place::Padic(p) => {
                let v = padic_valuation(x, p) as f64;
                (-self.s * v * (p as f64).ln()).exp()
            }
            Place::Real => {
                let a = x.to_f64().unwrap_or(f64::NAN).abs();
                (self.s * a.ln()).exp()
            }
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Complex64> {
        if x.is_zero() {
            return Err(Error::Zero("multiplicative character"));
        }
        let sign = self.place().hilbert(x, &self.twist.rational())?;
        Ok(self.abs_pow(x) * sign as f64)
    }
}

/// `sum_t w_t 1_{c_t + p^{k_t} Z_p}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CosetFunction {
    pub p: u64,
    pub terms: Vec<CosetTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CosetTerm {
    /// Canonical representative of `c + p^k Z_p`.
    #[serde(with = "rational_str")]
    pub center: Rational,
    pub level: i64,
    #[serde(serialize_with = "complex_pair")]
    pub weight: Complex64,
}

/// The representative `p^k {c / p^k}_p` of `c + p^k Z_p`.
pub fn canonical_center(c: &Rational, k: i64, p: u64) -> Rational {
    let pk = pow_p(p, k);
    padic_frac(&(c / &pk), p) * pk
}

impl CosetFunction {
    pub fn zero(p: u64) -> Self {
        CosetFunction { p, terms: Vec::new() }
    }

    /// `1_{c + p^k Z_p}`.
    pub fn indicator(p: u64, center: &Rational, level: i64) -> Self {
        Self::zero(p).plus(center, level, Complex64::new(1.0, 0.0))
    }

    /// Adds `w 1_{c + p^k Z_p}`.
    pub fn plus(mut self, center: &Rational, level: i64, weight: Complex64) -> Self {
        self.terms.push(CosetTerm {
            center: canonical_center(center, level, self.p),
            level,
            weight,
        });
        self
    }

    pub fn add(mut self, other: &CosetFunction) -> Self {
        assert_eq!(self.p, other.p);
        self.terms.extend(other.terms.iter().cloned());
        self
    }

    pub fn scale(mut self, w: Complex64) -> Self {
        for t in &mut self.terms {
            t.weight *= w;
        }
        self
    }

    /// `x -> phi(-x)`.
    pub fn reflect(&self) -> Self {
        let mut out = Self::zero(self.p);
        for t in &self.terms {
            out = out.plus(&-&t.center, t.level, t.weight);
        }
        out
    }

    pub fn eval(&self, x: &Rational) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| {
                let d = x - &t.center;
                d.is_zero() || padic_valuation(&d, self.p) >= t.level
            })
            .map(|t| t.weight)
            .sum()
    }

    pub fn finest_level(&self) -> Option<i64> {
        self.terms.iter().map(|t| t.level).max()
    }

    /// Weights on the disjoint cosets of `p^level Z_p`, keyed by canonical center.
    pub fn refine(&self, level: i64) -> Result<BTreeMap<Rational, Complex64>> {
        let mut out = BTreeMap::new();
        for t in &self.terms {
            if t.level > level {
                return Err(Error::Precondition(format!(
                    "cannot refine level {} to coarser level {level}",
                    t.level
                )));
            }
            let count = check_budget(power_terms(self.p, (level - t.level) as u32))?;
            let step = pow_p(self.p, t.level);
            for r in 0..count {
                let c = canonical_center(&(&t.center + &step * int(r as i64)), level, self.p);
                *out.entry(c).or_insert_with(Complex64::zero) += t.weight;
            }
        }
        Ok(out)
    }

    /// Fourier transform with kernel `psi(xy)`:
    /// `F(1_{c + p^k Z_p})(y) = p^{-k} psi(cy) 1_{p^{-k} Z_p}(y)`, with
    /// `psi(cy)` expanded over the cosets of `p^{-v(c)} Z_p` on which it is
    /// constant.
    pub fn fourier(&self, conv: Convention) -> Result<Self> {
        let p = self.p;
        let mut out = Self::zero(p);
        for t in &self.terms {
            let scale = pow_p(p, -t.level).to_f64().unwrap();
            let w = t.weight * scale;
            let outer = -t.level;
            if t.center.is_zero() || padic_valuation(&t.center, p) >= t.level {
                out = out.plus(&int(0), outer, w);
                continue;
            }
            let inner = -padic_valuation(&t.center, p);
            let count = check_budget(power_terms(p, (inner - outer) as u32))?;
            let step = pow_p(p, outer);
            for r in 0..count {
                let y = &step * int(r as i64);
                out = out.plus(&y, inner, w * psi(p, &(&t.center * &y), conv));
            }
        }
        Ok(out)
    }

    /// `∫ |phi|^2 dx`.
    pub fn l2_norm_sq(&self) -> Result<f64> {
        let Some(level) = self.finest_level() else {
            return Ok(0.0);
        };
        let vol = pow_p(self.p, -level).to_f64().unwrap();
        Ok(self.refine(level)?.values().map(|w| w.norm_sqr()).sum::<f64>() * vol)
    }

    /// Pointwise equality up to `tol` on the weights.
    pub fn approx_eq(&self, other: &CosetFunction, tol: f64) -> Result<bool> {
        let level = match (self.finest_level(), other.finest_level()) {
            (None, None) => return Ok(true),
            (a, b) => a.max(b).unwrap(),
        };
        let a = self.refine(level)?;
        let b = other.refine(level)?;
        let zero = Complex64::zero();
        Ok(a.keys()
            .chain(b.keys())
            .all(|c| (a.get(c).unwrap_or(&zero) - b.get(c).unwrap_or(&zero)).norm() <= tol))
    }
}

/// `∫_{Z_p^*} (y, d) dy` from the residues mod `p` (mod 8 at `p = 2`).
fn unit_twist_integral(chi: &MultiplicativeCharacter, p: u64) -> Complex64 {
    let depth = if p == 2 { 3 } else { 1 };
    let m = p.pow(depth);
    let d = chi.twist.rational();
    let sum: i64 = (1..m)
        .filter(|y| y % p != 0)
        .map(|y| Place::Padic(p).hilbert(&int(y as i64), &d).unwrap() as i64)
        .sum();
    Complex64::new(sum as f64 / m as f64, 0.0)
}

/// Ratio of consecutive shells, `(p, d) p^{-(s+1)}`.
fn shell_ratio(chi: &MultiplicativeCharacter, p: u64) -> Complex64 {
    let sign = Place::Padic(p).hilbert(&int(p as i64), &chi.twist.rational()).unwrap();
    (-(chi.s + 1.0) * (p as f64).ln()).exp() * sign as f64
}

fn require_convergent(chi: &MultiplicativeCharacter) -> Result<()> {
    if chi.s.re <= -1.0 {
        Err(Error::Divergent(format!(
            "Re(s) = {} <= -1: the pairing diverges at 0",
            chi.s.re
        )))
    } else {
        Ok(())
    }
}

/// Level at which `(x, d)` is constant on `c + p^k Z_p` when `v(c) < k`.
fn twist_level(p: u64, v: i64) -> i64 {
    v + if p == 2 { 3 } else { 1 }
}

/// `∫ chi(x) phi(x) dx`; cosets through 0 are summed as a geometric series
/// of shells `|x| = p^{-j}` in closed form.
pub fn padic_zeta(phi: &CosetFunction, chi: &MultiplicativeCharacter) -> Result<Complex64> {
    zeta_with(phi, chi, |k| {
        let r = shell_ratio(chi, phi.p);
        Ok(r.powi(k as i32) / (1.0 - r))
    })
}

/// As [`padic_zeta`] but summing shells one by one until the geometric
/// tail bound falls below `tail_tol`.
pub fn padic_zeta_truncated(phi: &CosetFunction, chi: &MultiplicativeCharacter, tail_tol: f64) -> Result<Complex64> {
    zeta_with(phi, chi, |k| {
        let r = shell_ratio(chi, phi.p);
        let mut acc = Complex64::zero();
        let mut term = r.powi(k as i32);
        let mut shells = 0;
        loop {
            acc += term;
            term *= r;
            shells += 1;
            if term.norm() / (1.0 - r.norm()) < tail_tol {
                return Ok(acc);
            }
            if shells > 100_000 {
                return Err(Error::Divergent("shell series tail did not fall below tolerance".into()));
            }
        }
    })
}

fn zeta_with<F>(phi: &CosetFunction, chi: &MultiplicativeCharacter, shells_from: F) -> Result<Complex64>
where
    F: Fn(i64) -> Result<Complex64>,
{
    let p = phi.p;
    let place = Place::Padic(p);
    if chi.place() != place {
        return Err(Error::PlaceMismatch(chi.place(), place));
    }
    let mut total = Complex64::zero();
    for t in &phi.terms {
        if t.center.is_zero() {
            require_convergent(chi)?;
            total += t.weight * unit_twist_integral(chi, p) * shells_from(t.level)?;
            continue;
        }
        let v = padic_valuation(&t.center, p);
        let need = twist_level(p, v);
        if t.level >= need {
            let vol = pow_p(p, -t.level).to_f64().unwrap();
            total += t.weight * chi.eval(&t.center)? * vol;
        } else {
            let vol = pow_p(p, -need).to_f64().unwrap();
            let fine = CosetFunction::indicator(p, &t.center, t.level).refine(need)?;
            for c in fine.keys() {
                total += t.weight * chi.eval(c)? * vol;
            }
        }
    }
    Ok(total)
}

/// One test function's contribution to a report.
#[derive(Clone, Debug, Serialize)]
pub struct FeRow {
    pub label: String,
    #[serde(serialize_with = "complex_pair")]
    pub lhs: Complex64,
    /// Right-hand side without the constant.
    #[serde(serialize_with = "complex_pair")]
    pub rhs: Complex64,
    #[serde(serialize_with = "crate::json::option_complex_pair")]
    pub ratio: Option<Complex64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionalEquationReport {
    pub place: Place,
    pub character: MultiplicativeCharacter,
    pub rows: Vec<FeRow>,
    pub warnings: Vec<String>,
    /// `max |r_a - r_b| / |c|` over the retained ratios.
    pub max_deviation: f64,
    #[serde(serialize_with = "complex_pair")]
    pub constant: Complex64,
}

impl FunctionalEquationReport {
    pub(crate) fn from_rows(character: MultiplicativeCharacter, rows: Vec<FeRow>) -> Self {
        let mut warnings = Vec::new();
        for r in &rows {
            if r.ratio.is_none() {
                warnings.push(format!("{}: zero pairing, excluded", r.label));
            }
        }
        let ratios: Vec<Complex64> = rows.iter().filter_map(|r| r.ratio).collect();
        let constant = if ratios.is_empty() {
            Complex64::zero()
        } else {
            ratios.iter().sum::<Complex64>() / ratios.len() as f64
        };
        let mut dev = 0f64;
        for a in &ratios {
            for b in &ratios {
                dev = dev.max((a - b).norm());
            }
        }
        let max_deviation = if constant.norm() > 0.0 { dev / constant.norm() } else { f64::INFINITY };
        FunctionalEquationReport {
            place: character.place(),
            character,
            rows,
            warnings,
            max_deviation,
            constant,
        }
    }

    pub fn retained(&self) -> usize {
        self.rows.iter().filter(|r| r.ratio.is_some()).count()
    }
}

pub(crate) fn ratio_of(lhs: Complex64, rhs: Complex64) -> Option<Complex64> {
    (rhs.norm() > ZERO_PAIRING).then(|| lhs / rhs)
}

/// Standard test functions at `p`, labeled.
pub fn default_test_set(p: u64) -> Vec<(String, CosetFunction)> {
    let one = Complex64::new(1.0, 0.0);
    let u = if p == 2 { 3 } else { least_nonresidue(p) as i64 };
    let pi = p as i64;
    let units = CosetFunction::indicator(p, &int(0), 0).add(&CosetFunction::indicator(p, &int(0), 1).scale(-one));
    vec![
        ("1_{Z_p}".into(), CosetFunction::indicator(p, &int(0), 0)),
        ("1_{Z_p^*}".into(), units),
        ("1_{1+pZ_p}".into(), CosetFunction::indicator(p, &int(1), 1)),
        ("1_{pZ_p}".into(), CosetFunction::indicator(p, &int(0), 1)),
        (format!("1_{{{u}+p^2Z_p}}"), CosetFunction::indicator(p, &int(u), 2)),
        (
            "1_{1+pZ_p} + i 1_{p+p^2Z_p}".into(),
            CosetFunction::indicator(p, &int(1), 1).plus(&int(pi), 2, Complex64::new(0.0, 1.0)),
        ),
        ("1_{1/p+Z_p}".into(), CosetFunction::indicator(p, &Rational::new(1.into(), BigInt::from(p)), 0)),
    ]
}

/// Ratio of `∫ chi F(phi)` to `∫ |.|^{-1} chi^{-1} phi` for each test function.
pub fn tate_check(
    chi: &MultiplicativeCharacter,
    test_set: &[(String, CosetFunction)],
    conv: Convention,
) -> Result<FunctionalEquationReport> {
    if !(chi.s.re > -1.0 && chi.s.re < 0.0) {
        return Err(Error::Precondition(format!(
            "Re(s) = {} is outside the strip (-1, 0)",
            chi.s.re
        )));
    }
    if test_set.len() < 3 {
        return Err(Error::Precondition("at least 3 test functions are required".into()));
    }
    let dual = chi.dual();
    let mut rows = Vec::with_capacity(test_set.len());
    for (label, phi) in test_set {
        let lhs = padic_zeta(&phi.fourier(conv)?, chi)?;
        let rhs = padic_zeta(phi, &dual)?;
        rows.push(FeRow {
            label: label.clone(),
            lhs,
            rhs,
            ratio: ratio_of(lhs, rhs),
        });
    }
    Ok(FunctionalEquationReport::from_rows(*chi, rows))
}

/// Characters used by the suites at `p`: unramified, complex `s`, the
/// unramified quadratic twist and a ramified twist.
pub fn suite_characters(p: u64) -> Vec<MultiplicativeCharacter> {
    let place = Place::Padic(p);
    let u = if p == 2 { 5 } else { least_nonresidue(p) as i64 };
    let mk = |re: f64, im: f64, d: i64| MultiplicativeCharacter::new(Complex64::new(re, im), &int(d), place).unwrap();
    vec![
        mk(-0.5, 0.0, 1),
        mk(-0.5, 0.7, 1),
        mk(-0.5, 0.0, u),
        mk(-0.3, 0.0, p as i64),
        mk(-0.25, 0.3, u * p as i64),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct FourierProperties {
    pub involutive: bool,
    #[serde(serialize_with = "complex_vec")]
    pub norms: Vec<Complex64>,
    pub plancherel: bool,
}

/// `F(F(phi)) = phi(-x)` and `||F phi|| = ||phi||`.
pub fn fourier_properties(phi: &CosetFunction, conv: Convention) -> Result<FourierProperties> {
    let f = phi.fourier(conv)?;
    let ff = f.fourier(conv)?;
    let a = phi.l2_norm_sq()?;
    let b = f.l2_norm_sq()?;
    Ok(FourierProperties {
        involutive: ff.approx_eq(&phi.reflect(), 1e-12)?,
        norms: vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
        plancherel: (a - b).abs() <= 1e-12 * a.max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::kernel::chunked_sum;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn canonical_centers() {
        assert_eq!(canonical_center(&int(26), 2, 5), int(1));
        assert_eq!(canonical_center(&rat(1, 5), 0, 5), rat(1, 5));
        assert_eq!(canonical_center(&rat(6, 5), 0, 5), rat(1, 5));
        assert_eq!(canonical_center(&int(-1), 1, 3), int(2));
    }

    #[test]
    fn unramified_zeta_of_lattice() {
        for p in [3u64, 5] {
            let s = c(-0.4, 0.2);
            let chi = MultiplicativeCharacter::unramified(s, Place::Padic(p));
            let pf = p as f64;
            let expected = (1.0 - 1.0 / pf) / (1.0 - (-(s + 1.0) * pf.ln()).exp());
            let z = padic_zeta(&CosetFunction::indicator(p, &int(0), 0), &chi).unwrap();
            assert!((z - expected).norm() < 1e-14);
            let z1 = padic_zeta(&CosetFunction::indicator(p, &int(0), 1), &chi).unwrap();
            let shift = (-(s + 1.0) * pf.ln()).exp();
            assert!((z1 - expected * shift).norm() < 1e-14);
        }
    }

    #[test]
    fn twisted_unit_pairings() {
        let p = 5;
        let place = Place::Padic(p);
        let units = &default_test_set(p)[1].1;
        // ramified twist: the residue symbol sums to zero over units
        let chi = MultiplicativeCharacter::new(c(-0.5, 0.0), &int(5), place).unwrap();
        assert!(padic_zeta(units, &chi).unwrap().norm() < 1e-14);
        // unramified twist is trivial on units
        let chi = MultiplicativeCharacter::new(c(-0.5, 0.0), &int(2), place).unwrap();
        assert!((padic_zeta(units, &chi).unwrap() - 0.8).norm() < 1e-14);
    }

    #[test]
    fn closed_form_matches_truncated_series() {
        for chi in suite_characters(3) {
            for (_, phi) in default_test_set(3) {
                let a = padic_zeta(&phi, &chi).unwrap();
                let b = padic_zeta_truncated(&phi, &chi, 1e-14).unwrap();
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn divergence_is_reported() {
        let chi = MultiplicativeCharacter::unramified(c(-1.0, 0.0), Place::Padic(5));
        assert!(matches!(
            padic_zeta(&CosetFunction::indicator(5, &int(0), 0), &chi),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn lattice_is_self_dual() {
        let f = CosetFunction::indicator(7, &int(0), 0).fourier(Convention::Plus).unwrap();
        assert!(f.approx_eq(&CosetFunction::indicator(7, &int(0), 0), 1e-15).unwrap());
    }

    #[test]
    fn fourier_of_one_plus_p_against_finite_sum() {
        // F(1_{1+pZ_p})(y) = ∫_{1+pZ_p} psi(xy) dx: sum over x mod p^2 for y in p^{-1}Z_p
        let p = 5u64;
        let f = CosetFunction::indicator(p, &int(1), 1).fourier(Convention::Plus).unwrap();
        for r in 0..25 {
            let y = rat(r, 5);
            let direct = chunked_sum(5, |t| psi(p, &(int(1 + 5 * t as i64) * &y), Convention::Plus)) / 25.0;
            assert!((f.eval(&y) - direct).norm() < 1e-14, "y = {y}");
        }
        assert!(f.eval(&rat(1, 25)).norm() < 1e-15);
    }

    #[test]
    fn involution_and_plancherel() {
        for p in [2u64, 3, 5] {
            for conv in [Convention::Plus, Convention::Minus] {
                for (label, phi) in default_test_set(p) {
                    let props = fourier_properties(&phi, conv).unwrap();
                    assert!(props.involutive, "{label} p={p}");
                    assert!(props.plancherel, "{label} p={p}");
                }
            }
        }
    }

    #[test]
    fn report_examples() {
        let place = Place::Padic(5);
        for (s, d) in [(c(-0.5, 0.0), 1), (c(-0.5, 0.0), 2), (c(-0.3, 0.4), 5)] {
            let chi = MultiplicativeCharacter::new(s, &int(d), place).unwrap();
            let r = tate_check(&chi, &default_test_set(5), Convention::Plus).unwrap();
            assert!(r.max_deviation < 1e-9, "{r:?}");
            assert!(r.retained() >= 4);
            assert!(r.constant.norm() > 1e-6);
        }
        let s = c(-0.5, 0.7);
        let chi = MultiplicativeCharacter::unramified(s, Place::Padic(3));
        let r = tate_check(&chi, &default_test_set(3), Convention::Plus).unwrap();
        assert!(r.max_deviation < 1e-9);
        // unramified: c = (1 - p^s) / (1 - p^{-s-1})
        let l3 = 3f64.ln();
        let expected = (1.0 - (s * l3).exp()) / (1.0 - (-(s + 1.0) * l3).exp());
        assert!((r.constant - expected).norm() < 1e-12);
    }

    #[test]
    fn twist_depends_on_square_class_only() {
        let place = Place::Padic(5);
        let a = MultiplicativeCharacter::new(c(-0.5, 0.0), &int(2), place).unwrap();
        let b = MultiplicativeCharacter::new(c(-0.5, 0.0), &int(2 * 49), place).unwrap();
        let ra = tate_check(&a, &default_test_set(5), Convention::Plus).unwrap();
        let rb = tate_check(&b, &default_test_set(5), Convention::Plus).unwrap();
        assert!((ra.constant - rb.constant).norm() < 1e-9);
    }

    #[test]
    fn strip_is_enforced() {
        let chi = MultiplicativeCharacter::unramified(c(0.2, 0.0), Place::Padic(5));
        assert!(tate_check(&chi, &default_test_set(5), Convention::Plus).is_err());
    }
}
