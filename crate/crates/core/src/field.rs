//! Rationals viewed inside a local field: the real place or `Q_p`.
//!
//! Every scalar is an exact [`Rational`]; the [`Place`] decides how it is
//! measured (valuation, square class, Hilbert symbol, additive character).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Residue search depth of the Hilbert-symbol oracle for odd `p`.
pub const ORACLE_DEPTH_ODD: u32 = 3;
/// Residue search depth of the Hilbert-symbol oracle for `p = 2`.
pub const ORACLE_DEPTH_TWO: u32 = 6;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = |msg: &str| Error::parse("rational", format!("{t:?}: {msg}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad("bad numerator"))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| bad("not an integer")),
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_u64(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// `p^e` as an exact rational, any sign of `e`.
pub fn pow_p(p: u64, e: i64) -> Rational {
    let b = Rational::from_integer(BigInt::from(p).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        b
    } else {
        b.recip()
    }
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128 % m as u128;
    let mut b128 = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m as u128;
        }
        b128 = b128 * b128 % m as u128;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Inverse of `a` modulo `m` (gcd must be 1).
pub(crate) fn mod_inv(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {m}");
    old_s.rem_euclid(m as i128) as u64
}

/// Legendre symbol `(a|p)` for odd prime `p`; returns 0 when `p | a`.
pub(crate) fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        0
    } else if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&k| legendre(k, p) == -1).expect("odd prime has a non-residue")
}

fn strip_prime(n: &BigInt, p: u64) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(x)` for nonzero `x`.
pub(crate) fn padic_valuation(x: &Rational, p: u64) -> i64 {
    debug_assert!(!x.is_zero());
    strip_prime(x.numer(), p).0 - strip_prime(x.denom(), p).0
}

/// Splits nonzero `x = p^v * w` and returns `(v, w mod p^k)` with `w` a p-adic unit.
pub(crate) fn unit_residue(x: &Rational, p: u64, k: u32) -> (i64, u64) {
    let (vn, n) = strip_prime(x.numer(), p);
    let (vd, d) = strip_prime(x.denom(), p);
    let m = pow_u64(p, k).expect("modulus fits in u64");
    if m == 1 {
        return (vn - vd, 0);
    }
    let mb = BigInt::from(m);
    let n = n.mod_floor(&mb).to_u64().unwrap();
    let d = d.mod_floor(&mb).to_u64().unwrap();
    let w = (n as u128 * mod_inv(d, m) as u128 % m as u128) as u64;
    (vn - vd, w)
}

/// A place of `Q`: the real place or the `p`-adic place for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Padic(u64),
}

impl Place {
    pub fn padic(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Place::Padic(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn prime(self) -> Option<u64> {
        match self {
            Place::Real => None,
            Place::Padic(p) => Some(p),
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Place::Real)
    }

    pub(crate) fn require_padic(self, op: &'static str) -> Result<u64> {
        self.prime().ok_or(Error::NotPadic { op, place: self })
    }

    pub(crate) fn same(self, other: Place) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::PlaceMismatch(self, other))
        }
    }

    /// Canonical square-class representatives, in a fixed order.
    pub fn square_class_reps(self) -> Vec<i64> {
        match self {
            Place::Real => vec![1, -1],
            Place::Padic(2) => vec![1, -1, 2, -2, 5, -5, 10, -10],
            Place::Padic(p) => {
                let u = least_nonresidue(p) as i64;
                let p = p as i64;
                vec![1, u, p, u * p]
            }
        }
    }

    pub fn valuation(self, x: &Rational) -> Result<i64> {
        let p = self.require_padic("valuation")?;
        if x.is_zero() {
            return Err(Error::Zero("valuation"));
        }
        Ok(padic_valuation(x, p))
    }

    /// `|x|_v` as a float (`|x|_p = p^{-v_p(x)}`, absolute value at the real place).
    pub fn abs(self, x: &Rational) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        match self {
            Place::Real => x.abs().to_f64().unwrap_or(f64::INFINITY),
            Place::Padic(p) => (p as f64).powi(-(padic_valuation(x, p) as i32)),
        }
    }

    pub fn square_class(self, x: &Rational) -> Result<SquareClass> {
        if x.is_zero() {
            return Err(Error::Zero("square_class"));
        }
        let rep = match self {
            Place::Real => {
                if x.is_negative() {
                    -1
                } else {
                    1
                }
            }
            Place::Padic(2) => {
                let (v, w) = unit_residue(x, 2, 3);
                let unit = match w {
                    1 => 1,
                    3 => -5,
                    5 => 5,
                    7 => -1,
                    _ => unreachable!("2-adic unit residue is odd"),
                };
                if v.rem_euclid(2) == 1 {
                    2 * unit
                } else {
                    unit
                }
            }
            Place::Padic(p) => {
                let (v, w) = unit_residue(x, p, 1);
                let unit = if legendre(w, p) == 1 {
                    1
                } else {
                    least_nonresidue(p) as i64
                };
                if v.rem_euclid(2) == 1 {
                    unit * p as i64
                } else {
                    unit
                }
            }
        };
        Ok(SquareClass { place: self, rep })
    }

    /// Hilbert symbol `(a, b)_v` from the closed-form formulas.
    pub fn hilbert(self, a: &Rational, b: &Rational) -> Result<i8> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::Zero("hilbert_symbol"));
        }
        Ok(match self {
            Place::Real => {
                if a.is_negative() && b.is_negative() {
                    -1
                } else {
                    1
                }
            }
            Place::Padic(2) => {
                let (al, u) = unit_residue(a, 2, 3);
                let (be, v) = unit_residue(b, 2, 3);
                let eps = |x: u64| (x - 1) / 2 % 2;
                let omega = |x: u64| (x * x - 1) / 8 % 2;
                let e = eps(u) * eps(v)
                    + al.rem_euclid(2) as u64 * omega(v)
                    + be.rem_euclid(2) as u64 * omega(u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            Place::Padic(p) => {
                let (al, u) = unit_residue(a, p, 1);
                let (be, v) = unit_residue(b, p, 1);
                let (al, be) = (al.rem_euclid(2), be.rem_euclid(2));
                let mut s: i8 = if al * be * ((p as i64 - 1) / 2) % 2 == 1 {
                    -1
                } else {
                    1
                };
                if be == 1 {
                    s *= legendre(u, p);
                }
                if al == 1 {
                    s *= legendre(v, p);
                }
                s
            }
        })
    }

    /// Hilbert symbol by exhaustive search for a primitive solution of
    /// `z^2 = a x^2 + b y^2` modulo `p^K` after reducing `a`, `b` to their
    /// square-class representatives. Independent of [`Place::hilbert`].
    pub fn hilbert_oracle(self, a: &Rational, b: &Rational) -> Result<i8> {
        let p = self.require_padic("hilbert_symbol_oracle")?;
        let ra = self.square_class(a)?.rep;
        let rb = self.square_class(b)?.rep;
        let depth = if p == 2 {
            ORACLE_DEPTH_TWO
        } else {
            ORACLE_DEPTH_ODD
        };
        let m = pow_u64(p, depth).unwrap() as i64;
        // bit 0: r is a square, bit 1: r is the square of a unit
        let mut squares = vec![0u8; m as usize];
        for z in 0..m {
            let r = (z * z % m) as usize;
            squares[r] |= 1;
            if z % p as i64 != 0 {
                squares[r] |= 2;
            }
        }
        let ca = ra.rem_euclid(m);
        let cb = rb.rem_euclid(m);
        let pi = p as i64;
        for x in 0..m {
            let ax = ca * (x * x % m) % m;
            for y in 0..m {
                let r = ((ax + cb * (y * y % m)) % m) as usize;
                let need = if x % pi != 0 || y % pi != 0 { 1 } else { 2 };
                if squares[r] & need != 0 {
                    return Ok(1);
                }
            }
        }
        Ok(-1)
    }

    /// The p-adic fractional part `{x}_p`: the rational `r` in `[0,1)` with
    /// p-power denominator and `x - r` in `Z_p`.
    pub fn frac_part(self, x: &Rational) -> Result<Rational> {
        let p = self.require_padic("frac_part")?;
        Ok(padic_frac(x, p))
    }
}

pub(crate) fn padic_frac(x: &Rational, p: u64) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let v = padic_valuation(x, p);
    if v >= 0 {
        return Rational::zero();
    }
    let e = (-v) as u32;
    let pe = BigInt::from(p).pow(e);
    // x * p^e is a p-adic unit n/d; reduce it modulo p^e
    let scaled = x * Rational::from_integer(pe.clone());
    let d = scaled.denom().mod_floor(&pe);
    let inv = d.modinv(&pe).expect("denominator is prime to p");
    let w = (scaled.numer() * inv).mod_floor(&pe);
    Rational::new(w, pe)
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Padic(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("real") {
            return Ok(Place::Real);
        }
        let digits = t
            .strip_prefix("p:")
            .ok_or_else(|| Error::parse("place", format!("{t:?}: expected \"real\" or \"p:<prime>\"")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::parse("place", format!("{t:?}: bad prime")))?;
        if !is_prime(p) {
            return Err(Error::parse("place", format!("{t:?}: {p} is not prime")));
        }
        Ok(Place::Padic(p))
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for rationals as `"n/d"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&format_rational(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

/// An element of `E*/(E*)^2`, stored as its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SquareClass {
    pub place: Place,
    pub rep: i64,
}

impl SquareClass {
    pub fn one(place: Place) -> Self {
        SquareClass { place, rep: 1 }
    }

    pub fn rational(&self) -> Rational {
        int(self.rep)
    }

    pub fn is_trivial(&self) -> bool {
        self.rep == 1
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        debug_assert_eq!(self.place, other.place);
        self.place
            .square_class(&int(self.rep * other.rep))
            .expect("product of representatives is nonzero")
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// A rational scalar read in the completion at `place`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalScalar {
    #[serde(with = "rational_str")]
    pub value: Rational,
    pub place: Place,
}

impl LocalScalar {
    pub fn new(value: Rational, place: Place) -> Self {
        LocalScalar { value, place }
    }

    pub fn valuation(&self) -> Result<i64> {
        self.place.valuation(&self.value)
    }

    pub fn square_class(&self) -> Result<SquareClass> {
        self.place.square_class(&self.value)
    }

    pub fn hilbert(&self, other: &LocalScalar) -> Result<i8> {
        self.place.same(other.place)?;
        self.place.hilbert(&self.value, &other.value)
    }

    pub fn hilbert_oracle(&self, other: &LocalScalar) -> Result<i8> {
        self.place.same(other.place)?;
        self.place.hilbert_oracle(&self.value, &other.value)
    }

    pub fn frac_part(&self) -> Result<Rational> {
        self.place.frac_part(&self.value)
    }
}

pub fn valuation(x: &LocalScalar) -> Result<i64> {
    x.valuation()
}

pub fn square_class(x: &LocalScalar) -> Result<SquareClass> {
    x.square_class()
}

pub fn hilbert_symbol(a: &LocalScalar, b: &LocalScalar) -> Result<i8> {
    a.hilbert(b)
}

pub fn hilbert_symbol_oracle(a: &LocalScalar, b: &LocalScalar) -> Result<i8> {
    a.hilbert_oracle(b)
}

pub fn frac_part(x: &LocalScalar) -> Result<Rational> {
    x.frac_part()
}

/// Sign of the exponent in `psi(x) = exp(sign * 2 pi i * ...)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Convention {
    pub fn sign(self) -> f64 {
        match self {
            Convention::Plus => 1.0,
            Convention::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Convention::Plus => Convention::Minus,
            Convention::Minus => Convention::Plus,
        }
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" => Ok(Convention::Plus),
            "-" | "minus" => Ok(Convention::Minus),
            other => Err(Error::parse("convention", format!("{other:?}: expected + or -"))),
        }
    }
}

/// `exp(sign * 2 pi i * num/den)` with the angle reduced exactly first.
pub(crate) fn root_of_unity(num: i128, den: u128, conv: Convention) -> Complex64 {
    let r = num.rem_euclid(den as i128) as f64 / den as f64;
    Complex64::from_polar(1.0, conv.sign() * std::f64::consts::TAU * r)
}

/// The standard additive character at a place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveCharacter {
    pub place: Place,
    pub convention: Convention,
}

impl AdditiveCharacter {
    pub fn new(place: Place) -> Self {
        AdditiveCharacter {
            place,
            convention: Convention::Plus,
        }
    }

    pub fn with_convention(place: Place, convention: Convention) -> Self {
        AdditiveCharacter { place, convention }
    }

    pub fn eval(&self, x: &Rational) -> Complex64 {
        let r = match self.place {
            Place::Padic(p) => padic_frac(x, p),
            Place::Real => x - x.floor(),
        };
        let (n, d) = (r.numer(), r.denom());
        match (n.to_i128(), d.to_u128()) {
            (Some(n), Some(d)) => root_of_unity(n, d, self.convention),
            _ => {
                let f = r.to_f64().unwrap_or(0.0);
                Complex64::from_polar(1.0, self.convention.sign() * std::f64::consts::TAU * f)
            }
        }
    }
}

pub fn character_eval(x: &LocalScalar, psi: &AdditiveCharacter) -> Result<Complex64> {
    x.place.same(psi.place)?;
    Ok(psi.eval(&x.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64) -> Place {
        Place::padic(p).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(q(5).valuation(&int(50)).unwrap(), 2);
        assert_eq!(q(7).valuation(&rat(1, 7)).unwrap(), -1);
        assert_eq!(q(2).valuation(&rat(9, 4)).unwrap(), -2);
        assert_eq!(q(3).valuation(&int(0)), Err(Error::Zero("valuation")));
        assert!(matches!(Place::Real.valuation(&int(3)), Err(Error::NotPadic { .. })));
    }

    #[test]
    fn square_class_examples() {
        assert_eq!(Place::Real.square_class(&int(9)).unwrap().rep, 1);
        // 2 is a non-residue mod 5 and the least one
        assert_eq!(q(5).square_class(&int(50)).unwrap().rep, 2);
        assert_eq!(q(2).square_class(&int(-4)).unwrap().rep, -1);
        assert_eq!(q(2).square_class(&int(3)).unwrap().rep, -5);
        assert_eq!(q(7).square_class(&rat(3, 7)).unwrap().rep, 21);
        assert!(q(7).square_class(&int(0)).is_err());
    }

    #[test]
    fn reps_are_fixed_points() {
        for place in [Place::Real, q(2), q(3), q(5), q(13)] {
            for r in place.square_class_reps() {
                assert_eq!(place.square_class(&int(r)).unwrap().rep, r);
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(Place::Real.hilbert(&int(-1), &int(-1)).unwrap(), -1);
        for place in [Place::Real, q(2), q(7)] {
            assert_eq!(place.hilbert(&int(1), &int(-3)).unwrap(), 1);
        }
        // (7,7)_7 = (7,-1)_7 = (-1|7) = -1 since 7 = 3 mod 4
        assert_eq!(q(7).hilbert(&int(7), &int(7)).unwrap(), -1);
        assert_eq!(q(7).hilbert_oracle(&int(7), &int(7)).unwrap(), -1);
        assert_eq!(q(2).hilbert(&int(-1), &int(-1)).unwrap(), -1);
        assert_eq!(q(2).hilbert_oracle(&int(-1), &int(-1)).unwrap(), -1);
        assert_eq!(q(5).hilbert(&int(0), &int(1)), Err(Error::Zero("hilbert_symbol")));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(q(5).hilbert_oracle(&int(1), &int(1)).unwrap(), 1);
        for p in [3u64, 5, 7, 11] {
            let u = least_nonresidue(p) as i64;
            assert_eq!(q(p).hilbert_oracle(&int(u), &int(p as i64)).unwrap(), -1);
        }
        // (2,5)_2: 5 = 5 mod 8 so omega(5) = 1 and the symbol is -1
        assert_eq!(q(2).hilbert_oracle(&int(2), &int(5)).unwrap(), -1);
        assert_eq!(q(2).hilbert(&int(2), &int(5)).unwrap(), -1);
    }

    #[test]
    fn frac_part_examples() {
        assert_eq!(q(7).frac_part(&rat(15, 7)).unwrap(), rat(1, 7));
        assert_eq!(q(5).frac_part(&int(3)).unwrap(), int(0));
        assert_eq!(q(2).frac_part(&rat(7, 4)).unwrap(), rat(3, 4));
        assert_eq!(q(3).frac_part(&rat(1, 18)).unwrap(), rat(5, 9));
    }

    #[test]
    fn character_examples() {
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-14;
        let psi2 = AdditiveCharacter::new(q(2));
        assert!(close(psi2.eval(&rat(1, 2)), Complex64::new(-1.0, 0.0)));
        let psi5 = AdditiveCharacter::new(q(5));
        assert!(close(psi5.eval(&int(3)), Complex64::new(1.0, 0.0)));
        let z = Complex64::from_polar(1.0, std::f64::consts::TAU / 5.0);
        assert!(close(psi5.eval(&rat(1, 5)), z));
        let psi5m = AdditiveCharacter::with_convention(q(5), Convention::Minus);
        assert!(close(psi5m.eval(&rat(1, 5)), z.conj()));
        let real = AdditiveCharacter::new(Place::Real);
        assert!(close(real.eval(&rat(1, 4)), Complex64::new(0.0, 1.0)));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!("p:7".parse::<Place>().unwrap(), Place::Padic(7));
        assert_eq!("real".parse::<Place>().unwrap(), Place::Real);
        assert!("p:0".parse::<Place>().is_err());
        assert!("p:9".parse::<Place>().is_err());
        assert!(Place::padic(1).is_err());
    }
}
