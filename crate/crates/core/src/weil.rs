//! Weil constants `gamma(q, psi)`.
//!
//! At the real place the rank-one constant is `exp(sign(a) * pi i / 4)`. At a
//! p-adic place it is read off stabilized quadratic Gauss sums: the integral
//! `∫_{p^{-m} Z_p} psi(a x^2) dx` is constant for large `m` and equals
//! `gamma(a) * |2a|^{-1/2}`.
//!
//! Throughout, `det(q)` in the functional equation is the determinant of the
//! polar bilinear form, so `|det <a_1..a_n>| = prod |2 a_i|`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{int, padic_valuation, pow_p, AdditiveCharacter, Convention, Place, Rational};
use crate::forms::{equalize_ranks, relative_hasse, witt_filtration_level, FiltrationLevel, QuadraticForm};
use crate::kernel::{
    quadratic_phase_integral_grid, quadratic_phase_integral_product, QuadraticPhase,
};

/// Consecutive Gauss-sum levels that must agree.
pub const STABILIZATION_WINDOW: u32 = 3;
pub const STABILIZATION_TOL: f64 = 1e-10;
/// Highest truncation level tried before giving up.
pub const MAX_LEVEL: u32 = 6;
/// Allowed distance from the nearest 8th root of unity.
pub const SNAP_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct WeilConstant {
    #[serde(serialize_with = "crate::json::complex_pair")]
    pub value: Complex64,
    /// `value ≈ exp(2 pi i * index / 8)`.
    pub eighth_root_index: u8,
    /// First level `m` of the stabilization window (0 at the real place).
    pub stabilized_at: u32,
    pub place: Place,
    pub convention: Convention,
}

impl WeilConstant {
    fn snapped(value: Complex64, stabilized_at: u32, psi: &AdditiveCharacter) -> Result<Self> {
        let index = (value.arg() / (PI / 4.0)).round().rem_euclid(8.0) as u8;
        if (value - eighth_root(index)).norm() > SNAP_TOL {
            return Err(Error::NoStabilization(format!(
                "value {value} is not an 8th root of unity"
            )));
        }
        Ok(WeilConstant {
            value,
            eighth_root_index: index,
            stabilized_at,
            place: psi.place,
            convention: psi.convention,
        })
    }

    pub fn exact(&self) -> Complex64 {
        eighth_root(self.eighth_root_index)
    }
}

pub fn eighth_root(index: u8) -> Complex64 {
    Complex64::from_polar(1.0, PI / 4.0 * (index % 8) as f64)
}

/// `∫_{p^{-m} Z_p} psi(a x^2) dx` as an exact finite sum.
pub fn ball_gauss_integral(a: &Rational, p: u64, m: u32, conv: Convention) -> Result<Complex64> {
    let pm = Rational::from_integer(BigInt::from(p).pow(m));
    let phase = QuadraticPhase {
        alpha: a / (&pm * &pm),
        beta: Rational::zero(),
    };
    let v = quadratic_phase_integral_grid(p, &[phase], conv)?;
    Ok(v * (p as f64).powi(m as i32))
}

/// Per-level values of the stabilization search, kept for diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizationTrace {
    pub levels: Vec<(u32, [f64; 2])>,
}

pub fn gamma_rank1(a: &Rational, psi: &AdditiveCharacter) -> Result<WeilConstant> {
    gamma_rank1_traced(a, psi).map(|(g, _)| g)
}

pub fn gamma_rank1_traced(a: &Rational, psi: &AdditiveCharacter) -> Result<(WeilConstant, StabilizationTrace)> {
    if a.is_zero() {
        return Err(Error::Zero("gamma_rank1"));
    }
    let conv = psi.convention;
    let p = match psi.place {
        Place::Real => {
            let s = if a.is_negative() { -1.0 } else { 1.0 };
            let v = Complex64::from_polar(1.0, s * conv.sign() * PI / 4.0);
            return Ok((WeilConstant::snapped(v, 0, psi)?, StabilizationTrace { levels: vec![] }));
        }
        Place::Padic(p) => p,
    };
    // x -> p^k x turns a into a p^{-2k}; the Weil constant is unchanged
    let k = padic_valuation(a, p).div_euclid(2);
    let a = a * pow_p(p, -2 * k);
    let two_a_abs = Place::Padic(p).abs(&(int(2) * &a));

    let mut trace = StabilizationTrace { levels: vec![] };
    let mut values: Vec<Complex64> = Vec::new();
    for m in 1..=MAX_LEVEL {
        let v = match ball_gauss_integral(&a, p, m, conv) {
            Ok(v) => v,
            Err(Error::Budget { terms, budget }) => {
                return Err(Error::NoStabilization(format!(
                    "budget exhausted at level {m} ({terms} > {budget}); trace {:?}",
                    trace.levels
                )))
            }
            Err(e) => return Err(e),
        };
        trace.levels.push((m, [v.re, v.im]));
        values.push(v);
        let w = STABILIZATION_WINDOW as usize;
        if values.len() >= w {
            let tail = &values[values.len() - w..];
            if tail.windows(2).all(|p| (p[0] - p[1]).norm() < STABILIZATION_TOL) {
                let start = m + 1 - STABILIZATION_WINDOW;
                let gamma = v * two_a_abs.sqrt();
                return Ok((WeilConstant::snapped(gamma, start, psi)?, trace));
            }
        }
    }
    Err(Error::NoStabilization(format!(
        "Gauss sums for a = {a} over Q_{p} did not stabilize by level {MAX_LEVEL}; trace {:?}",
        trace.levels
    )))
}

/// Product of the rank-one constants.
pub fn gamma_form(q: &QuadraticForm, psi: &AdditiveCharacter) -> Result<WeilConstant> {
    q.place.same(psi.place)?;
    let mut value = Complex64::one();
    let mut index = 0u8;
    let mut stabilized_at = 0;
    for a in q.coeffs() {
        let g = gamma_rank1(a, psi)?;
        value *= g.value;
        index = (index + g.eighth_root_index) % 8;
        stabilized_at = stabilized_at.max(g.stabilized_at);
    }
    let mut g = WeilConstant::snapped(value, stabilized_at, psi)?;
    debug_assert_eq!(g.eighth_root_index, index);
    g.eighth_root_index = index;
    Ok(g)
}

/// `|det q|^{-1/2}` with the polar-form determinant `prod 2 a_i`.
pub fn det_factor(q: &QuadraticForm) -> f64 {
    q.coeffs()
        .iter()
        .map(|a| q.place.abs(&(int(2) * a)).powf(-0.5))
        .product()
}

/// A ball `center + p^{-m} Z_p^n`.
#[derive(Clone, Debug, Serialize)]
pub struct BallIndicator {
    #[serde(with = "crate::field::rational_str::vec")]
    pub center: Vec<Rational>,
    pub radius_exp: i64,
}

impl BallIndicator {
    pub fn centered(n: usize, radius_exp: i64) -> Self {
        BallIndicator {
            center: vec![Rational::zero(); n],
            radius_exp,
        }
    }
}

/// How the n-dimensional finite sums are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMode {
    /// Brute force over the whole grid.
    Grid,
    /// Product of one-dimensional sums (the phases are separable).
    Product,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilEquationCheck {
    #[serde(serialize_with = "crate::json::complex_pair")]
    pub lhs: Complex64,
    #[serde(serialize_with = "crate::json::complex_pair")]
    pub rhs: Complex64,
    pub gamma: WeilConstant,
    pub residual: f64,
}

/// Pairs both sides of `F(psi(q)) = gamma(q) |det q|^{-1/2} psi(-q^dual)`
/// with the indicator of a ball and evaluates them as exact finite sums.
pub fn verify_weil_equation(
    q: &QuadraticForm,
    ball: &BallIndicator,
    psi: &AdditiveCharacter,
    mode: SumMode,
) -> Result<WeilEquationCheck> {
    let p = q.place.require_padic("verify_weil_equation")?;
    q.place.same(psi.place)?;
    let n = q.rank();
    if n == 0 || n > 2 {
        return Err(Error::Precondition(format!("rank must be 1 or 2, got {n}")));
    }
    if ball.center.len() != n {
        return Err(Error::Precondition("ball dimension differs from form rank".into()));
    }
    let conv = psi.convention;
    let m = ball.radius_exp;
    let integrate = |phases: &[QuadraticPhase]| match mode {
        SumMode::Grid => quadratic_phase_integral_grid(p, phases, conv),
        SumMode::Product => quadratic_phase_integral_product(p, phases, conv),
    };

    // LHS: ∫_{c + p^{-m}Z_p^n} psi(q(x)) dx with x = c + p^{-m} z
    let pm = pow_p(p, -m);
    let mut lhs_const = Complex64::one();
    let lhs_phases: Vec<QuadraticPhase> = q
        .coeffs()
        .iter()
        .zip(&ball.center)
        .map(|(a, c)| {
            lhs_const *= crate::kernel::psi(p, &(a * c * c), conv);
            QuadraticPhase {
                alpha: a * &pm * &pm,
                beta: int(2) * a * c * &pm,
            }
        })
        .collect();
    let vol = (p as f64).powi((m * n as i64) as i32);
    let lhs = lhs_const * vol * integrate(&lhs_phases)?;

    // RHS: the transform of the ball indicator is vol * psi(c.y) on p^m Z_p^n;
    // with y = p^m w the volumes cancel
    let qm = pow_p(p, m);
    let rhs_phases: Vec<QuadraticPhase> = q
        .coeffs()
        .iter()
        .zip(&ball.center)
        .map(|(a, c)| QuadraticPhase {
            alpha: -(&qm * &qm) / (int(4) * a),
            beta: c * &qm,
        })
        .collect();
    let gamma = gamma_form(q, psi)?;
    let rhs = gamma.value * det_factor(q) * integrate(&rhs_phases)?;
    Ok(WeilEquationCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
        gamma,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaEpsilonCheck {
    #[serde(serialize_with = "crate::json::complex_pair")]
    pub gamma_ratio: Complex64,
    pub epsilon: i8,
    pub matches: bool,
}

/// Compares `gamma(q) / gamma(q')` with `eps(q, q')` when `(q) - (q')` lies in `W^2`.
pub fn gamma_matches_epsilon(
    q: &QuadraticForm,
    q2: &QuadraticForm,
    psi: &AdditiveCharacter,
) -> Result<GammaEpsilonCheck> {
    let level = witt_filtration_level(q, q2)?;
    if !matches!(level, FiltrationLevel::AtLeastTwo { .. }) {
        return Err(Error::FiltrationLevel(level.level()));
    }
    let (a, b) = equalize_ranks(q, q2);
    let ratio = gamma_form(&a, psi)?.value * gamma_form(&b, psi)?.value.conj();
    let epsilon = relative_hasse(&a, &b)?;
    Ok(GammaEpsilonCheck {
        gamma_ratio: ratio,
        epsilon,
        matches: (ratio - Complex64::new(epsilon as f64, 0.0)).norm() < SNAP_TOL,
    })
}
