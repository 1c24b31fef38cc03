//! The one-dimensional functional equation over `R`: adaptive Gauss-Kronrod
//! quadrature of Mellin-type pairings on a Gaussian family closed under the
//! Fourier transform.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Convention, Place};
use crate::json::complex_pair;
use crate::shintani::gamma_matrix;
use crate::tate::{ratio_of, FeRow, FunctionalEquationReport, MultiplicativeCharacter};

/// Relative tolerance requested from the quadrature.
pub const QUAD_TOL: f64 = 1e-11;

/// Subinterval cap before the quadrature gives up.
pub const MAX_INTERVALS: usize = 4000;

/// Gaussians `e^{-pi x^2}` are below `1e-60` this far from their center.
const GAUSS_REACH: f64 = 7.0;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// `(Kronrod estimate, |Kronrod - Gauss|)` on `[a, b]`.
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += s * WGK[i];
        if i % 2 == 1 {
            g += s * WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

#[derive(Clone, Debug, Serialize)]
pub struct Quadrature {
    #[serde(serialize_with = "complex_pair")]
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

/// Globally adaptive quadrature: bisect the interval with the largest error
/// estimate until the total falls below `max(abs_tol, rel_tol |I|)`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<Quadrature> {
    let mut parts: Vec<(f64, f64, Complex64, f64)> = Vec::new();
    let pieces = 8;
    for i in 0..pieces {
        let lo = a + (b - a) * i as f64 / pieces as f64;
        let hi = a + (b - a) * (i + 1) as f64 / pieces as f64;
        let (v, e) = gk15(&f, lo, hi);
        parts.push((lo, hi, v, e));
    }
    loop {
        let value: Complex64 = parts.iter().map(|p| p.2).sum();
        let error: f64 = parts.iter().map(|p| p.3).sum();
        if !value.is_finite() {
            return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
        }
        if error <= abs_tol.max(rel_tol * value.norm()) {
            return Ok(Quadrature {
                value,
                error,
                intervals: parts.len(),
            });
        }
        if parts.len() >= MAX_INTERVALS {
            let worst = parts.iter().max_by(|x, y| x.3.total_cmp(&y.3)).unwrap();
            return Err(Error::Quadrature(format!(
                "{} intervals on [{a}, {b}], error estimate {error:.3e}, worst [{}, {}] with {:.3e}",
                parts.len(),
                worst.0,
                worst.1,
                worst.3
            )));
        }
        let (idx, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, _, _) = parts.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// `∫_0^{x_max} x^s g(x) dx` through `x = e^u`, split at `x = 1`.
///
/// The lower cut-off is where `e^{(Re s + 1) u}` drops below `1e-18`.
pub fn mellin_half_line<G: Fn(f64) -> Complex64>(g: G, s: Complex64, x_max: f64) -> Result<Complex64> {
    let sigma = s.re + 1.0;
    if sigma <= 0.0 {
        return Err(Error::Divergent(format!("Re(s) = {} <= -1 at the origin", s.re)));
    }
    let u_lo = (1e-18f64).ln() / sigma;
    let u_hi = x_max.ln();
    let h = |u: f64| ((s + 1.0) * u).exp() * g(u.exp());
    let abs_tol = 1e-15;
    let mut total = integrate(h, u_lo, u_hi.min(0.0), QUAD_TOL, abs_tol)?.value;
    if u_hi > 0.0 {
        total += integrate(h, 0.0, u_hi, QUAD_TOL, abs_tol)?.value;
    }
    Ok(total)
}

/// `g_k(x - a) e^{2 pi i b x}` with `g_k(x) = x^k e^{-pi x^2}`, `k <= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModulatedGaussian {
    pub degree: u8,
    pub shift: f64,
    pub modulation: f64,
}

impl fmt::Display for ModulatedGaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}(x-{})e(b={})", self.degree, self.shift, self.modulation)
    }
}

fn base(k: u8, x: f64) -> f64 {
    (-PI * x * x).exp() * x.powi(k as i32)
}

/// Fourier transform of `g_k` under `e^{2 pi i x y}`.
fn base_hat(k: u8, y: f64) -> Complex64 {
    let e = (-PI * y * y).exp();
    match k {
        0 => Complex64::new(e, 0.0),
        1 => Complex64::new(0.0, y * e),
        _ => Complex64::new((1.0 / (2.0 * PI) - y * y) * e, 0.0),
    }
}

impl ModulatedGaussian {
    pub fn new(degree: u8, shift: f64, modulation: f64) -> Result<Self> {
        if degree > 2 {
            return Err(Error::Precondition(format!("degree {degree} > 2")));
        }
        Ok(ModulatedGaussian {
            degree,
            shift,
            modulation,
        })
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let phase = Complex64::new(0.0, 2.0 * PI * self.modulation * x).exp();
        phase * base(self.degree, x - self.shift)
    }

    /// `∫ f(x) psi(xy) dx` in closed form:
    /// `e^{2 pi i a (y + b)} ghat(y + b)` for the `+` kernel.
    pub fn fourier(&self, y: f64, conv: Convention) -> Complex64 {
        let y = conv.sign() * y;
        let z = y + self.modulation;
        Complex64::new(0.0, 2.0 * PI * self.shift * z).exp() * base_hat(self.degree, z)
    }

    fn reach(&self) -> f64 {
        self.shift.abs() + GAUSS_REACH
    }

    fn hat_reach(&self) -> f64 {
        self.modulation.abs() + GAUSS_REACH
    }
}

/// The default real family; the odd member is expected to be excluded.
pub fn default_family() -> Vec<ModulatedGaussian> {
    [
        (0, 0.0, 0.0),
        (0, 0.5, 0.0),
        (0, 0.0, 0.3),
        (2, 0.0, 0.0),
        (2, 0.2, -0.4),
        (1, 0.7, 0.25),
        (1, 0.0, 0.0),
    ]
    .into_iter()
    .map(|(k, a, b)| ModulatedGaussian::new(k, a, b).unwrap())
    .collect()
}

/// `(∫_{x<0} |x|^s h, ∫_{x>0} |x|^s h)`.
fn half_lines<H: Fn(f64) -> Complex64>(h: H, s: Complex64, reach: f64) -> Result<(Complex64, Complex64)> {
    let neg = mellin_half_line(|x| h(-x), s, reach)?;
    let pos = mellin_half_line(&h, s, reach)?;
    Ok((neg, pos))
}

fn require_strip(s: f64) -> Result<()> {
    if s > -1.0 && s < 0.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("s = {s} is outside the strip (-1, 0)")))
    }
}

/// `∫ |x|^s F(f)` against `∫ |x|^{-s-1} f` over the family.
pub fn real_tate_check(s: f64, family: &[ModulatedGaussian], conv: Convention) -> Result<FunctionalEquationReport> {
    require_strip(s)?;
    let sc = Complex64::new(s, 0.0);
    let mut rows = Vec::with_capacity(family.len());
    for f in family {
        let (a, b) = half_lines(|y| f.fourier(y, conv), sc, f.hat_reach())?;
        let (c, d) = half_lines(|x| f.eval(x), -sc - 1.0, f.reach())?;
        let (lhs, rhs) = (a + b, c + d);
        rows.push(FeRow {
            label: f.to_string(),
            lhs,
            rhs,
            ratio: ratio_of(lhs, rhs),
        });
    }
    Ok(FunctionalEquationReport::from_rows(
        MultiplicativeCharacter::unramified(sc, Place::Real),
        rows,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaMatrixFit {
    pub s: f64,
    /// Best common scalar `c(s)` in `Phi(F f, s) = c V(s) Phi(f, -s-1)`.
    #[serde(serialize_with = "complex_pair")]
    pub constant: Complex64,
    /// `|L - cR| / |L|` over all stacked rows.
    pub residual: f64,
    pub functions: usize,
}

/// Half-line integrals `Phi_0` (negative axis) and `Phi_1` (positive axis)
/// of `F f` at `s` against `V(s)` applied to those of `f` at `-s-1`, fitted
/// by one scalar.
///
/// The matrix relation is stated for the kernel `e^{+2 pi i xy}`; under the
/// `-` convention `F f` is reflected, which swaps the two half-lines.
pub fn real_gamma_matrix_check(s: f64, family: &[ModulatedGaussian], conv: Convention) -> Result<GammaMatrixFit> {
    require_strip(s)?;
    let sc = Complex64::new(s, 0.0);
    let v = gamma_matrix(1, sc)?.entries;
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for f in family {
        let (mut l0, mut l1) = half_lines(|y| f.fourier(y, conv), sc, f.hat_reach())?;
        if conv == Convention::Minus {
            std::mem::swap(&mut l0, &mut l1);
        }
        let (r0, r1) = half_lines(|x| f.eval(x), -sc - 1.0, f.reach())?;
        lhs.extend([l0, l1]);
        rhs.push(v[0][0] * r0 + v[0][1] * r1);
        rhs.push(v[1][0] * r0 + v[1][1] * r1);
    }
    let num: Complex64 = rhs.iter().zip(&lhs).map(|(r, l)| r.conj() * l).sum();
    let den: f64 = rhs.iter().map(|r| r.norm_sqr()).sum();
    if den == 0.0 {
        return Err(Error::Precondition("every pairing vanishes".into()));
    }
    let c = num / den;
    let err: f64 = rhs.iter().zip(&lhs).map(|(r, l)| (l - c * r).norm_sqr()).sum();
    let norm: f64 = lhs.iter().map(|l| l.norm_sqr()).sum();
    Ok(GammaMatrixFit {
        s,
        constant: c,
        residual: (err / norm).sqrt(),
        functions: family.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::gamma;

    #[test]
    fn quadrature_polynomial_exact() {
        let q = integrate(|x| Complex64::new(x.powi(5) - 2.0 * x, 0.0), 0.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((q.value.re - (64.0 / 6.0 - 4.0)).abs() < 1e-12);
    }

    #[test]
    fn quadrature_failure_names_nodes() {
        let err = integrate(|x| Complex64::new(1.0 / x, 0.0), -1.0, 1.0, 1e-12, 0.0).unwrap_err();
        assert!(matches!(err, Error::Quadrature(_)));
    }

    #[test]
    fn mellin_of_gaussian_matches_gamma() {
        for s in [-0.5, -0.3, -0.9, 0.4] {
            let v = mellin_half_line(|x| Complex64::new((-PI * x * x).exp(), 0.0), Complex64::new(s, 0.0), 7.0)
                .unwrap();
            // ∫_0^∞ x^s e^{-pi x^2} dx = pi^{-(s+1)/2} Gamma((s+1)/2) / 2
            let expected = PI.powf(-(s + 1.0) / 2.0) * gamma((s + 1.0) / 2.0) / 2.0;
            assert!((v.re - expected).abs() < 1e-10 * expected, "s={s}");
        }
    }

    #[test]
    fn fourier_closed_forms_match_numeric() {
        for f in default_family() {
            for y in [-0.7, 0.0, 0.4, 1.3] {
                for conv in [Convention::Plus, Convention::Minus] {
                    let k = Complex64::new(0.0, conv.sign() * 2.0 * PI * y);
                    let num = integrate(
                        |x| f.eval(x) * (k * x).exp(),
                        -f.reach(),
                        f.reach(),
                        1e-13,
                        1e-15,
                    )
                    .unwrap();
                    assert!((num.value - f.fourier(y, conv)).norm() < 1e-11, "{f} y={y}");
                }
            }
        }
    }

    #[test]
    fn real_ratio_constancy_and_value() {
        for s in [-0.5, -0.3, -0.8] {
            let r = real_tate_check(s, &default_family(), Convention::Plus).unwrap();
            assert!(r.max_deviation < 1e-6, "{r:?}");
            assert_eq!(r.warnings.len(), 1);
            // pi^{-s-1/2} Gamma((s+1)/2) / Gamma(-s/2)
            let expected = PI.powf(-s - 0.5) * gamma((s + 1.0) / 2.0) / gamma(-s / 2.0);
            assert!((r.constant.re - expected).abs() < 1e-8 && r.constant.im.abs() < 1e-8);
        }
    }

    #[test]
    fn gamma_matrix_fit() {
        for conv in [Convention::Plus, Convention::Minus] {
            let fit = real_gamma_matrix_check(-0.3, &default_family(), conv).unwrap();
            assert!(fit.residual < 1e-6, "{fit:?}");
        }
    }

    #[test]
    fn strip_enforced() {
        assert!(real_tate_check(0.1, &default_family(), Convention::Plus).is_err());
        assert!(real_gamma_matrix_check(-1.0, &default_family(), Convention::Plus).is_err());
    }
}
