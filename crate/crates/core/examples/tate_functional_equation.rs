//! The one-dimensional local functional equation: zeta integrals of
//! locally constant test functions and their Fourier transforms have a
//! constant ratio over Q_p, and over R on modulated Gaussians.

use hasse_witt::field::int;
use hasse_witt::real::{default_family, real_gamma_matrix_check, real_tate_check};
use hasse_witt::tate::{default_test_set, tate_check, MultiplicativeCharacter};
use hasse_witt::{Convention, Place};
use num_complex::Complex64;

fn main() {
    let p = 5;
    let place = Place::Padic(p);
    let set = default_test_set(p);
    for (s, d) in [(-0.5, 1), (-0.5, 2), (-0.3, 5), (-0.25, 10)] {
        let chi = MultiplicativeCharacter::new(Complex64::new(s, 0.2), &int(d), place).unwrap();
        let rep = tate_check(&chi, &set, Convention::Plus).unwrap();
        println!("Q_5, s = {s}+0.2i, twist {d}: constant {:.10}  deviation {:.1e}", rep.constant, rep.max_deviation);
        for row in &rep.rows {
            match row.ratio {
                Some(r) => println!("    {:<22} ratio {:.10}", row.label, r),
                None => println!("    {:<22} zero pairing", row.label),
            }
        }
    }

    let family = default_family();
    for s in [-0.7, -0.5, -0.3] {
        let rep = real_tate_check(s, &family, Convention::Plus).unwrap();
        let fit = real_gamma_matrix_check(s, &family, Convention::Plus).unwrap();
        println!(
            "R, s = {s}: constant {:.10}  deviation {:.1e}  Γ-matrix residual {:.1e}",
            rep.constant, rep.max_deviation, fit.residual
        );
    }
}
