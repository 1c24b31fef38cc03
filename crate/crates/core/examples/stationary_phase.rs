//! Exact p-adic oscillatory integrals of polynomial phases next to the
//! stationary-phase prediction built from Hensel-lifted critical points.

use hasse_witt::stationary::{compare, critical_points, PhasePolynomial};
use hasse_witt::Convention;

fn main() {
    // a non-separable phase costs a full 2-d grid, so it stops at m = 1
    let runs: [(&str, u64, &[u32]); 5] = [
        ("x^3-3*x", 7, &[1, 2, 3]),
        ("x^3-3*x", 13, &[1, 2, 3]),
        ("x^2+y^2", 5, &[1, 2, 3]),
        ("x^2+x*y+y^3-y", 5, &[1]),
        ("x^2+x*y+y^3-y", 11, &[1]),
    ];
    for (src, p, ms) in runs {
        let f = PhasePolynomial::parse(src, p).unwrap();
        println!("f = {src} over Q_{p}");
        for c in critical_points(&f, 4).unwrap() {
            println!("  critical point {:?} (mod {p}^4), hessian {}", c.point, c.hessian_form);
        }
        let report = compare(&f, ms, 1e-10, Convention::Plus).unwrap();
        for row in &report.rows {
            println!(
                "  |t| = {p}^{}: exact {:.12}  predicted {:.12}  diff {:.1e}",
                2 * row.m,
                row.exact,
                row.prediction,
                row.difference
            );
        }
    }

    match PhasePolynomial::parse("x^3", 5).and_then(|f| critical_points(&f, 3)) {
        Ok(_) => println!("x^3 unexpectedly non-degenerate"),
        Err(e) => println!("x^3 over Q_5: {e}"),
    }
}
