//! The real Γ-matrix of Sym_n(R), its column sums against the cosine and
//! sine product formulas, and the normalized sign vectors.

use hasse_witt::shintani::{c_sign_vector, c_prime_sign_vector, check_sign_vectors, gamma_matrix};
use num_complex::Complex64;

fn main() {
    let s = Complex64::new(0.3, 0.0);
    let g = gamma_matrix(3, s).unwrap();
    println!("Γ-matrix, n = 3, s = 0.3:");
    for row in &g.entries {
        let cells: Vec<String> = row.iter().map(|z| format!("{:>9.4}{:+.4}i", z.re, z.im)).collect();
        println!("  {}", cells.join("  "));
    }

    for n in [1, 3, 5, 7, 9] {
        let chk = check_sign_vectors(n, s).unwrap();
        println!(
            "n = {n}: c signs {:?}  c' signs {:?}  closed form error {:.1e}  holds {}",
            c_sign_vector(n),
            c_prime_sign_vector(n),
            chk.closed_form_error,
            chk.holds
        );
    }
}
