//! Monte-Carlo probe of the functional equation for |det|^s on Sym_3(Q_p).
//! Pass the sample count as the first argument (default 100000).

use hasse_witt::mc::{default_cosets, padic_sym3_mc_check, McConfig};

fn main() {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let cfg = McConfig::new(3, 0.5, 42, samples);
    let rep = padic_sym3_mc_check(&cfg, &default_cosets(3)).unwrap();
    for row in &rep.rows {
        println!(
            "{:<20} lhs {:.5} ± {:.1e}  rhs {:.5} ± {:.1e}  ratio {:.4} ± {:.1e}",
            row.label, row.lhs, row.lhs_sigma, row.rhs, row.rhs_sigma, row.ratio, row.ratio_sigma
        );
    }
    println!("separation {:.2} sigma, agrees {}", rep.separation, rep.agrees);
}
