//! Run the verification suites in-process and print a one-line summary per
//! suite; `cargo run --release --example verify_suites -- <seed>`.

use hasse_witt::suites::{run_suite, SuiteConfig, DEFAULT_SEED, GATING};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let cfg = SuiteConfig::new(seed);
    let mut all = true;
    for name in GATING {
        let rep = run_suite(name, &cfg).unwrap();
        all &= rep.passed;
        println!("{name:<16} {:>4}/{:<4} {}", rep.counts.passed, rep.counts.total, if rep.passed { "ok" } else { "FAIL" });
        for c in rep.failures().take(3) {
            println!("    {}: expected {} got {}", c.name, c.expected, c.got);
        }
    }
    std::process::exit(if all { 0 } else { 1 });
}
