//! One line per acceptance criterion. Criterion 12 is reported but never
//! fails the run.

use std::process::ExitCode;
use std::time::Instant;

use hasse_witt::suites::{run_suite, SuiteConfig, DEFAULT_SEED};

struct Criterion {
    id: u32,
    suite: &'static str,
    what: &'static str,
    budget_s: Option<f64>,
    gating: bool,
}

const CRITERIA: [Criterion; 12] = [
    Criterion { id: 1, suite: "hilbert", what: "closed-form Hilbert symbol vs solvability oracle", budget_s: Some(60.0), gating: true },
    Criterion { id: 2, suite: "product-formula", what: "Hilbert product formula on random pairs", budget_s: None, gating: true },
    Criterion { id: 3, suite: "equivalence", what: "invariants under unimodular congruence", budget_s: None, gating: true },
    Criterion { id: 4, suite: "weil", what: "Weil constants: 8th roots, homomorphism, pair signs", budget_s: None, gating: true },
    Criterion { id: 5, suite: "weil-eq", what: "Weil equation on ball indicators", budget_s: Some(120.0), gating: true },
    Criterion { id: 6, suite: "stationary", what: "exact oscillatory integrals vs stationary phase", budget_s: None, gating: true },
    Criterion { id: 7, suite: "signprop", what: "pair sign vs relative Hasse sign, exhaustive", budget_s: None, gating: true },
    Criterion { id: 8, suite: "scaling", what: "scaling law and scaled invariant", budget_s: None, gating: true },
    Criterion { id: 9, suite: "orbits", what: "two orbits per odd rank and det class", budget_s: None, gating: true },
    Criterion { id: 10, suite: "shintani", what: "Gamma-matrix constants and sign vectors", budget_s: None, gating: true },
    Criterion { id: 11, suite: "tate", what: "rank-one functional equation", budget_s: None, gating: true },
    Criterion { id: 12, suite: "sym3-mc", what: "Sym_3 Monte-Carlo ratio agreement (stretch)", budget_s: None, gating: false },
];

fn main() -> ExitCode {
    let mut gating_failed = 0;
    for c in &CRITERIA {
        let mut cfg = SuiteConfig::new(DEFAULT_SEED);
        if c.suite == "sym3-mc" {
            cfg.p = Some(3);
            cfg.samples = Some(1_000_000);
        }
        let start = Instant::now();
        let outcome = run_suite(c.suite, &cfg);
        let secs = start.elapsed().as_secs_f64();
        let (ok, detail) = match outcome {
            Ok(rep) => {
                let mut detail = format!("{}/{} cases", rep.counts.passed, rep.counts.total);
                if let Some(first) = rep.failures().next() {
                    detail.push_str(&format!(", first failure {}", first.name));
                }
                (rep.passed, detail)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = c.budget_s.is_none_or(|b| secs < b);
        let pass = ok && in_time;
        let budget = c.budget_s.map(|b| format!(" (limit {b:.0}s)")).unwrap_or_default();
        println!(
            "criterion {:>2}: {} {} [{}; {:.2}s{}]{}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.what,
            detail,
            secs,
            budget,
            if c.gating { "" } else { " non-gating" },
        );
        if !pass && c.gating {
            gating_failed += 1;
        }
    }
    let reference = run_suite("reference", &SuiteConfig::new(DEFAULT_SEED));
    match reference {
        Ok(rep) => {
            println!(
                "fixed worked values: {} [{}/{} cases]",
                if rep.passed { "PASS" } else { "FAIL" },
                rep.counts.passed,
                rep.counts.total
            );
            if !rep.passed {
                gating_failed += 1;
            }
        }
        Err(e) => {
            println!("fixed worked values: FAIL [error: {e}]");
            gating_failed += 1;
        }
    }
    if gating_failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{gating_failed} gating check(s) failed");
        ExitCode::FAILURE
    }
}
