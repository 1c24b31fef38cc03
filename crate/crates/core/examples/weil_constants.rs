//! Weil constants from stabilized Gauss sums, and the Fourier identity for
//! the character of a quadratic form checked on ball indicators.

use hasse_witt::field::{int, rat};
use hasse_witt::weil::{gamma_form, gamma_matches_epsilon, gamma_rank1_traced, verify_weil_equation, BallIndicator, SumMode};
use hasse_witt::{AdditiveCharacter, Place, QuadraticForm};

fn main() {
    for place in [Place::Real, Place::Padic(2), Place::Padic(3), Place::Padic(5), Place::Padic(7)] {
        let psi = AdditiveCharacter::new(place);
        print!("{place:>5}:");
        for a in [int(1), int(-1), int(2), int(3), int(5), rat(1, 7)] {
            let g = gamma_form(&QuadraticForm::new(place, vec![a.clone()]).unwrap(), &psi).unwrap();
            print!("  γ<{a}> = ζ8^{}", g.eighth_root_index);
        }
        println!();
    }

    let psi = AdditiveCharacter::new(Place::Padic(3));
    let (g, trace) = gamma_rank1_traced(&int(2), &psi).unwrap();
    println!("\nGauss sums for <2> over Q_3 by level m:");
    for (m, [re, im]) in &trace.levels {
        println!("  m={m}  {re:+.12} {im:+.12}i");
    }
    println!("stabilized at m = {}, index {}", g.stabilized_at, g.eighth_root_index);

    let place = Place::Padic(7);
    let psi = AdditiveCharacter::new(place);
    let q = QuadraticForm::new(place, vec![int(1), int(1)]).unwrap();
    let q2 = QuadraticForm::new(place, vec![int(7), rat(1, 7)]).unwrap();
    let chk = gamma_matches_epsilon(&q, &q2, &psi).unwrap();
    println!("\nγ({q})/γ({q2}) = {:.6}, relative Hasse sign {:+}", chk.gamma_ratio, chk.epsilon);

    let place = Place::Padic(5);
    let psi = AdditiveCharacter::new(place);
    let q = QuadraticForm::new(place, vec![int(2), rat(1, 5)]).unwrap();
    for m in 1..=3 {
        for center in [vec![int(0), int(0)], vec![rat(1, 5), rat(2, 25)]] {
            let ball = BallIndicator { center: center.clone(), radius_exp: m };
            let c = verify_weil_equation(&q, &ball, &psi, SumMode::Product).unwrap();
            println!("{q} m={m} center ({}, {}): residual {:.2e}", center[0], center[1], c.residual);
        }
    }
}
