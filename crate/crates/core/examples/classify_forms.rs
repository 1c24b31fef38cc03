//! Diagonalize a symmetric matrix, read off its invariants at several
//! places and decide equivalence with a diagonal form.

use hasse_witt::field::{int, rat};
use hasse_witt::forms::{diagonalize, equivalent, witt_filtration_level};
use hasse_witt::{Place, QuadraticForm, SymMatrix};

fn main() {
    let a = SymMatrix::new(vec![
        vec![int(0), int(1), int(2)],
        vec![int(1), int(0), int(0)],
        vec![int(2), int(0), rat(3, 7)],
    ])
    .unwrap();
    println!("det A = {}", a.det());

    for place in [Place::Real, Place::Padic(2), Place::Padic(3), Place::Padic(7)] {
        let (q, radical) = diagonalize(&a, place);
        let inv = q.invariants();
        println!(
            "{q}  radical {radical}  det class {}  hasse {:+}{}",
            inv.det_class,
            inv.hasse,
            inv.signature.map(|(p, n)| format!("  signature ({p},{n})")).unwrap_or_default()
        );
    }

    let place = Place::Padic(7);
    let q = QuadraticForm::new(place, vec![int(1), int(1)]).unwrap();
    let q2 = QuadraticForm::new(place, vec![int(2), rat(1, 2)]).unwrap();
    let q3 = QuadraticForm::new(place, vec![int(7), rat(1, 7)]).unwrap();
    println!("\n{q} ~ {q2}: {}", equivalent(&q, &q2).unwrap());
    println!("{q} ~ {q3}: {}", equivalent(&q, &q3).unwrap());
    println!("filtration level of ({q}) - ({q3}): {:?}", witt_filtration_level(&q, &q3).unwrap());
}
