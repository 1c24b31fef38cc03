//! Signs attached to invertible symmetric matrices: the stabilizer trace
//! form, the pair sign against the n-th power of the relative Hasse
//! invariant, orbit labels, and the scaling law.

use hasse_witt::field::{int, rat};
use hasse_witt::symn::{c_constant, epsilon_scaling_check, orbit_labels, signprop_suite, stabilizer_form, verify_signprop};
use hasse_witt::{Place, SquareClass, SymMatrix};

fn main() {
    let place = Place::Padic(7);
    let a = SymMatrix::identity(3);
    let b = SymMatrix::diag(&[int(7), int(7), rat(1, 49)]).unwrap();
    let sb = stabilizer_form(&b, place).unwrap();
    println!("stabilizer form of diag(7,7,1/49): {}  hasse {:+}", sb.form, sb.form.hasse());
    let chk = verify_signprop(&a, &b, place).unwrap();
    println!(
        "pair sign {:+}, relative Hasse {:+}, n = {}: holds {}",
        chk.epsilon_pair, chk.relative_hasse, chk.n, chk.holds
    );

    for place in [Place::Padic(5), Place::Padic(13), Place::Real] {
        for n in [3, 5] {
            let s = signprop_suite(n, place);
            println!("{place:>5} n={n}: {} matrices, {} pairs, {} failures", s.matrices, s.pairs, s.failures);
        }
        let c = c_constant(3, SquareClass::one(place), place);
        println!("{place:>5} c(3, det 1) = {:?}, well defined {}", c.value, c.well_defined);
    }

    for place in [Place::Padic(2), Place::Padic(3), Place::Real] {
        for d in place.square_class_reps() {
            let labels = orbit_labels(3, SquareClass { place, rep: d }, place);
            println!("{place:>5} n=3 det {d:>3}: {} orbits {labels:?}", labels.len());
        }
    }

    let a = SymMatrix::new(vec![
        vec![int(2), int(1), int(0)],
        vec![int(1), int(3), int(5)],
        vec![int(0), int(5), rat(1, 3)],
    ])
    .unwrap();
    for t in [int(-1), int(3), rat(-5, 2)] {
        let c = epsilon_scaling_check(&a, &t, Place::Padic(3)).unwrap();
        println!(
            "t = {t}: hasse(tq) {:+}  predicted {:+}  invariant {:+} -> {:+}",
            c.scaled, c.predicted, c.invariant_before, c.invariant_after
        );
    }
}
