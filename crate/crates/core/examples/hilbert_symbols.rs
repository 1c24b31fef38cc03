//! Hilbert symbol tables over Q_p and R, checked against the exhaustive
//! solvability search, and the product formula for one rational pair.

use hasse_witt::field::{int, parse_rational};
use hasse_witt::Place;

fn table(place: Place) {
    let reps = place.square_class_reps();
    println!("{place}");
    print!("{:>6}", "");
    for b in &reps {
        print!("{b:>5}");
    }
    println!();
    for &a in &reps {
        print!("{a:>6}");
        for &b in &reps {
            let s = place.hilbert(&int(a), &int(b)).unwrap();
            if let Place::Padic(_) = place {
                assert_eq!(s, place.hilbert_oracle(&int(a), &int(b)).unwrap());
            }
            print!("{s:>5}");
        }
        println!();
    }
    println!();
}

fn main() {
    for place in [Place::Real, Place::Padic(3), Place::Padic(2)] {
        table(place);
    }

    let a = parse_rational("-21/10").unwrap();
    let b = parse_rational("15").unwrap();
    let mut product = Place::Real.hilbert(&a, &b).unwrap();
    print!("(a,b)_v for a = -21/10, b = 15:  real {product:+}");
    for p in [2, 3, 5, 7] {
        let s = Place::Padic(p).hilbert(&a, &b).unwrap();
        print!("  p={p} {s:+}");
        product *= s;
    }
    println!("\nproduct over all places: {product:+}");
}
