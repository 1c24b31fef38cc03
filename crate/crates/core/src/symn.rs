//! The trace form `Q(X) = Tr(X^2)/2` restricted to the stabilizer of a
//! symmetric matrix, its Hasse sign, and the orbit structure of `Sym_n`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{int, rational_str, Place, Rational, SquareClass};
use crate::forms::{diagonalize, relative_hasse, QuadraticForm, SymMatrix};

/// `Q` restricted to `{X : XA + AX^t = 0}` for diagonal `A = diag(a)`.
///
/// In the basis `X_ij` (`i < j`, lexicographic) the form is diagonal with
/// entries `-a_j / a_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilizerForm {
    #[serde(with = "rational_str::vec")]
    pub source: Vec<Rational>,
    pub form: QuadraticForm,
}

fn diagonal_of(a: &SymMatrix, place: Place) -> Result<Vec<Rational>> {
    if a.is_diagonal() {
        let d = a.diagonal();
        if d.iter().any(Zero::is_zero) {
            return Err(Error::Singular);
        }
        return Ok(d);
    }
    let (q, radical) = diagonalize(a, place);
    if radical > 0 {
        return Err(Error::Singular);
    }
    Ok(q.coeffs().to_vec())
}

/// Diagonal form of `A` (by congruence), rejecting singular input.
pub fn form_of(a: &SymMatrix, place: Place) -> Result<QuadraticForm> {
    QuadraticForm::new(place, diagonal_of(a, place)?)
}

pub fn stabilizer_form(a: &SymMatrix, place: Place) -> Result<StabilizerForm> {
    let d = diagonal_of(a, place)?;
    Ok(stabilizer_form_diag(&d, place))
}

pub(crate) fn stabilizer_form_diag(d: &[Rational], place: Place) -> StabilizerForm {
    let n = d.len();
    let mut coeffs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            coeffs.push(-(&d[j] / &d[i]));
        }
    }
    StabilizerForm {
        source: d.to_vec(),
        form: QuadraticForm::new(place, coeffs).expect("ratios of nonzero entries"),
    }
}

fn require_same_det_class(a: &SymMatrix, b: &SymMatrix, place: Place) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::Precondition(format!(
            "matrix sizes differ: {} vs {}",
            a.n(),
            b.n()
        )));
    }
    let (da, db) = (a.det(), b.det());
    if da.is_zero() || db.is_zero() {
        return Err(Error::Singular);
    }
    let ca = place.square_class(&da)?;
    let cb = place.square_class(&db)?;
    if ca != cb {
        return Err(Error::DetClassMismatch(ca.rep, cb.rep));
    }
    Ok(())
}

/// Relative Hasse sign of the two stabilizer forms.
pub fn epsilon_pair(a: &SymMatrix, b: &SymMatrix, place: Place) -> Result<i8> {
    require_same_det_class(a, b, place)?;
    let sa = stabilizer_form(a, place)?;
    let sb = stabilizer_form(b, place)?;
    relative_hasse(&sa.form, &sb.form)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignpropCheck {
    pub n: usize,
    pub place: Place,
    /// `epsilon(A, A')` from the stabilizer forms.
    pub epsilon_pair: i8,
    /// `epsilon(q_A, q_A')` from the matrices themselves.
    pub relative_hasse: i8,
    pub holds: bool,
}

/// Compares the stabilizer-form sign with `epsilon(q_A, q_A')^n`.
pub fn verify_signprop(a: &SymMatrix, b: &SymMatrix, place: Place) -> Result<SignpropCheck> {
    let eps = epsilon_pair(a, b, place)?;
    let rel = relative_hasse(&form_of(a, place)?, &form_of(b, place)?)?;
    let n = a.n();
    let expected = if n % 2 == 0 { 1 } else { rel };
    Ok(SignpropCheck {
        n,
        place,
        epsilon_pair: eps,
        relative_hasse: rel,
        holds: eps == expected,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CConstant {
    pub n: usize,
    pub place: Place,
    pub det_class: i64,
    /// Common value of `hasse(Q|h_A) * hasse(q_A)^n`, if any sample exists.
    pub value: Option<i8>,
    pub well_defined: bool,
    pub samples: usize,
}

/// Nondecreasing index tuples of length `n` over `k` symbols.
pub(crate) fn multisets(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(k, n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Diagonal matrices with entries among the square-class representatives,
/// one per multiset of entries.
pub fn representative_diagonals(n: usize, place: Place) -> Vec<Vec<Rational>> {
    let reps = place.square_class_reps();
    multisets(reps.len(), n)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| int(reps[i])).collect())
        .collect()
}

fn sign_pow(s: i8, e: usize) -> i8 {
    if e % 2 == 0 {
        1
    } else {
        s
    }
}

pub fn c_constant(n: usize, d: SquareClass, place: Place) -> CConstant {
    let mut values = BTreeSet::new();
    let mut samples = 0;
    for diag in representative_diagonals(n, place) {
        let q = QuadraticForm::new(place, diag.clone()).expect("representatives are nonzero");
        if q.det_class() != d {
            continue;
        }
        samples += 1;
        let stab = stabilizer_form_diag(&diag, place);
        values.insert(stab.form.hasse() * sign_pow(q.hasse(), n));
    }
    CConstant {
        n,
        place,
        det_class: d.rep,
        value: values.iter().next().copied(),
        well_defined: values.len() <= 1,
        samples,
    }
}

/// Label of the congruence orbit of an invertible symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitInvariant {
    pub n: usize,
    pub det_class: i64,
    pub hasse: i8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<(usize, usize)>,
}

pub fn orbit_invariant(a: &SymMatrix, place: Place) -> Result<OrbitInvariant> {
    let q = form_of(a, place)?;
    let inv = q.invariants();
    Ok(OrbitInvariant {
        n: inv.rank,
        det_class: inv.det_class,
        hasse: inv.hasse,
        signature: inv.signature,
    })
}

/// Number of distinct orbit labels at rank `n` (odd) and fixed det class.
///
/// Runs over diagonal forms built one coefficient at a time, tracking only
/// (prefix det class, Hasse sign, negative count), so the state space stays
/// bounded by the number of square classes.
pub fn sl_orbit_count(n: usize, det_class: SquareClass, place: Place) -> Result<usize> {
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("orbit count needs odd n, got {n}")));
    }
    Ok(orbit_labels(n, det_class, place).len())
}

/// All realizable `(hasse, negative count)` labels; the negative count is
/// only tracked at the real place.
pub fn orbit_labels(n: usize, det_class: SquareClass, place: Place) -> BTreeSet<(i8, usize)> {
    let reps = place.square_class_reps();
    let mut states: BTreeSet<(i64, i8, usize)> = BTreeSet::new();
    states.insert((1, 1, 0));
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for &(prefix, hasse, neg) in &states {
            for &a in &reps {
                let h = place.hilbert(&int(prefix), &int(a)).expect("nonzero");
                let c = place.square_class(&int(prefix * a)).expect("nonzero").rep;
                let neg = if place.is_real() && a < 0 { neg + 1 } else { neg };
                next.insert((c, hasse * h, neg));
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|&(c, _, _)| c == det_class.rep)
        .map(|(_, h, neg)| (h, neg))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingCheck {
    pub n: usize,
    #[serde(with = "rational_str")]
    pub t: Rational,
    /// `hasse(t q_A)`.
    pub scaled: i8,
    /// `(t,t)^{n(n-1)/2} (t, det A)^{n-1} hasse(q_A)`, the pairwise expansion.
    pub middle: i8,
    /// `(t,-1)^{n(n-1)/2} hasse(q_A)`.
    pub predicted: i8,
    /// `hasse(q_A) (det A, -1)^{(n-1)/2}` before and after scaling.
    pub invariant_before: i8,
    pub invariant_after: i8,
    pub holds: bool,
}

/// `hasse(q_A) (det A, -1)^{(n-1)/2}`.
pub fn scaling_invariant(q: &QuadraticForm) -> i8 {
    let n = q.rank();
    let s = q.place.hilbert(&q.det(), &int(-1)).expect("nonzero");
    q.hasse() * sign_pow(s, n.saturating_sub(1) / 2)
}

pub fn epsilon_scaling_check(a: &SymMatrix, t: &Rational, place: Place) -> Result<ScalingCheck> {
    let n = a.n();
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("scaling law needs odd n, got {n}")));
    }
    if t.is_zero() {
        return Err(Error::Zero("scaling factor"));
    }
    let q = form_of(a, place)?;
    let tq = q.scale(t)?;
    let pairs = n * (n - 1) / 2;
    let tt = place.hilbert(t, t)?;
    let td = place.hilbert(t, &q.det())?;
    let tm = place.hilbert(t, &-Rational::one())?;
    let scaled = tq.hasse();
    let middle = sign_pow(tt, pairs) * sign_pow(td, n - 1) * q.hasse();
    let predicted = sign_pow(tm, pairs) * q.hasse();
    let before = scaling_invariant(&q);
    let after = scaling_invariant(&tq);
    Ok(ScalingCheck {
        n,
        t: t.clone(),
        scaled,
        middle,
        predicted,
        invariant_before: before,
        invariant_after: after,
        holds: scaled == middle && scaled == predicted && before == after,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignpropSuite {
    pub n: usize,
    pub place: Place,
    pub matrices: usize,
    pub pairs: usize,
    pub failures: usize,
    pub c_constants: Vec<CConstant>,
}

impl SignpropSuite {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.pairs > 0 && self.c_constants.iter().all(|c| c.well_defined)
    }
}

/// Every pair of representative diagonal matrices with equal det class.
pub fn signprop_suite(n: usize, place: Place) -> SignpropSuite {
    use rayon::prelude::*;

    let diags = representative_diagonals(n, place);
    let mats: Vec<(SymMatrix, SquareClass)> = diags
        .iter()
        .map(|d| {
            let m = SymMatrix::diag(d).expect("n >= 1");
            let c = place.square_class(&m.det()).expect("invertible");
            (m, c)
        })
        .collect();
    let (pairs, failures) = (0..mats.len())
        .into_par_iter()
        .map(|i| {
            let mut pairs = 0;
            let mut failures = 0;
            for j in i..mats.len() {
                if mats[i].1 != mats[j].1 {
                    continue;
                }
                pairs += 1;
                match verify_signprop(&mats[i].0, &mats[j].0, place) {
                    Ok(c) if c.holds => {}
                    _ => failures += 1,
                }
            }
            (pairs, failures)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let c_constants = place
        .square_class_reps()
        .into_iter()
        .map(|d| c_constant(n, SquareClass { place, rep: d }, place))
        .collect();
    SignpropSuite {
        n,
        place,
        matrices: mats.len(),
        pairs,
        failures,
        c_constants,
    }
}

/// Negative-eigenvalue count of a real symmetric matrix.
pub fn negative_index(a: &SymMatrix) -> Result<usize> {
    let q = form_of(a, Place::Real)?;
    Ok(q.coeffs().iter().filter(|c| c.is_negative()).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{least_nonresidue, rat};

    fn diag(place: Place, d: &[Rational]) -> (SymMatrix, Place) {
        (SymMatrix::diag(d).unwrap(), place)
    }

    #[test]
    fn identity_stabilizer_is_all_minus_one() {
        let s = stabilizer_form(&SymMatrix::identity(4), Place::Padic(5)).unwrap();
        assert_eq!(s.form.coeffs(), vec![int(-1); 6].as_slice());
    }

    #[test]
    fn rank_two_stabilizer() {
        let (a, place) = diag(Place::Padic(3), &[int(2), rat(5, 3)]);
        let s = stabilizer_form(&a, place).unwrap();
        assert_eq!(s.form.coeffs(), &[rat(-5, 6)]);
    }

    #[test]
    fn one_by_one_has_empty_stabilizer() {
        let s = stabilizer_form(&SymMatrix::diag(&[int(3)]).unwrap(), Place::Real).unwrap();
        assert_eq!(s.form.rank(), 0);
        assert_eq!(s.form.hasse(), 1);
    }

    #[test]
    fn seven_adic_example() {
        let place = Place::Padic(7);
        let (a, _) = diag(place, &[int(7), int(7), rat(1, 49)]);
        let s = stabilizer_form(&a, place).unwrap();
        assert_eq!(s.form.coeffs(), &[int(-1), rat(-1, 343), rat(-1, 343)]);
        // independent: product of oracle symbols over pairs
        let c = s.form.coeffs();
        let mut h = 1;
        for i in 0..3 {
            for j in i + 1..3 {
                h *= place.hilbert_oracle(&c[i], &c[j]).unwrap();
            }
        }
        assert_eq!(h, -1);
        assert_eq!(s.form.hasse(), -1);
        let e = epsilon_pair(&SymMatrix::identity(3), &a, place).unwrap();
        assert_eq!(e, -1);
        let chk = verify_signprop(&SymMatrix::identity(3), &a, place).unwrap();
        assert_eq!(chk.relative_hasse, -1);
        assert!(chk.holds);
    }

    #[test]
    fn real_three_by_three() {
        let place = Place::Real;
        let a = SymMatrix::identity(3);
        let (b, _) = diag(place, &[int(-1), int(-1), int(1)]);
        let chk = verify_signprop(&a, &b, place).unwrap();
        assert_eq!(chk.epsilon_pair, chk.relative_hasse.pow(3));
    }

    #[test]
    fn mismatched_det_classes_rejected() {
        let place = Place::Padic(5);
        let (b, _) = diag(place, &[int(2), int(1), int(1)]);
        assert!(matches!(
            epsilon_pair(&SymMatrix::identity(3), &b, place),
            Err(Error::DetClassMismatch(1, 2))
        ));
    }

    #[test]
    fn singular_rejected() {
        let place = Place::Padic(5);
        let (b, _) = diag(place, &[int(1), int(0)]);
        assert!(matches!(stabilizer_form(&b, place), Err(Error::Singular)));
    }

    #[test]
    fn c_constant_examples() {
        let place = Place::Padic(7);
        let c = c_constant(3, SquareClass::one(place), place);
        assert!(c.well_defined);
        let i3 = SymMatrix::identity(3);
        let v_id = stabilizer_form(&i3, place).unwrap().form.hasse() * form_of(&i3, place).unwrap().hasse();
        assert_eq!(c.value, Some(v_id));
        let (a, _) = diag(place, &[int(7), int(7), rat(1, 49)]);
        let va = stabilizer_form(&a, place).unwrap().form.hasse() * form_of(&a, place).unwrap().hasse().pow(3);
        assert_eq!(va, v_id);
    }

    #[test]
    fn orbit_counts() {
        for p in [3u64, 5, 7, 2] {
            let place = Place::Padic(p);
            for &d in &place.square_class_reps() {
                let d = SquareClass { place, rep: d };
                assert_eq!(sl_orbit_count(3, d, place).unwrap(), 2);
                assert_eq!(sl_orbit_count(5, d, place).unwrap(), 2);
                assert_eq!(sl_orbit_count(1, d, place).unwrap(), 1);
            }
        }
        let r = Place::Real;
        assert_eq!(sl_orbit_count(3, SquareClass::one(r), r).unwrap(), 2);
        assert_eq!(sl_orbit_count(5, SquareClass { place: r, rep: -1 }, r).unwrap(), 3);
        assert!(sl_orbit_count(4, SquareClass::one(r), r).is_err());
    }

    #[test]
    fn scaling_examples() {
        let place = Place::Padic(7);
        let c = epsilon_scaling_check(&SymMatrix::identity(3), &int(7), place).unwrap();
        assert!(c.holds);
        let c = epsilon_scaling_check(&SymMatrix::identity(3), &int(9), place).unwrap();
        assert!(c.holds && c.scaled == c.invariant_before);
        let c = epsilon_scaling_check(&SymMatrix::identity(5), &int(-1), Place::Real).unwrap();
        // -I_5 has 5 negative squares: (-1)^{10} = 1, and (-1,-1)^{10} = 1
        assert_eq!(c.scaled, 1);
        assert!(c.holds);
        assert!(epsilon_scaling_check(&SymMatrix::identity(2), &int(7), place).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let u = least_nonresidue(5);
        assert_eq!(u, 2);
        for place in [Place::Padic(5), Place::Real] {
            let s = signprop_suite(3, place);
            assert!(s.passed(), "{s:?}");
        }
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(4, 3).len(), 20);
        assert_eq!(multisets(2, 5).len(), 6);
    }
}
