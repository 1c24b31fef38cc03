//! Diagonal quadratic forms over a place and their classifying invariants.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{int, rational_str, Place, Rational, SquareClass};

/// `a_1 x_1^2 + ... + a_n x_n^2` over `place`, all `a_i` nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FormLiteral")]
pub struct QuadraticForm {
    pub place: Place,
    #[serde(with = "rational_str::vec")]
    coeffs: Vec<Rational>,
}

#[derive(Deserialize)]
struct FormLiteral {
    place: Place,
    #[serde(with = "rational_str::vec")]
    coeffs: Vec<Rational>,
}

impl TryFrom<FormLiteral> for QuadraticForm {
    type Error = Error;

    fn try_from(lit: FormLiteral) -> Result<Self> {
        QuadraticForm::new(lit.place, lit.coeffs)
    }
}

impl QuadraticForm {
    pub fn new(place: Place, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.iter().any(Zero::is_zero) {
            return Err(Error::Zero("quadratic form coefficient"));
        }
        Ok(QuadraticForm { place, coeffs })
    }

    pub fn from_ints(place: Place, coeffs: &[i64]) -> Result<Self> {
        Self::new(place, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn empty(place: Place) -> Self {
        QuadraticForm {
            place,
            coeffs: Vec::new(),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn det(&self) -> Rational {
        self.coeffs.iter().fold(Rational::one(), |acc, a| acc * a)
    }

    pub fn det_class(&self) -> SquareClass {
        self.place
            .square_class(&self.det())
            .expect("coefficients are nonzero")
    }

    /// `t * q`.
    pub fn scale(&self, t: &Rational) -> Result<Self> {
        Self::new(self.place, self.coeffs.iter().map(|a| a * t).collect())
    }

    /// `-q`.
    pub fn negate(&self) -> Self {
        QuadraticForm {
            place: self.place,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Hasse-Witt invariant `prod_{i<j} (a_i, a_j)`; `+1` for rank 0 and 1.
    pub fn hasse(&self) -> i8 {
        // prod_{i<j} (a_i, a_j) = prod_j (a_1 ... a_{j-1}, a_j)
        let place = self.place;
        let classes: Vec<SquareClass> = self
            .coeffs
            .iter()
            .map(|a| place.square_class(a).expect("nonzero"))
            .collect();
        let mut prefix = SquareClass::one(place);
        let mut sign = 1i8;
        for c in &classes {
            sign *= place
                .hilbert(&prefix.rational(), &c.rational())
                .expect("nonzero");
            prefix = prefix.mul(c);
        }
        sign
    }

    /// `(pos, neg)` counts of the coefficients; meaningful at the real place.
    pub fn signature(&self) -> (usize, usize) {
        let neg = self.coeffs.iter().filter(|a| a.is_negative()).count();
        (self.rank() - neg, neg)
    }

    pub fn invariants(&self) -> WittInvariants {
        WittInvariants {
            rank: self.rank(),
            det_class: self.det_class().rep,
            hasse: self.hasse(),
            signature: self.place.is_real().then(|| self.signature()),
        }
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(crate::field::format_rational).collect();
        write!(f, "<{}> over {}", cs.join(", "), self.place)
    }
}

/// Rank, determinant class, Hasse sign and (at the real place) signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WittInvariants {
    pub rank: usize,
    pub det_class: i64,
    pub hasse: i8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<(usize, usize)>,
}

pub fn hasse_invariant(q: &QuadraticForm) -> i8 {
    q.hasse()
}

pub fn invariants(q: &QuadraticForm) -> WittInvariants {
    q.invariants()
}

/// `eps(q, q') = eps(q) eps(q')`.
pub fn relative_hasse(q: &QuadraticForm, q2: &QuadraticForm) -> Result<i8> {
    q.place.same(q2.place)?;
    Ok(q.hasse() * q2.hasse())
}

pub fn equivalent(q: &QuadraticForm, q2: &QuadraticForm) -> Result<bool> {
    q.place.same(q2.place)?;
    Ok(match q.place {
        Place::Real => q.rank() == q2.rank() && q.signature() == q2.signature(),
        Place::Padic(_) => {
            q.rank() == q2.rank()
                && q.det_class() == q2.det_class()
                && relative_hasse(q, q2)? == 1
        }
    })
}

pub fn witt_sum(q: &QuadraticForm, q2: &QuadraticForm) -> Result<QuadraticForm> {
    q.place.same(q2.place)?;
    let mut coeffs = q.coeffs.clone();
    coeffs.extend(q2.coeffs.iter().cloned());
    QuadraticForm::new(q.place, coeffs)
}

pub fn witt_product(q: &QuadraticForm, q2: &QuadraticForm) -> Result<QuadraticForm> {
    q.place.same(q2.place)?;
    let coeffs = q
        .coeffs
        .iter()
        .flat_map(|a| q2.coeffs.iter().map(move |b| a * b))
        .collect();
    QuadraticForm::new(q.place, coeffs)
}

/// Position of `(q) - (q')` in the filtration `W ⊃ W^1 ⊃ W^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "level")]
pub enum FiltrationLevel {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One { det_ratio_class: i64 },
    /// `class` is the image in `W^2/W^3`, i.e. `eps(q, q')`.
    #[serde(rename = ">=2")]
    AtLeastTwo { class: i8 },
}

impl FiltrationLevel {
    pub fn level(self) -> u8 {
        match self {
            FiltrationLevel::Zero => 0,
            FiltrationLevel::One { .. } => 1,
            FiltrationLevel::AtLeastTwo { .. } => 2,
        }
    }
}

/// `q ⊕ k<1,-1>`: same Witt class, larger rank.
pub fn pad_hyperbolic(q: &QuadraticForm, planes: usize) -> QuadraticForm {
    let mut coeffs = q.coeffs.clone();
    for _ in 0..planes {
        coeffs.push(int(1));
        coeffs.push(int(-1));
    }
    QuadraticForm {
        place: q.place,
        coeffs,
    }
}

/// Pads the smaller form with hyperbolic planes so both have equal rank.
/// Requires equal rank parity.
pub(crate) fn equalize_ranks(q: &QuadraticForm, q2: &QuadraticForm) -> (QuadraticForm, QuadraticForm) {
    debug_assert_eq!(q.rank() % 2, q2.rank() % 2);
    let r = q.rank().max(q2.rank());
    (
        pad_hyperbolic(q, (r - q.rank()) / 2),
        pad_hyperbolic(q2, (r - q2.rank()) / 2),
    )
}

pub fn witt_filtration_level(q: &QuadraticForm, q2: &QuadraticForm) -> Result<FiltrationLevel> {
    q.place.same(q2.place)?;
    if q.rank() % 2 != q2.rank() % 2 {
        return Ok(FiltrationLevel::Zero);
    }
    let (a, b) = equalize_ranks(q, q2);
    let class = q.place.square_class(&(a.det() / b.det()))?;
    if !class.is_trivial() {
        return Ok(FiltrationLevel::One {
            det_ratio_class: class.rep,
        });
    }
    Ok(FiltrationLevel::AtLeastTwo {
        class: relative_hasse(&a, &b)?,
    })
}

/// A symmetric matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SymMatrixLiteral", into = "SymMatrixLiteral")]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct SymMatrixLiteral {
    n: usize,
    entries: Vec<Vec<String>>,
}

impl TryFrom<SymMatrixLiteral> for SymMatrix {
    type Error = Error;

    fn try_from(lit: SymMatrixLiteral) -> Result<Self> {
        let rows = lit
            .entries
            .iter()
            .map(|row| row.iter().map(|s| crate::field::parse_rational(s)).collect())
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        if rows.len() != lit.n {
            return Err(Error::parse("matrix", format!("expected {} rows", lit.n)));
        }
        SymMatrix::new(rows)
    }
}

impl From<SymMatrix> for SymMatrixLiteral {
    fn from(m: SymMatrix) -> Self {
        SymMatrixLiteral {
            n: m.n,
            entries: m
                .entries
                .iter()
                .map(|r| r.iter().map(crate::field::format_rational).collect())
                .collect(),
        }
    }
}

impl SymMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::parse("matrix", "empty matrix"));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::parse("matrix", format!("row {i} has length {}", row.len())));
            }
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::parse("matrix", format!("not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(SymMatrix { n, entries })
    }

    pub fn diag(d: &[Rational]) -> Result<Self> {
        let n = d.len();
        let mut e = vec![vec![Rational::zero(); n]; n];
        for (i, x) in d.iter().enumerate() {
            e[i][i] = x.clone();
        }
        Self::new(e)
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![Rational::one(); n]).expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.entries[i][j].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.n).map(|i| self.entries[i][i].clone()).collect()
    }

    pub fn scale(&self, t: &Rational) -> Self {
        SymMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x * t).collect())
                .collect(),
        }
    }

    /// `g A g^t` for a square matrix `g` of the same size.
    pub fn congruent(&self, g: &[Vec<Rational>]) -> Self {
        let n = self.n;
        let ga: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Rational::zero(), |s, k| s + &g[i][k] * &self.entries[k][j]))
                    .collect()
            })
            .collect();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Rational::zero(), |s, k| s + &ga[i][k] * &g[j][k]))
                    .collect()
            })
            .collect();
        SymMatrix { n, entries }
    }

    pub fn det(&self) -> Rational {
        determinant(&self.entries)
    }
}

pub(crate) fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if r != c {
            a.swap(r, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Result of congruence diagonalization: `transform * A * transform^t`
/// is diagonal with entries `form ⊕ <0, ..., 0>` (zeros are the radical).
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub form: QuadraticForm,
    pub radical_dim: usize,
    pub transform: Vec<Vec<Rational>>,
}

/// Symmetric Gaussian elimination over `Q`.
pub fn diagonalize_with_transform(a: &SymMatrix, place: Place) -> Diagonalization {
    let n = a.n;
    let mut m = a.entries.clone();
    let mut t: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let mut diag = Vec::with_capacity(n);
    let mut radical = 0;

    let swap = |m: &mut Vec<Vec<Rational>>, t: &mut Vec<Vec<Rational>>, i: usize, j: usize| {
        m.swap(i, j);
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        t.swap(i, j);
    };
    // row_i += row_j, col_i += col_j
    let add = |m: &mut Vec<Vec<Rational>>, t: &mut Vec<Vec<Rational>>, i: usize, j: usize| {
        for k in 0..n {
            let v = m[j][k].clone();
            m[i][k] += v;
        }
        for row in m.iter_mut() {
            let v = row[j].clone();
            row[i] += v;
        }
        for k in 0..n {
            let v = t[j][k].clone();
            t[i][k] += v;
        }
    };

    for i in 0..n {
        if m[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                swap(&mut m, &mut t, i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                add(&mut m, &mut t, i, j);
            } else {
                radical += 1;
                continue;
            }
        }
        let pivot = m[i][i].clone();
        for k in i + 1..n {
            if m[k][i].is_zero() {
                continue;
            }
            let f = &m[k][i] / &pivot;
            for c in 0..n {
                let v = &f * &m[i][c];
                m[k][c] -= v;
                let w = &f * &t[i][c];
                t[k][c] -= w;
            }
            for row in m.iter_mut() {
                let v = &f * &row[i];
                row[k] -= v;
            }
        }
        diag.push(pivot);
    }
    Diagonalization {
        form: QuadraticForm::new(place, diag).expect("pivots are nonzero"),
        radical_dim: radical,
        transform: t,
    }
}

pub fn diagonalize(a: &SymMatrix, place: Place) -> (QuadraticForm, usize) {
    let d = diagonalize_with_transform(a, place);
    (d.form, d.radical_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{least_nonresidue, rat};

    fn q(place: Place, cs: &[Rational]) -> QuadraticForm {
        QuadraticForm::new(place, cs.to_vec()).unwrap()
    }

    fn naive_hasse(f: &QuadraticForm) -> i8 {
        let c = f.coeffs();
        let mut s = 1;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                s *= f.place.hilbert(&c[i], &c[j]).unwrap();
            }
        }
        s
    }

    #[test]
    fn hyperbolic_plane_diagonalizes() {
        let h = SymMatrix::new(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        let d = diagonalize_with_transform(&h, Place::Padic(5));
        assert_eq!(d.form.coeffs(), &[int(2), rat(-1, 2)]);
        assert_eq!(d.radical_dim, 0);
        let back = h.congruent(&d.transform);
        assert_eq!(back, SymMatrix::diag(d.form.coeffs()).unwrap());
        assert_eq!(
            Place::Padic(5).square_class(&d.form.det()).unwrap(),
            Place::Padic(5).square_class(&h.det()).unwrap()
        );
    }

    #[test]
    fn identity_and_singular() {
        let (f, r) = diagonalize(&SymMatrix::identity(3), Place::Real);
        assert_eq!(f.coeffs(), &[int(1), int(1), int(1)]);
        assert_eq!(r, 0);
        let s = SymMatrix::diag(&[int(1), int(0)]).unwrap();
        let (f, r) = diagonalize(&s, Place::Real);
        assert_eq!(f.coeffs(), &[int(1)]);
        assert_eq!(r, 1);
    }

    #[test]
    fn zero_pivot_with_nonzero_partner_diagonal() {
        // a zero pivot whose partner has a nonzero diagonal is swapped, not added
        let m = SymMatrix::new(vec![
            vec![int(0), int(1), int(0)],
            vec![int(1), int(-2), int(3)],
            vec![int(0), int(3), int(1)],
        ])
        .unwrap();
        let d = diagonalize_with_transform(&m, Place::Padic(3));
        assert_eq!(d.radical_dim, 0);
        assert_eq!(m.congruent(&d.transform), SymMatrix::diag(d.form.coeffs()).unwrap());
        assert_eq!(d.form.det(), m.det());
    }

    #[test]
    fn hasse_examples() {
        for p in [3u64, 5, 7, 11] {
            let place = Place::Padic(p);
            assert_eq!(q(place, &[int(1), int(-1)]).hasse(), 1);
            let u = least_nonresidue(p) as i64;
            assert_eq!(q(place, &[int(u), int(p as i64)]).hasse(), -1);
        }
        assert_eq!(q(Place::Real, &[int(-1), int(-1)]).hasse(), -1);
        assert_eq!(QuadraticForm::empty(Place::Real).hasse(), 1);
        assert_eq!(q(Place::Padic(2), &[int(-1)]).hasse(), 1);
    }

    #[test]
    fn relative_hasse_examples() {
        let p7 = Place::Padic(7);
        let a = q(p7, &[int(1), int(1), int(1)]);
        let b = q(p7, &[int(7), int(7), rat(1, 49)]);
        assert_eq!(relative_hasse(&a, &a).unwrap(), 1);
        assert_eq!(relative_hasse(&a, &b).unwrap(), -1);
        let r = relative_hasse(
            &q(Place::Real, &[int(-1), int(-1)]),
            &q(Place::Real, &[int(1), int(1)]),
        );
        assert_eq!(r.unwrap(), -1);
        assert!(matches!(relative_hasse(&a, &QuadraticForm::empty(Place::Real)), Err(Error::PlaceMismatch(..))));
    }

    #[test]
    fn invariants_examples() {
        let i = q(Place::Padic(5), &[int(2), int(3)]).invariants();
        assert_eq!((i.rank, i.det_class, i.hasse), (2, 1, 1));
        let e = QuadraticForm::empty(Place::Padic(5)).invariants();
        assert_eq!((e.rank, e.det_class, e.hasse), (0, 1, 1));
        let r = q(Place::Real, &[int(1), int(-2), int(3)]).invariants();
        assert_eq!(r.signature, Some((2, 1)));
        assert_eq!(r.hasse, 1);
    }

    #[test]
    fn equivalence_examples() {
        let p7 = Place::Padic(7);
        assert!(equivalent(&q(p7, &[int(1), int(1)]), &q(p7, &[int(2), rat(1, 2)])).unwrap());
        for p in [3u64, 5, 7] {
            let place = Place::Padic(p);
            let u = least_nonresidue(p) as i64;
            assert!(!equivalent(&q(place, &[int(1)]), &q(place, &[int(u)])).unwrap());
        }
        assert!(!equivalent(
            &q(Place::Real, &[int(1), int(-1)]),
            &q(Place::Real, &[int(1), int(1)])
        )
        .unwrap());
    }

    #[test]
    fn witt_operations() {
        let p = Place::Padic(3);
        let s = witt_sum(&q(p, &[int(1)]), &q(p, &[int(-1)])).unwrap();
        assert_eq!(s.coeffs(), &[int(1), int(-1)]);
        let pr = witt_product(&q(p, &[int(2)]), &q(p, &[int(3), int(5)])).unwrap();
        assert_eq!(pr.coeffs(), &[int(6), int(10)]);
        let a = q(p, &[int(2), int(3)]);
        let b = q(p, &[int(5), rat(1, 3), int(7)]);
        let sum = witt_sum(&a, &b).unwrap();
        assert_eq!(sum.det_class(), a.det_class().mul(&b.det_class()));
    }

    #[test]
    fn filtration_examples() {
        let p = Place::Padic(7);
        let one = q(p, &[int(1), int(1)]);
        assert_eq!(witt_filtration_level(&one, &q(p, &[int(1)])).unwrap(), FiltrationLevel::Zero);
        let u = least_nonresidue(7) as i64;
        let uu = q(p, &[int(u), int(u)]);
        let expected = p.hilbert(&int(u), &int(u)).unwrap();
        assert_eq!(
            witt_filtration_level(&one, &uu).unwrap(),
            FiltrationLevel::AtLeastTwo { class: expected }
        );
        assert_eq!(
            witt_filtration_level(&uu, &uu).unwrap(),
            FiltrationLevel::AtLeastTwo { class: 1 }
        );
        assert_eq!(witt_filtration_level(&one, &q(p, &[int(1), int(u)])).unwrap().level(), 1);
    }

    #[test]
    fn real_hasse_matches_negative_count() {
        for pos in 0..=8usize {
            for neg in 0..=(8 - pos) {
                let mut cs = vec![int(1); pos];
                cs.extend(vec![int(-1); neg]);
                let f = q(Place::Real, &cs);
                let expected = if (neg * neg.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
                assert_eq!(naive_hasse(&f), expected);
                assert_eq!(f.hasse(), expected);
            }
        }
    }

    #[test]
    fn prefix_hasse_matches_pairwise_product() {
        for p in [2u64, 3, 5] {
            let place = Place::Padic(p);
            let reps = place.square_class_reps();
            for a in &reps {
                for b in &reps {
                    for c in &reps {
                        let f = q(place, &[int(*a), int(*b), int(*c), rat(1, p as i64)]);
                        assert_eq!(f.hasse(), naive_hasse(&f));
                    }
                }
            }
        }
    }

    #[test]
    fn sym_matrix_json_literal() {
        let m: SymMatrix =
            serde_json::from_str(r#"{"n":2,"entries":[["1","1/2"],["1/2","-3"]]}"#).unwrap();
        assert_eq!(m.get(0, 1), &rat(1, 2));
        let back = serde_json::to_string(&m).unwrap();
        assert_eq!(back, r#"{"n":2,"entries":[["1","1/2"],["1/2","-3"]]}"#);
        assert!(serde_json::from_str::<SymMatrix>(r#"{"n":2,"entries":[["1","2"],["3","1"]]}"#).is_err());
        let f: QuadraticForm =
            serde_json::from_str(r#"{"place":"p:7","coeffs":["1","1","1/49"]}"#).unwrap();
        assert_eq!(f.rank(), 3);
    }
}
