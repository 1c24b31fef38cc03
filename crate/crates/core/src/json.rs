//! JSON helpers shared by reports and the command line.

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::Serializer;

/// Serializes a complex number as `[re, im]`.
pub fn complex_pair<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&z.re)?;
    seq.serialize_element(&z.im)?;
    seq.end()
}

pub fn complex_vec<S: Serializer>(zs: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(zs.len()))?;
    for z in zs {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

pub fn complex_matrix<S: Serializer>(m: &[Vec<Complex64>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        let r: Vec<[f64; 2]> = row.iter().map(|z| [z.re, z.im]).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

pub fn option_complex_pair<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    match z {
        Some(z) => complex_pair(z, s),
        None => s.serialize_none(),
    }
}
