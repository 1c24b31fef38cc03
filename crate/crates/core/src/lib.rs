//! Exact quadratic-form invariants over local fields.
//!
//! The crate computes Hilbert symbols, Hasse-Witt invariants and Weil
//! constants over `R` and `Q_p`, and checks a family of identities built on
//! them: p-adic stationary phase for polynomial phases, the sign of the
//! restricted trace form on stabilizers in `Sym_n`, Shintani's Γ-matrix
//! column sums for `Sym_n(R)`, and the one-dimensional local functional
//! equation.

pub mod cli;
pub mod error;
pub mod field;
pub mod forms;
pub mod json;
pub mod real;
mod reference;
pub mod sample;
pub mod kernel;
pub mod mc;
pub mod shintani;
pub mod stationary;
pub mod suites;
pub mod symn;
pub mod tate;
pub mod weil;

pub use error::{Error, Result};
pub use field::{AdditiveCharacter, Convention, LocalScalar, Place, Rational, SquareClass};
pub use forms::{QuadraticForm, SymMatrix, WittInvariants};
