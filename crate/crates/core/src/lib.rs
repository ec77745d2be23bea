//! Exact Sheffer sequences, generalized Sierpiński matrices and digital
//! binomial identities.
//!
//! Everything is computed over exact rationals: identities are checked by
//! reducing both sides to canonical sparse polynomials and comparing them.

pub mod assign;
pub mod digits;
pub mod error;
pub mod identity;
pub mod json;
pub mod poly;
pub mod rational;
pub mod series;
pub mod sheffer;
pub mod sierpinski;
pub mod umbral;

pub use assign::{Mode, VerifyOptions};
pub use error::{Error, Result};
pub use poly::{Axis, Monomial, MultiPoly, VarId};
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use sheffer::{expand_system, FamilyId, SeqKind, ShefferSpec, ShefferSystem};
pub use sierpinski::{MatrixKind, SierpinskiMatrix, SparseMatrix};
