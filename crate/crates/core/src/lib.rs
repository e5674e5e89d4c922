//! Exact structure theory for finite-dimensional nonassociative algebras
//! presented by structure constants: identity classes, the derived and
//! power series, radicals, Frattini subalgebra and ideal, socles, chief
//! series and decomposition of bicommutative, assosymmetric and Novikov
//! algebras, together with a catalogue of mechanically checkable theorems.
//!
//! Everything is generic over an exact [`Field`]; the aliases below fix the
//! two supported coefficient domains.

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod exactfield;
pub mod file;
pub mod linalg;
pub mod series;
pub mod structure;
pub mod verify;

pub use algebra::{Algebra, IdentityFlags, IdentityKind, MulOperator, Projection, Side};
pub use enumerate::{EnumerationBudget, RadicalKind};
pub use error::{Error, Result};
pub use exactfield::{Field, FieldSpec, PrimeField, Rationals, Scalar};
pub use file::AnyAlgebra;
pub use linalg::{Matrix, Subspace, Vector};
pub use series::{ChiefSeries, NilpotencyProfile, SeriesKind, SeriesResult};
pub use verify::{CheckId, VerificationReport};

/// An algebra over the rationals.
pub type RationalAlgebra = Algebra<Rationals>;
/// An algebra over a prime field.
pub type ModpAlgebra = Algebra<PrimeField>;
/// A subspace of `Q^n`.
pub type RationalSubspace = Subspace<Rationals>;
/// A subspace of `F_p^n`.
pub type ModpSubspace = Subspace<PrimeField>;
/// Rational coordinate vector.
pub type RationalVector = Vector<Rationals>;
/// Prime-field coordinate vector.
pub type ModpVector = Vector<PrimeField>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeExamples;
