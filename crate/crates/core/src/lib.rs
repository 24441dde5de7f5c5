//! Exact workbench for Z₂-graded algebras given by structure constants:
//! derived bullet and angle products, identity checking, annihilators,
//! quotients, simplicity, module extensions, and symbolic proofs in free
//! models.
//!
//! Everything is generic over an exact [`Field`]; the aliases below fix the
//! two supported fields.

pub mod algebra;
pub mod error;
pub mod gallery;
pub mod identity;
pub mod linalg;
pub mod prover;
pub mod scalar;

#[cfg(test)]
mod invariants;

pub use algebra::{Algebra, AnyAlgebra, Grading};
pub use error::{Error, Result};
pub use identity::{check_identity, check_suite, lookup, CheckOptions, Class, IdentityDef};
pub use scalar::{Field, FieldDescriptor, Fp, PrimeField, Rationals};

/// Rational scalars.
pub type Q = num_rational::BigRational;

pub type QAlgebra = Algebra<Rationals>;
pub type FpAlgebra = Algebra<PrimeField>;
pub type QVector = linalg::Vector<Rationals>;
pub type FpVector = linalg::Vector<PrimeField>;
pub type QSubspace = linalg::Subspace<Rationals>;
pub type FpSubspace = linalg::Subspace<PrimeField>;
pub type QMatrix = linalg::Matrix<Rationals>;
