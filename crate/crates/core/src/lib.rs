//! Exact arithmetic for the automorphism structure of polycyclic groups
//! `F ⋊ D` and for the Koszul cohomology of nilpotent Lie algebras over ℚ.
//!
//! Everything is computed with arbitrary-precision integers and rationals;
//! there is no floating point anywhere in the crate.
//!
//! The modules build on each other bottom-up:
//!
//! - [`linalg`]: dense integer/rational matrices, Hermite and Smith normal
//!   forms, saturated kernel lattices, characteristic and minimal
//!   polynomials, the multiplicative Jordan–Chevalley decomposition.
//! - [`quadratic`]: the orders `ℤ + ℤ√d`, Pell units, regular representation.
//! - [`presentation`]: finitely presented groups, words, module actions and
//!   normal-form engines (infinite dihedral, free abelian, user supplied).
//! - [`cohomology`]: derivations, principal derivations, `H¹`, the conjugation
//!   action on derivations and bounded equivariant unit enumeration.
//! - [`semidirect`]: arithmetic in `F ⋊ D` and the three automorphism atoms.
//! - [`arithmeticity`]: the Jordan-decomposition test for `ℤⁿ ⋊ ⟨A⟩` and the
//!   end-to-end report for the groups `Γ(ε)`.
//! - [`lie`]: Lie algebras by structure constants, Koszul complexes, Betti
//!   numbers, automorphism and torus actions on cohomology.

pub mod arithmeticity;
pub mod cohomology;
mod error;
pub mod exec;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod presentation;
pub mod quadratic;
pub mod semidirect;

pub use error::{Error, ErrorKind, Result};
pub use exec::Exec;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
