//! Borel congruence orbits of anti-symmetric matrices.
//!
//! The invertible upper-triangular group acts on anti-symmetric matrices by
//! `A -> Bᵗ A B`. Its orbits are in bijection with the involutions of the
//! symmetric group, ordered by containment of closures, which is the same as
//! the entrywise order on rank-control matrices. This crate computes all of
//! that exactly over the rationals:
//!
//! - [`linalg`]: exact rationals and matrices with rank, determinant and Pfaffian.
//! - [`involution`]: involutions, their cycle notation and canonic words.
//! - [`canonical`]: elimination to the signed monomial normal form with a Borel witness.
//! - [`rank_control`]: rank-control matrices, their order and the equality count.
//! - [`poset`]: the orbit poset, both rank formulas and the tangent-space oracle.
//! - [`bruhat`]: the Bruhat order on permutations and comparisons with the orbit poset.
//! - [`verify`]: the invariant suites behind the `verify` command.

pub mod bruhat;
pub mod canonical;
mod error;
pub mod involution;
pub mod linalg;
pub mod poset;
pub mod rank_control;
pub mod verify;

pub use canonical::{canonicalize, BorelMatrix, Canonicalization, MonomialASMatrix};
pub use error::{Error, Result};
pub use involution::{CanonicWord, Involution};
pub use linalg::{ASMatrix, Matrix, Rational};
pub use poset::OrbitPoset;
pub use rank_control::RankControlMatrix;
