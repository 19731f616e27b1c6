//! Exact linear algebra over the rationals.

mod matrix;
mod rational;

pub use matrix::{ASMatrix, Matrix};
pub use rational::Rational;
