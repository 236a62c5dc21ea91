//! Exact computational-algebra kernel for algebraic statistics.
//!
//! Polynomials over `Q`, reduced Groebner bases, ideal arithmetic, and the
//! constructors that turn conditional independence statements, undirected
//! graphical models and linear structural equation models into ideals.
//! The [`catalog`] module certifies decompositions of such ideals by exact
//! ideal arithmetic.

pub mod catalog;
pub mod ci;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod mixed;
pub mod poly;
pub mod rational;
pub mod toric;

pub use error::{Error, Result};
pub use rational::Rational;
