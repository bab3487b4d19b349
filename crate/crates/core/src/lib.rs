//! Exact exterior calculus on a global chart of `R^n`.
//!
//! Antisymmetric tensors, polynomial differential forms, chains with exact
//! integration, geometric stress and power functionals, and p-form
//! electrodynamics with its four-dimensional classical reading. Every scalar
//! is an exact rational, so identities such as `d∘d = 0` and Stokes' theorem
//! hold as equalities rather than within a tolerance.

pub mod chains;
pub mod error;
pub mod electrodynamics;
pub mod exterior_algebra;
pub mod mechanics;
pub mod polyform;
pub mod polynomial;
pub mod random;
pub mod rational;
pub mod scenario;

pub use error::{Error, Result};
pub use rational::Rational;
