//! Factorization invariants of numerical monoids.
//!
//! Construct a [`NumericalMonoid`], enumerate [`factorization::enumerate`] the
//! factorizations of an element, and compute catenary degrees with the
//! functions in [`catenary`].

pub mod arith;
pub mod catenary;
pub mod error;
pub mod experiments;
pub mod factorization;
pub mod families;
pub mod monoid;

pub use error::{Error, Result};
pub use factorization::{Factorization, FactorizationSet, LengthProfile};
pub use monoid::NumericalMonoid;
