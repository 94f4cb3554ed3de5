//! Exact construction and verification of the 2-dimensional topological
//! loops whose left translations generate an elementary filiform Lie group.
//!
//! All arithmetic is over the rationals, so every check is an exact
//! polynomial or linear-algebra identity.

pub mod algebra;
pub mod error;
pub mod group;
pub mod loops;
pub mod mult;
pub mod report;
pub mod sample;
pub mod exact;

pub use error::{Error, Result};
pub use exact::{NestedPoly, Poly, PolyClass, RatMatrix, Rational};
pub use report::{Certificate, Report};
