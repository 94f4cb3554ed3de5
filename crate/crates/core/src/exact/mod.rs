//! Exact arithmetic over the rationals: scalars, polynomials, and linear algebra.

pub mod matrix;
pub mod poly;
pub mod rational;

pub use matrix::{
    in_row_space, linear_solve, null_space, row_space_basis, rref, LinearSolution, RatMatrix,
    Rref,
};
pub use poly::{NestedPoly, Poly, PolyClass, Ring};
pub use rational::{binomial, Rational};
