//! Exact arithmetic: rationals, Laurent polynomials, and linear algebra.

pub mod laurent;
pub mod matrix;
pub mod rational;
pub mod sparse;

pub use laurent::{laurent_derivative, laurent_mul, parse_laurent, LaurentPoly};
pub use matrix::{in_span, quotient_coordinates, RationalMatrix, RowOp, RowReduction};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
