//! Exact computations with split supermanifolds of dimension 1|m over the
//! complex projective line: Laurent-coefficient vector fields on the two
//! standard charts, first Čech cohomology of the graded tangent sheaf, the
//! three `sl₂` subalgebras of global vector fields, bundle automorphisms and
//! the resulting classification of even-homogeneous structures for m ≤ 3.

pub mod algebra;
pub mod automorphism;
pub mod classify;
pub mod cohomology;
pub mod error;
pub mod parse;
pub mod sl2;
pub mod superfield;
pub mod transition;

pub use error::{Error, Result};
