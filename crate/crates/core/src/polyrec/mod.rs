//! The recurrence engine and the polynomial type it produces.

pub mod poly;
pub mod sequence;

pub use poly::{eval_homogeneous, Enclosed, PolyJson, RationalPoly};
pub use sequence::{build_sequence, eval_sequence, PolySequence};
