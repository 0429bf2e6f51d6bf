//! Recurrence polynomials attached to arithmetic functions, certified
//! non-vanishing constants, zero location, and the η-quotient applications.

pub mod arith;
pub mod bounds;
pub mod error;
pub mod eta;
pub mod oracles;
pub mod par;
pub mod polyrec;
pub mod suites;
pub mod tables;
pub mod zeros;

pub use error::{Error, Result};
