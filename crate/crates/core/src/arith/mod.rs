//! Exact number tower and the arithmetic-function registry.

pub mod bigfloat;
pub mod func;
pub mod interval;
pub mod rat;

pub use bigfloat::{BigComplex, BigFloat, Round};
pub use func::{sigma_diff, sigma_k, ArithFn};
pub use interval::RatInterval;
pub use rat::{fmt_rat, int, parse_rat, rat, to_decimal, Rat};
