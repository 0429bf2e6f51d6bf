//! Closed rational intervals, used wherever a certified enclosure of an
//! irrational quantity (square roots, moduli) has to be compared exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::rat::{fmt_rat, to_f64, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi, "empty interval");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        RatInterval::new(&self.lo + r, &self.hi + r)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_negative() {
            RatInterval::new(&self.hi * r, &self.lo * r)
        } else {
            RatInterval::new(&self.lo * r, &self.hi * r)
        }
    }

    /// Certified enclosure of `√x` (x >= 0) of width at most `width`.
    /// Exact squares give a point interval.
    pub fn sqrt(x: &Rat, width: &Rat) -> Self {
        assert!(!x.is_negative(), "sqrt of a negative rational");
        if x.is_zero() {
            return Self::point(Rat::zero());
        }
        // √(p/q) = √(p q) / q
        let p = x.numer();
        let q = x.denom();
        let pq = p * q;
        let s = pq.sqrt();
        if &s * &s == pq {
            return Self::point(Rat::new(s, q.clone()));
        }
        // Choose k with 1 / (q 2^k) <= width.
        let mut k = 0usize;
        let target = Rat::one() / width;
        while Rat::from_integer(q * (BigInt::one() << k)) < target {
            k += 1;
        }
        let scaled = pq << (2 * k);
        let s = scaled.sqrt();
        let den = q << k;
        RatInterval::new(Rat::new(s.clone(), den.clone()), Rat::new(s + 1, den))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.mid())
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", to_f64(&self.lo), to_f64(&self.hi))
    }
}

impl Serialize for RatInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RatInterval", 2)?;
        st.serialize_field("lo", &fmt_rat(&self.lo))?;
        st.serialize_field("hi", &fmt_rat(&self.hi))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};

    #[test]
    fn sqrt_enclosure_width_and_containment() {
        let w = rat(1, 1_000_000_000_000);
        let iv = RatInterval::sqrt(&int(15), &w);
        assert!(iv.width() <= w);
        assert!(&iv.lo * &iv.lo < int(15) && int(15) < &iv.hi * &iv.hi);
        assert_eq!(RatInterval::sqrt(&rat(9, 4), &w), RatInterval::point(rat(3, 2)));
    }
}
