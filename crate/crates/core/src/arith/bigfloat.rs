//! Binary floating point with arbitrary mantissa length.
//!
//! A value is `mant · 2^exp`. Every operation takes the target precision in
//! bits and a rounding direction; nothing is ambient. The `*_flagged` forms
//! also report whether rounding actually lost information, which is what the
//! running error bounds in polynomial evaluation are built from.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Nearest,
    /// Toward −∞.
    Down,
    /// Toward +∞.
    Up,
}

impl Round {
    fn negate(self) -> Self {
        match self {
            Round::Nearest => Round::Nearest,
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// Equality and ordering compare values, not representations.
#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// Rounds the magnitude `mag` (value `mag · 2^exp`) to `prec` bits.
/// `negative` selects which way the directed modes go.
fn round_mag(mag: BigUint, exp: i64, prec: u32, rnd: Round, negative: bool) -> (BigUint, i64, bool) {
    let bits = mag.bits();
    if bits <= prec as u64 {
        return (mag, exp, false);
    }
    let shift = bits - prec as u64;
    let q = &mag >> shift;
    let rem = &mag - (&q << shift);
    if rem.is_zero() {
        return (q, exp + shift as i64, false);
    }
    let rnd = if negative { rnd.negate() } else { rnd };
    let up = match rnd {
        Round::Down => false,
        Round::Up => true,
        Round::Nearest => {
            let half = BigUint::one() << (shift - 1);
            match rem.cmp(&half) {
                Ordering::Less => false,
                Ordering::Greater => true,
                Ordering::Equal => q.is_odd(),
            }
        }
    };
    let q = if up { q + 1u32 } else { q };
    (q, exp + shift as i64, true)
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        BigFloat { mant: BigInt::one(), exp: 0 }
    }

    /// Exact `mant · 2^exp`.
    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        BigFloat { mant, exp }
    }

    pub fn from_int(n: i64) -> Self {
        BigFloat { mant: BigInt::from(n), exp: 0 }
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        BigFloat { mant: BigInt::one(), exp: e }
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if e == 0 { (frac, -1074) } else { (frac | (1u64 << 52), e - 1075) };
        BigFloat { mant: BigInt::from(m) * sign, exp: e }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// `t` with `|self| < 2^t`; `i64::MIN` for zero.
    pub fn top(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    /// Upper bound on the rounding error committed when this value was
    /// produced by an inexact operation at its own precision: one unit in the
    /// last place.
    pub fn ulp(&self) -> BigFloat {
        BigFloat::pow2(self.exp)
    }

    pub fn round_flagged(mant: BigInt, exp: i64, prec: u32, rnd: Round) -> (Self, bool) {
        let (sign, mag) = mant.into_parts();
        let negative = sign == Sign::Minus;
        let (mag, exp, inexact) = round_mag(mag, exp, prec, rnd, negative);
        let mant = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, mag);
        if mant.is_zero() {
            return (Self::zero(), inexact);
        }
        (BigFloat { mant, exp }, inexact)
    }

    pub fn round(&self, prec: u32, rnd: Round) -> Self {
        Self::round_flagged(self.mant.clone(), self.exp, prec, rnd).0
    }

    /// Rounded conversion; with `Round::Nearest` the relative error is at most `2^-prec`.
    pub fn from_rat_flagged(r: &Rat, prec: u32, rnd: Round) -> (Self, bool) {
        if r.is_zero() {
            return (Self::zero(), false);
        }
        let num = r.numer();
        let den = r.denom();
        // Scale so the integer quotient carries at least prec + 2 bits.
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let (n, d) = if shift >= 0 {
            (num.abs() << shift as usize, den.clone())
        } else {
            (num.abs(), den << (-shift) as usize)
        };
        let (q, rem) = n.div_rem(&d);
        // A sticky bit below the quotient keeps directed and nearest rounding exact.
        let (mant, exp) = if rem.is_zero() { (q, -shift) } else { ((q << 1usize) + 1, -shift - 1) };
        let mant = if num.is_negative() { -mant } else { mant };
        let (v, inexact) = Self::round_flagged(mant, exp, prec, rnd);
        (v, inexact || !rem.is_zero())
    }

    pub fn from_rat(r: &Rat, prec: u32, rnd: Round) -> Self {
        Self::from_rat_flagged(r, prec, rnd).0
    }

    pub fn from_bigint(n: &BigInt, prec: u32, rnd: Round) -> Self {
        Self::round_flagged(n.clone(), 0, prec, rnd).0
    }

    /// Exact value as a rational.
    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as usize)
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.mant >> drop as usize).to_f64().unwrap_or(0.0);
        let e = self.exp + drop;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // Split the scaling so intermediate powers stay finite.
        let half = e / 2;
        m * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn add_flagged(&self, other: &Self, prec: u32, rnd: Round) -> (Self, bool) {
        if other.is_zero() {
            return Self::round_flagged(self.mant.clone(), self.exp, prec, rnd);
        }
        if self.is_zero() {
            return Self::round_flagged(other.mant.clone(), other.exp, prec, rnd);
        }
        let (big, small) = if self.top() >= other.top() { (self, other) } else { (other, self) };
        // When the smaller operand sits entirely below a quarter ulp of a
        // representable larger operand, replace it by a sticky bit of the same
        // sign; the rounded sum is unchanged in every mode.
        let lsb_ok = big.exp >= big.top() - prec as i64;
        let sticky_pos = big.top() - prec as i64 - 4;
        if lsb_ok && small.top() <= sticky_pos {
            let sticky = if small.is_negative() { -BigInt::one() } else { BigInt::one() };
            let shift = (big.exp - (sticky_pos - 1)) as usize;
            let mant = (&big.mant << shift) + sticky;
            let (v, _) = Self::round_flagged(mant, sticky_pos - 1, prec, rnd);
            return (v, true);
        }
        let exp = big.exp.min(small.exp);
        let a = &big.mant << (big.exp - exp) as usize;
        let b = &small.mant << (small.exp - exp) as usize;
        Self::round_flagged(a + b, exp, prec, rnd)
    }

    pub fn add(&self, other: &Self, prec: u32, rnd: Round) -> Self {
        self.add_flagged(other, prec, rnd).0
    }

    pub fn sub_flagged(&self, other: &Self, prec: u32, rnd: Round) -> (Self, bool) {
        self.add_flagged(&other.neg(), prec, rnd)
    }

    pub fn sub(&self, other: &Self, prec: u32, rnd: Round) -> Self {
        self.sub_flagged(other, prec, rnd).0
    }

    pub fn mul_flagged(&self, other: &Self, prec: u32, rnd: Round) -> (Self, bool) {
        Self::round_flagged(&self.mant * &other.mant, self.exp + other.exp, prec, rnd)
    }

    pub fn mul(&self, other: &Self, prec: u32, rnd: Round) -> Self {
        self.mul_flagged(other, prec, rnd).0
    }

    /// Exact product (no rounding).
    pub fn mul_exact(&self, other: &Self) -> Self {
        BigFloat { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    /// Exact sum (no rounding).
    pub fn add_exact(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as usize;
        let b = &other.mant << (other.exp - exp) as usize;
        BigFloat { mant: a + b, exp }
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.neg())
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        BigFloat { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Panics on division by zero.
    pub fn div_flagged(&self, other: &Self, prec: u32, rnd: Round) -> (Self, bool) {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return (Self::zero(), false);
        }
        let negative = self.is_negative() != other.is_negative();
        let n = self.mant.magnitude();
        let d = other.mant.magnitude();
        let shift = (prec as i64 + 2 + d.bits() as i64 - n.bits() as i64).max(0);
        let (q, rem) = (n << shift as usize).div_rem(d);
        let (q, e) = if rem.is_zero() {
            (q, self.exp - other.exp - shift)
        } else {
            ((q << 1usize) + 1u32, self.exp - other.exp - shift - 1)
        };
        let (mag, exp, inexact) = round_mag(q, e, prec, rnd, negative);
        let mant = BigInt::from_biguint(if negative { Sign::Minus } else { Sign::Plus }, mag);
        (BigFloat { mant, exp }, inexact || !rem.is_zero())
    }

    pub fn div(&self, other: &Self, prec: u32, rnd: Round) -> Self {
        self.div_flagged(other, prec, rnd).0
    }

    /// Square root of a non-negative value; panics on negative input.
    pub fn sqrt(&self, prec: u32, rnd: Round) -> Self {
        assert!(!self.is_negative(), "BigFloat sqrt of a negative value");
        if self.is_zero() {
            return Self::zero();
        }
        let mut m = self.mant.magnitude().clone();
        let mut e = self.exp;
        let want = 2 * (prec as i64 + 2);
        let mut shift = (want - m.bits() as i64).max(0);
        if (e - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        m <<= shift as usize;
        e -= shift;
        let s = m.sqrt();
        let exact = &s * &s == m;
        let (s, e) = if exact { (s, e / 2) } else { ((s << 1usize) + 1u32, e / 2 - 1) };
        let (mag, exp, _) = round_mag(s, e, prec, rnd, false);
        BigFloat { mant: BigInt::from_biguint(Sign::Plus, mag), exp }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (a, b) if a != b => return a.cmp(&b),
            (Sign::NoSign, _) => return Ordering::Equal,
            _ => {}
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as usize;
        let b = &other.mant << (other.exp - exp) as usize;
        a.cmp(&b)
    }
}

/// Complex value with `BigFloat` parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero() -> Self {
        BigComplex::new(BigFloat::zero(), BigFloat::zero())
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        BigComplex::new(BigFloat::from_f64(re), BigFloat::from_f64(im))
    }

    pub fn from_rats(re: &Rat, im: &Rat, prec: u32) -> Self {
        BigComplex::new(
            BigFloat::from_rat(re, prec, Round::Nearest),
            BigFloat::from_rat(im, prec, Round::Nearest),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        BigComplex::new(self.re.add(&o.re, prec, Round::Nearest), self.im.add(&o.im, prec, Round::Nearest))
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        BigComplex::new(self.re.sub(&o.re, prec, Round::Nearest), self.im.sub(&o.im, prec, Round::Nearest))
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        // Products are formed exactly and rounded once per component.
        let re = self.re.mul_exact(&o.re).sub(&self.im.mul_exact(&o.im), prec, Round::Nearest);
        let im = self.re.mul_exact(&o.im).add(&self.im.mul_exact(&o.re), prec, Round::Nearest);
        BigComplex::new(re, im)
    }

    pub fn norm_sqr(&self, prec: u32) -> BigFloat {
        self.re.mul_exact(&self.re).add(&self.im.mul_exact(&self.im), prec, Round::Nearest)
    }

    /// Upper bound of `|self|` (all operations rounded upward).
    pub fn abs_upper(&self, prec: u32) -> BigFloat {
        let n = self.re.mul_exact(&self.re).add(&self.im.mul_exact(&self.im), prec, Round::Up);
        n.sqrt(prec, Round::Up)
    }

    pub fn abs(&self, prec: u32) -> BigFloat {
        self.norm_sqr(prec + 4).sqrt(prec, Round::Nearest)
    }

    /// Panics when dividing by zero.
    pub fn div(&self, o: &Self, prec: u32) -> Self {
        let wp = prec + 8;
        let den = o.norm_sqr(wp);
        let re = self.re.mul_exact(&o.re).add(&self.im.mul_exact(&o.im), wp, Round::Nearest);
        let im = self.im.mul_exact(&o.re).sub(&self.re.mul_exact(&o.im), wp, Round::Nearest);
        BigComplex::new(re.div(&den, prec, Round::Nearest), im.div(&den, prec, Round::Nearest))
    }

    pub fn round(&self, prec: u32) -> Self {
        BigComplex::new(self.re.round(prec, Round::Nearest), self.im.round(prec, Round::Nearest))
    }
}
