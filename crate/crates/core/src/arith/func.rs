//! Arithmetic functions `g` (recurrence weights) and `h` (normalizers).

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{int, Rat};
use crate::error::{Error, Result};

/// `σ_k(n) = Σ_{d | n} d^k`, by trial division up to `√n` with divisor pairing.
pub fn sigma_k(n: u64, k: u32) -> Result<Rat> {
    if n == 0 {
        return Err(Error::Domain("sigma_k is defined for n >= 1".into()));
    }
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            acc += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    Ok(Rat::from_integer(acc))
}

/// `|σ(k+1) − 3σ(k)|`, the head of the second-order series for `σ`.
pub fn sigma_diff(k: u64) -> Result<Rat> {
    if k == 0 {
        return Err(Error::Domain("sigma_diff is defined for k >= 1".into()));
    }
    Ok((sigma_k(k + 1, 1)? - sigma_k(k, 1)? * int(3)).abs())
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    One,
    Id,
    Square,
    SigmaK(u32),
    Custom(Arc<Vec<Rat>>),
}

/// A named arithmetic function with exact rational values.
///
/// Values are memoized behind a lock, so clones share one cache and the
/// function can be queried from several threads.
#[derive(Clone)]
pub struct ArithFn {
    name: String,
    kind: Kind,
    normalized: bool,
    monotone_positive: bool,
    cache: Arc<RwLock<Vec<Rat>>>,
    verified_monotone: Arc<AtomicU64>,
}

impl fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithFn")
            .field("name", &self.name)
            .field("normalized", &self.normalized)
            .field("monotone_positive", &self.monotone_positive)
            .finish()
    }
}

impl PartialEq for ArithFn {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl ArithFn {
    fn builtin(name: &str, kind: Kind, monotone_positive: bool) -> Self {
        ArithFn {
            name: name.to_string(),
            kind,
            normalized: true,
            monotone_positive,
            cache: Arc::default(),
            verified_monotone: Arc::new(AtomicU64::new(if monotone_positive { u64::MAX } else { 0 })),
        }
    }

    /// `g(n) = 1`.
    pub fn one() -> Self {
        Self::builtin("one", Kind::One, true)
    }

    /// `g(n) = n`.
    pub fn id() -> Self {
        Self::builtin("id", Kind::Id, true)
    }

    /// `g(n) = n²`.
    pub fn square() -> Self {
        Self::builtin("square", Kind::Square, true)
    }

    /// Sum of divisors.
    pub fn sigma() -> Self {
        Self::sigma_k(1)
    }

    pub fn sigma3() -> Self {
        Self::sigma_k(3)
    }

    pub fn sigma_k(k: u32) -> Self {
        let name = match k {
            1 => "sigma".to_string(),
            3 => "sigma3".to_string(),
            _ => format!("sigma{k}"),
        };
        // σ_0 = number of divisors, not monotone; σ_k for k >= 1 is not monotone either
        // (σ(4) = 7 > σ(5) = 6).
        let mut f = Self::builtin(&name, Kind::SigmaK(k), false);
        f.name = name;
        f
    }

    /// A function given by its first `values.len()` values; queries past the list are errors.
    ///
    /// The normalization and monotonicity flags are derived from the values.
    pub fn custom(name: &str, values: Vec<Rat>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain(format!("custom function `{name}` has no values")));
        }
        let normalized = values[0].is_one();
        let monotone_positive = values[0].is_positive() && values.windows(2).all(|w| w[0] <= w[1]);
        Ok(ArithFn {
            name: name.to_string(),
            kind: Kind::Custom(Arc::new(values)),
            normalized,
            monotone_positive,
            cache: Arc::default(),
            verified_monotone: Arc::new(AtomicU64::new(if monotone_positive { u64::MAX } else { 0 })),
        })
    }

    /// Resolves a built-in by name: `one`, `id`, `square`, `sigma`, `sigma3`, `sigma<k>`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "one" | "1" => Ok(Self::one()),
            "id" => Ok(Self::id()),
            "square" => Ok(Self::square()),
            "sigma" => Ok(Self::sigma()),
            _ => {
                if let Some(k) = name.strip_prefix("sigma") {
                    if let Ok(k) = k.parse::<u32>() {
                        return Ok(Self::sigma_k(k));
                    }
                }
                Err(Error::Parse(format!("unknown arithmetic function `{name}`")))
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_monotone_positive(&self) -> bool {
        self.monotone_positive
    }

    /// Largest valid argument, if the function is finite.
    pub fn horizon(&self) -> Option<u64> {
        match &self.kind {
            Kind::Custom(v) => Some(v.len() as u64),
            _ => None,
        }
    }

    fn compute(&self, n: u64) -> Result<Rat> {
        Ok(match &self.kind {
            Kind::One => Rat::one(),
            Kind::Id => Rat::from_integer(BigInt::from(n)),
            Kind::Square => Rat::from_integer(BigInt::from(n) * n),
            Kind::SigmaK(k) => sigma_k(n, *k)?,
            Kind::Custom(v) => v
                .get(n as usize - 1)
                .cloned()
                .ok_or_else(|| Error::Horizon {
                    name: self.name.clone(),
                    horizon: v.len() as u64,
                    index: n,
                })?,
        })
    }

    /// `f(n)` for `n >= 1`.
    pub fn eval(&self, n: u64) -> Result<Rat> {
        if n == 0 {
            return Err(Error::Domain(format!("`{}` evaluated at n = 0", self.name)));
        }
        let idx = n as usize - 1;
        if let Some(v) = self.cache.read().expect("cache lock").get(idx) {
            return Ok(v.clone());
        }
        if let Kind::Custom(v) = &self.kind {
            if idx >= v.len() {
                return self.compute(n);
            }
        }
        let mut cache = self.cache.write().expect("cache lock");
        while cache.len() <= idx {
            let next = cache.len() as u64 + 1;
            let v = self.compute(next)?;
            cache.push(v);
        }
        Ok(cache[idx].clone())
    }

    /// Evaluation in the role of `h`, extended by `h(0) = 0`.
    pub fn eval_h(&self, n: u64) -> Result<Rat> {
        if n == 0 {
            Ok(Rat::zero())
        } else {
            self.eval(n)
        }
    }

    /// Checks `0 < f(1) <= f(2) <= ... <= f(upto)`; the verified horizon is cached.
    pub fn check_monotone_positive(&self, upto: u64) -> Result<()> {
        if upto <= self.verified_monotone.load(Ordering::Acquire) && self.monotone_positive {
            return Ok(());
        }
        let mut prev = Rat::zero();
        for n in 1..=upto {
            let v = self.eval(n)?;
            if !v.is_positive() {
                return Err(Error::Contract {
                    name: self.name.clone(),
                    index: n,
                    reason: format!("value {v} is not positive"),
                });
            }
            if v < prev {
                return Err(Error::Contract {
                    name: self.name.clone(),
                    index: n,
                    reason: format!("value {v} is smaller than the previous value {prev}"),
                });
            }
            prev = v;
        }
        self.verified_monotone.fetch_max(upto, Ordering::AcqRel);
        Ok(())
    }

    /// Integer values `f(1..=n)` when all of them are integers.
    pub fn integer_values(&self, upto: u64) -> Result<Option<Vec<BigInt>>> {
        let mut out = Vec::with_capacity(upto as usize);
        for n in 1..=upto {
            let v = self.eval(n)?;
            if !v.is_integer() {
                return Ok(None);
            }
            out.push(v.to_integer());
        }
        Ok(Some(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;
    use proptest::prelude::*;

    fn brute_sigma(n: u64, k: u32) -> BigInt {
        (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(k)).sum()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_k(1, 1).unwrap(), int(1));
        assert_eq!(sigma_k(2, 3).unwrap(), int(9));
        assert_eq!(sigma_k(6, 1).unwrap(), int(12));
        assert!(sigma_k(0, 1).is_err());
    }

    #[test]
    fn sigma_diff_examples() {
        assert_eq!(sigma_diff(1).unwrap(), int(0));
        assert_eq!(sigma_diff(2).unwrap(), int(5));
        assert_eq!(sigma_diff(12).unwrap(), int(70));
        assert!(sigma_diff(0).is_err());
    }

    #[test]
    fn sigma_matches_brute_force() {
        for k in 0..5 {
            for n in 1..300 {
                assert_eq!(sigma_k(n, k).unwrap().to_integer(), brute_sigma(n, k), "n={n} k={k}");
            }
        }
    }

    /// Certified rational lower bound of `ln x` for `1 <= x <= 2`: the atanh series
    /// `2·Σ y^(2j+1)/(2j+1)`, `y = (x−1)/(x+1) <= 1/3`, has positive terms, so any
    /// truncation under-approximates.
    fn ln_lower_small(x: &Rat) -> Rat {
        let y = (x - Rat::one()) / (x + Rat::one());
        let y2 = &y * &y;
        let mut term = y;
        let mut acc = Rat::zero();
        for j in 0..12 {
            acc += &term / int(2 * j + 1);
            term *= &y2;
        }
        acc * int(2)
    }

    #[test]
    fn sigma_below_log_bound() {
        // σ(n) <= (1 + ln n)·n with ln n = k·ln 2 + ln(n / 2^k) bounded from below.
        let ln2_lo = ln_lower_small(&int(2));
        for n in 1u64..=10_000 {
            let k = 63 - n.leading_zeros() as i64;
            let r = rat(n as i64, 1i64 << k);
            let ln_lo = ln_lower_small(&r) + &ln2_lo * int(k);
            let bound = (Rat::one() + ln_lo) * int(n as i64);
            assert!(sigma_k(n, 1).unwrap() <= bound, "n = {n}");
        }
    }

    #[test]
    fn custom_horizon_is_hard_error() {
        let f = ArithFn::custom("c", vec![int(1), int(5)]).unwrap();
        assert!(f.is_normalized());
        assert_eq!(f.eval(2).unwrap(), int(5));
        assert!(matches!(f.eval(3), Err(Error::Horizon { index: 3, .. })));
    }

    #[test]
    fn monotonicity_contract_names_index() {
        let f = ArithFn::custom("h", vec![int(1), int(3), int(2)]).unwrap();
        assert!(!f.is_monotone_positive());
        match f.check_monotone_positive(3) {
            Err(Error::Contract { index, .. }) => assert_eq!(index, 3),
            other => panic!("{other:?}"),
        }
        assert!(ArithFn::id().check_monotone_positive(50).is_ok());
        assert!(ArithFn::sigma().check_monotone_positive(5).is_err());
    }

    #[test]
    fn h_zero_extension() {
        assert_eq!(ArithFn::id().eval_h(0).unwrap(), int(0));
        assert_eq!(ArithFn::one().eval_h(0).unwrap(), int(0));
    }

    #[test]
    fn registry() {
        assert_eq!(ArithFn::by_name("sigma3").unwrap().eval(2).unwrap(), int(9));
        assert_eq!(ArithFn::by_name("sigma5").unwrap().eval(2).unwrap(), int(33));
        assert!(ArithFn::by_name("bogus").is_err());
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    proptest! {
        #[test]
        fn sigma_k_multiplicative(m in 1u64..400, n in 1u64..400, k in 0u32..4) {
            prop_assume!(gcd(m, n) == 1);
            prop_assert_eq!(sigma_k(m * n, k).unwrap(), sigma_k(m, k).unwrap() * sigma_k(n, k).unwrap());
        }

        #[test]
        fn rational_round_trip(a in any::<i128>(), b in 1i128.., c in any::<i128>(), d in 1i128..) {
            let x = Rat::new(BigInt::from(a) * BigInt::from(a), BigInt::from(b));
            let y = Rat::new(BigInt::from(c) * BigInt::from(b), BigInt::from(d));
            prop_assert_eq!((&x + &y) - &y, x);
        }
    }
}
