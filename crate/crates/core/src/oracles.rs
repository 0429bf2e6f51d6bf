//! Independent constructions of the recurrence polynomials: hook-length sums,
//! formal exponentials and geometric series in `(q, z)`, and classical closed
//! forms. None of them uses the recurrence.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{int, ArithFn, Rat};
use crate::error::{Error, Result};
use crate::polyrec::RationalPoly;

pub const PARTITION_HORIZON: usize = 40;
pub const NEKRASOV_OKOUNKOV_HORIZON: usize = 20;

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Rejects parts that are zero or not weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The transposed diagram: `λ'_j = #{i : λ_i ≥ j}`.
    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }
}

/// Hook lengths of a diagram, one per cell, in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HookMultiset {
    pub hooks: Vec<u32>,
}

/// All partitions of `n`, each once, in increasing lexicographic order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    if n > PARTITION_HORIZON {
        return Err(Error::Resource(format!(
            "partition enumeration is limited to n <= {PARTITION_HORIZON}, got {n}"
        )));
    }
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for first in 1..=rest.min(max) {
            prefix.push(first);
            rec(rest - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    Ok(out)
}

pub fn hooks(lambda: &Partition) -> HookMultiset {
    let conj = lambda.conjugate();
    let mut hooks = Vec::with_capacity(lambda.size() as usize);
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row as usize {
            hooks.push(row - j as u32 + conj.parts[j] - i as u32 - 1);
        }
    }
    hooks.sort_unstable_by(|a, b| b.cmp(a));
    HookMultiset { hooks }
}

/// `Σ_{λ ⊢ n} ∏_{h ∈ H(λ)} (1 + (z − 1)/h²)`, expanded in `z`.
pub fn nekrasov_okounkov_poly(n: usize) -> Result<RationalPoly> {
    if n > NEKRASOV_OKOUNKOV_HORIZON {
        return Err(Error::Resource(format!(
            "hook-length sums are limited to n <= {NEKRASOV_OKOUNKOV_HORIZON}, got {n}"
        )));
    }
    let mut total = RationalPoly::zero();
    for lambda in enumerate_partitions(n)? {
        // ∏ (z + h² − 1) over the integers, then one division by ∏ h².
        let mut num = vec![BigInt::one()];
        let mut den = BigInt::one();
        for h in hooks(&lambda).hooks {
            let h2 = BigInt::from(h) * BigInt::from(h);
            let c = &h2 - 1;
            let mut next = vec![BigInt::zero(); num.len() + 1];
            for (k, a) in num.iter().enumerate() {
                next[k] += a * &c;
                next[k + 1] += a;
            }
            num = next;
            den *= h2;
        }
        let term = RationalPoly::new(num.into_iter().map(|a| Rat::new(a, den.clone())).collect());
        total = &total + &term;
    }
    Ok(total)
}

/// A truncated power series in `q` with polynomial coefficients in `z`.
type Series = Vec<RationalPoly>;

fn series_mul(a: &Series, b: &Series, order: usize) -> Series {
    let mut out = vec![RationalPoly::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if !bj.is_zero() {
                out[i + j] = &out[i + j] + &(ai * bj);
            }
        }
    }
    out
}

/// `Σ_{j=0..n} weight(j) · A^j`, truncated at `q^n`, for `A` without constant term.
fn power_sum(inner: &Series, n: usize, weight: impl Fn(usize) -> Rat) -> Series {
    let mut total: Series = vec![RationalPoly::zero(); n + 1];
    let mut power: Series = vec![RationalPoly::zero(); n + 1];
    power[0] = RationalPoly::one();
    for j in 0..=n {
        let w = weight(j);
        for (t, p) in total.iter_mut().zip(&power) {
            *t = &*t + &p.scale(&w);
        }
        power = series_mul(&power, inner, n);
    }
    total
}

fn inner_series(g: &ArithFn, n: usize, divide_by_index: bool) -> Result<Series> {
    let mut s = vec![RationalPoly::zero(); n + 1];
    for (m, slot) in s.iter_mut().enumerate().skip(1) {
        let mut c = g.eval(m as u64)?;
        if divide_by_index {
            c /= int(m as i64);
        }
        *slot = RationalPoly::x().scale(&c);
    }
    Ok(s)
}

/// Coefficient of `q^n` in `exp(z · Σ g(m) q^m / m)`.
pub fn exp_series_poly(g: &ArithFn, n: usize) -> Result<RationalPoly> {
    let inner = inner_series(g, n, true)?;
    let mut fact = Rat::one();
    let mut inv_fact = vec![Rat::one()];
    for j in 1..=n {
        fact *= int(j as i64);
        inv_fact.push(Rat::one() / &fact);
    }
    let s = power_sum(&inner, n, |j| inv_fact[j].clone());
    Ok(s[n].clone())
}

/// Coefficient of `q^n` in `1 / (1 − z · Σ g(m) q^m)`.
pub fn reciprocal_series_poly(g: &ArithFn, n: usize) -> Result<RationalPoly> {
    let inner = inner_series(g, n, false)?;
    let s = power_sum(&inner, n, |_| Rat::one());
    Ok(s[n].clone())
}

/// `x (x + h(1)) ··· (x + h(n−1)) / (h(1) ··· h(n))`.
pub fn toy_closed_form(h: &ArithFn, n: usize) -> Result<RationalPoly> {
    if n == 0 {
        return Ok(RationalPoly::one());
    }
    h.check_monotone_positive(n as u64)?;
    let mut p = RationalPoly::x();
    let mut den = h.eval(n as u64)?;
    for j in 1..n {
        let hj = h.eval(j as u64)?;
        p = &p * &RationalPoly::new(vec![hj.clone(), Rat::one()]);
        den *= hj;
    }
    Ok(p.scale(&(Rat::one() / den)))
}

/// `C(a, m)` for rational `a`.
fn binom_rat(a: &Rat, m: usize) -> Rat {
    let mut r = Rat::one();
    for i in 0..m {
        r = r * (a - int(i as i64)) / int(i as i64 + 1);
    }
    r
}

/// `L_n^{(α)}(x) = Σ_{k=0..n} C(n + α, n − k) (−x)^k / k!`.
pub fn laguerre(n: usize, alpha: &Rat) -> RationalPoly {
    let top = alpha + int(n as i64);
    let mut fact = Rat::one();
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            fact *= int(k as i64);
        }
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        coeffs.push(binom_rat(&top, n - k) * sign / &fact);
    }
    RationalPoly::new(coeffs)
}

/// `U_n` by `U_0 = 1`, `U_1 = 2x`, `U_{n+1} = 2x U_n − U_{n−1}`.
pub fn chebyshev_u(n: usize) -> RationalPoly {
    let two_x = RationalPoly::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (RationalPoly::one(), two_x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `U_n` read off from `1 / (1 − 2xq + q²) = Σ_j (2xq − q²)^j`.
pub fn chebyshev_u_from_series(n: usize) -> RationalPoly {
    let inner: Series = (0..=n)
        .map(|k| match k {
            1 => RationalPoly::from_ints(&[0, 2]),
            2 => RationalPoly::from_ints(&[-1]),
            _ => RationalPoly::zero(),
        })
        .collect();
    power_sum(&inner, n, |_| Rat::one())[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;
    use crate::polyrec::build_sequence;

    fn parts(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn count_partitions(n: usize, max: usize) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=n.min(max)).map(|k| count_partitions(n - k, k)).sum()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(enumerate_partitions(0).unwrap(), vec![parts(&[])]);
        assert_eq!(enumerate_partitions(4).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(10).unwrap().len(), 42);
        for n in 0..=20 {
            assert_eq!(enumerate_partitions(n).unwrap().len(), count_partitions(n, n));
        }
        assert!(matches!(enumerate_partitions(41), Err(Error::Resource(_))));
    }

    #[test]
    fn partitions_are_sorted_and_valid() {
        let ps = enumerate_partitions(12).unwrap();
        for w in ps.windows(2) {
            assert!(w[0].parts < w[1].parts);
        }
        for p in &ps {
            assert_eq!(p.size(), 12);
            assert!(Partition::new(p.parts.clone()).is_ok());
        }
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hooks(&parts(&[1])).hooks, vec![1]);
        assert_eq!(hooks(&parts(&[2, 1])).hooks, vec![3, 1, 1]);
        assert_eq!(hooks(&parts(&[2, 2])).hooks, vec![3, 2, 2, 1]);
        for p in enumerate_partitions(9).unwrap() {
            assert_eq!(hooks(&p).hooks.len(), p.size() as usize);
            assert_eq!(p.conjugate().conjugate(), p);
        }
    }

    #[test]
    fn nekrasov_okounkov_examples() {
        assert_eq!(nekrasov_okounkov_poly(0).unwrap(), RationalPoly::one());
        assert_eq!(nekrasov_okounkov_poly(1).unwrap(), RationalPoly::x());
        assert_eq!(
            nekrasov_okounkov_poly(2).unwrap(),
            RationalPoly::new(vec![int(0), rat(3, 2), rat(1, 2)])
        );
        assert!(nekrasov_okounkov_poly(21).is_err());
    }

    #[test]
    fn series_examples() {
        let s = ArithFn::sigma();
        assert_eq!(exp_series_poly(&s, 1).unwrap(), RationalPoly::x());
        let p3 = RationalPoly::from_roots(&[int(0), int(-1), int(-8)]).scale(&rat(1, 6));
        assert_eq!(exp_series_poly(&s, 3).unwrap(), p3);
        assert_eq!(
            exp_series_poly(&ArithFn::id(), 2).unwrap(),
            RationalPoly::new(vec![int(0), int(1), rat(1, 2)])
        );
        assert_eq!(reciprocal_series_poly(&ArithFn::id(), 1).unwrap(), RationalPoly::x());
        assert_eq!(
            reciprocal_series_poly(&ArithFn::id(), 2).unwrap(),
            RationalPoly::from_ints(&[0, 2, 1])
        );
        assert_eq!(reciprocal_series_poly(&ArithFn::sigma3(), 1).unwrap(), RationalPoly::x());
        assert_eq!(exp_series_poly(&s, 0).unwrap(), RationalPoly::one());
    }

    #[test]
    fn toy_examples() {
        assert_eq!(
            toy_closed_form(&ArithFn::id(), 2).unwrap(),
            RationalPoly::new(vec![int(0), rat(1, 2), rat(1, 2)])
        );
        assert_eq!(toy_closed_form(&ArithFn::square(), 0).unwrap(), RationalPoly::one());
        let one3 = toy_closed_form(&ArithFn::one(), 3).unwrap();
        assert_eq!(one3, RationalPoly::from_roots(&[int(0), int(-1), int(-1)]));
        let seq = build_sequence(&ArithFn::one(), &ArithFn::one(), 3).unwrap();
        assert_eq!(seq.get(3).unwrap(), &one3);
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, &int(1)), RationalPoly::one());
        assert_eq!(laguerre(1, &int(1)), RationalPoly::from_ints(&[2, -1]));
        let lhs = laguerre(3, &int(1))
            .compose(&RationalPoly::from_ints(&[0, -1]))
            .shift(1)
            .scale(&rat(1, 4));
        let seq = build_sequence(&ArithFn::id(), &ArithFn::id(), 4).unwrap();
        assert_eq!(seq.get(4).unwrap(), &lhs);
        // L_2^{(0)} = 1 − 2x + x²/2.
        assert_eq!(laguerre(2, &int(0)), RationalPoly::new(vec![int(1), int(-2), rat(1, 2)]));
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_u(0), RationalPoly::one());
        assert_eq!(chebyshev_u(1), RationalPoly::from_ints(&[0, 2]));
        for n in 0..=20 {
            assert_eq!(chebyshev_u(n), chebyshev_u_from_series(n));
        }
        let shifted = chebyshev_u(2)
            .compose(&RationalPoly::new(vec![int(1), rat(1, 2)]))
            .shift(1);
        let seq = build_sequence(&ArithFn::id(), &ArithFn::one(), 3).unwrap();
        assert_eq!(seq.get(3).unwrap(), &shifted);
    }
}
