//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rat::{common_denominator, fmt_rat, parse_rat, Rat};
use crate::arith::{BigComplex, BigFloat, Round};
use crate::error::{Error, Result};

/// Coefficients are stored constant term first; the last stored coefficient
/// is nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rat>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn from_bigints(cs: &[BigInt]) -> Self {
        Self::new(cs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    /// Expands `∏ (x − r)`.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Self::new(vec![-r.clone(), Rat::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rat::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        RationalPoly { coeffs: c }
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Exact evaluation at the Gaussian rational `re + i·im`.
    ///
    /// Runs Horner's scheme over Gaussian integers on the homogenized form
    /// `Σ c_k a^k b^(n−k)` with `x = a/b`, and divides once at the end.
    pub fn eval_gaussian(&self, re: &Rat, im: &Rat) -> (Rat, Rat) {
        let Some(n) = self.degree() else {
            return (Rat::zero(), Rat::zero());
        };
        let den_c = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den_c.clone())).to_integer())
            .collect();
        let b = re.denom().lcm(im.denom());
        let ar = (re * Rat::from_integer(b.clone())).to_integer();
        let ai = (im * Rat::from_integer(b.clone())).to_integer();
        let (hr, hi) = eval_homogeneous(&ints, &ar, &ai, &b);
        let scale = den_c * num_traits::pow(b, n);
        (Rat::new(hr, scale.clone()), Rat::new(hi, scale))
    }

    /// Formal derivative of the given order.
    pub fn derivative(&self, order: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..order {
            if p.coeffs.len() <= 1 {
                return Self::zero();
            }
            p = Self::new(
                p.coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
                    .collect(),
            );
        }
        p
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * q) + &Self::constant(c.clone()))
    }

    /// Quotient and remainder over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quo[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quo), Self::new(rem))
    }

    /// The primitive integer polynomial with the same roots: denominators
    /// cleared, content removed, positive leading coefficient.
    pub fn primitive_part(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = common_denominator(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// Evaluation at a complex point in `precision`-bit floating point with a
    /// rigorous bound on the accumulated rounding error.
    ///
    /// The bound is a running error bound of Horner's scheme: each rounding
    /// that actually loses information contributes one ulp of the rounded
    /// quantity, and earlier errors are propagated by `|x|`. Operations that
    /// happen to be exact contribute nothing.
    pub fn eval_complex(&self, x: &BigComplex, precision: u32) -> Result<Enclosed> {
        if precision < 53 {
            return Err(Error::Domain(format!("precision {precision} below 53 bits")));
        }
        let p = precision;
        let up = Round::Up;
        let xabs = x.abs_upper(p);
        let mut s = BigComplex::zero();
        let mut err = BigFloat::zero();
        for c in self.coeffs.iter().rev() {
            let (cf, c_inexact) = BigFloat::from_rat_flagged(c, p, Round::Nearest);
            // s·x, componentwise products then a rounded sum per component.
            let (rr, e1) = s.re.mul_flagged(&x.re, p, Round::Nearest);
            let (ii, e2) = s.im.mul_flagged(&x.im, p, Round::Nearest);
            let (ri, e3) = s.re.mul_flagged(&x.im, p, Round::Nearest);
            let (ir, e4) = s.im.mul_flagged(&x.re, p, Round::Nearest);
            let (pre, e5) = rr.sub_flagged(&ii, p, Round::Nearest);
            let (pim, e6) = ri.add_flagged(&ir, p, Round::Nearest);
            let (nre, e7) = pre.add_flagged(&cf, p, Round::Nearest);
            let mut local = BigFloat::zero();
            for (flag, v) in [
                (e1, &rr),
                (e2, &ii),
                (e3, &ri),
                (e4, &ir),
                (e5, &pre),
                (e6, &pim),
                (e7, &nre),
                (c_inexact, &cf),
            ] {
                if flag {
                    local = local.add(&v.ulp(), p, up);
                }
            }
            err = err.mul(&xabs, p, up).add(&local, p, up);
            s = BigComplex::new(nre, pim);
        }
        Ok(Enclosed { value: s, radius: err })
    }

    pub fn to_json(&self, n: usize) -> PolyJson {
        PolyJson { n, coeffs: self.coeffs.iter().map(fmt_rat).collect() }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        Ok(Self::new(j.coeffs.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?))
    }
}

/// `Σ c_k (ar + i·ai)^k b^(n−k)` over the Gaussian integers, `n = len − 1`.
pub fn eval_homogeneous(coeffs: &[BigInt], ar: &BigInt, ai: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let Some(n) = coeffs.len().checked_sub(1) else {
        return (BigInt::zero(), BigInt::zero());
    };
    let mut bpow = vec![BigInt::one()];
    for j in 1..=n {
        let next = &bpow[j - 1] * b;
        bpow.push(next);
    }
    let mut sr = coeffs[n].clone();
    let mut si = BigInt::zero();
    for k in (0..n).rev() {
        let nr = &sr * ar - &si * ai + &coeffs[k] * &bpow[n - k];
        let ni = &sr * ai + &si * ar;
        sr = nr;
        si = ni;
    }
    (sr, si)
}

/// A floating-point value together with a rigorous error radius.
#[derive(Clone, Debug)]
pub struct Enclosed {
    pub value: BigComplex,
    pub radius: BigFloat,
}

impl Enclosed {
    /// Whether the disk around `value` contains the Gaussian rational `re + i·im`.
    pub fn contains(&self, re: &Rat, im: &Rat) -> bool {
        let dr = self.value.re.to_rat() - re;
        let di = self.value.im.to_rat() - im;
        let r = self.radius.to_rat();
        &dr * &dr + &di * &di <= &r * &r
    }
}

/// JSON shape of a polynomial: exact `"num/den"` strings, never floats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub coeffs: Vec<String>,
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = !a.is_one() || k == 0;
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({}/{})", a.numer(), a.denom())?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, o: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, o: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, o: &RationalPoly) -> RationalPoly {
        if self.is_zero() || o.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};

    fn p2() -> RationalPoly {
        // x(x+3)/2
        RationalPoly::new(vec![int(0), rat(3, 2), rat(1, 2)])
    }

    fn p3() -> RationalPoly {
        // x(x+1)(x+8)/6
        RationalPoly::from_roots(&[int(0), int(-1), int(-8)]).scale(&rat(1, 6))
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = RationalPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(RationalPoly::from_ints(&[0, 0]).is_zero());
    }

    #[test]
    fn horner_examples() {
        assert_eq!(p2().eval(&int(-3)), int(0));
        assert_eq!(RationalPoly::one().eval(&rat(7, 5)), int(1));
        assert_eq!(RationalPoly::x().eval(&int(-24)), int(-24));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p2().derivative(1), RationalPoly::new(vec![rat(3, 2), int(1)]));
        assert!(RationalPoly::one().derivative(1).is_zero());
        assert_eq!(p3().derivative(0), p3());
        assert!(p3().derivative(4).is_zero());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p3();
        let b = RationalPoly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(&(&q * &b) + &r, a);
        let (q, r) = p3().div_rem(&RationalPoly::from_ints(&[5, 0, 2]));
        assert_eq!(&(&q * &RationalPoly::from_ints(&[5, 0, 2])) + &r, p3());
    }

    #[test]
    fn primitive_part_clears_denominators() {
        assert_eq!(
            p3().primitive_part(),
            vec![BigInt::from(0), BigInt::from(8), BigInt::from(9), BigInt::from(1)]
        );
        let neg = p2().scale(&rat(-4, 3));
        assert_eq!(neg.primitive_part(), vec![BigInt::from(0), BigInt::from(3), BigInt::from(1)]);
    }

    #[test]
    fn complex_eval_examples() {
        // P_1 = x at i: exact, zero radius.
        let e = RationalPoly::x().eval_complex(&BigComplex::from_f64(0.0, 1.0), 64).unwrap();
        assert_eq!(e.value, BigComplex::from_f64(0.0, 1.0));
        assert!(e.radius.is_zero());
        let e = p2().eval_complex(&BigComplex::from_f64(-3.0, 0.0), 64).unwrap();
        assert!(e.contains(&int(0), &int(0)));
        let e = p3().eval_complex(&BigComplex::from_f64(-8.0, 0.0), 64).unwrap();
        assert!(e.contains(&int(0), &int(0)));
        assert!(p3().eval_complex(&BigComplex::zero(), 32).is_err());
    }

    #[test]
    fn gaussian_eval_matches_plain_horner() {
        let p = p3().scale(&rat(5, 7));
        let (re, im) = (rat(-3, 4), rat(5, 6));
        let mut sr = Rat::zero();
        let mut si = Rat::zero();
        for c in p.coeffs().iter().rev() {
            let nr = &sr * &re - &si * &im + c;
            si = &sr * &im + &si * &re;
            sr = nr;
        }
        assert_eq!(p.eval_gaussian(&re, &im), (sr, si));
        assert_eq!(RationalPoly::zero().eval_gaussian(&re, &im), (int(0), int(0)));
        assert_eq!(RationalPoly::one().eval_gaussian(&re, &im), (int(1), int(0)));
    }

    #[test]
    fn complex_eval_encloses_exact_value() {
        let p = p3().scale(&rat(1, 7));
        let xr = rat(1, 3);
        let xi = rat(-2, 5);
        let x = BigComplex::from_rats(&xr, &xi, 64);
        let (er, ei) = p.eval_gaussian(&x.re.to_rat(), &x.im.to_rat());
        let e = p.eval_complex(&x, 64).unwrap();
        assert!(!e.radius.is_zero());
        assert!(e.contains(&er, &ei));
    }

    #[test]
    fn json_uses_exact_strings() {
        let j = p2().to_json(2);
        assert_eq!(j.coeffs, vec!["0/1", "3/2", "1/2"]);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"n":2,"coeffs":["0/1","3/2","1/2"]}"#);
        assert_eq!(RationalPoly::from_json(&serde_json::from_str(&text).unwrap()).unwrap(), p2());
    }

    #[test]
    fn display() {
        assert_eq!(p2().to_string(), "(1/2)*x^2 + (3/2)*x");
        assert_eq!(RationalPoly::from_ints(&[-1, 0, 1]).to_string(), "x^2 - 1");
    }
}
