//! Exact real-root isolation on primitive integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Rat, RatInterval};
use crate::polyrec::RationalPoly;

/// Integer coefficients, constant term first, trimmed.
pub type IntPoly = Vec<BigInt>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content, keeping the sign of the leading coefficient.
fn primitive(p: IntPoly) -> IntPoly {
    let c = content(&p);
    if c.is_zero() || c.is_one() {
        return p;
    }
    p.into_iter().map(|a| a / &c).collect()
}

pub fn derivative(p: &[BigInt]) -> IntPoly {
    trim(p.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
}

/// `lc(b)^(δ+1) · a mod b` with `δ = deg a − deg b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r: IntPoly = a.to_vec();
    let mut steps = (a.len() - 1 + 1).saturating_sub(db) as u32;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &c * bj;
        }
        r = trim(r);
        steps -= 1;
    }
    // Complete the multiplier so its sign is predictable.
    if steps > 0 {
        let f = num_traits::pow(lc.clone(), steps as usize);
        r = r.into_iter().map(|x| x * &f).collect();
    }
    r
}

/// Primitive greatest common divisor (positive leading coefficient).
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (mut a, mut b) = (primitive(trim(a.to_vec())), primitive(trim(b.to_vec())));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        a = a.into_iter().map(|c| -c).collect();
    }
    a
}

/// Exact quotient of integer polynomials known to divide.
pub fn exact_div(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let ra = RationalPoly::from_bigints(a);
    let rb = RationalPoly::from_bigints(b);
    let (q, r) = ra.div_rem(&rb);
    debug_assert!(r.is_zero());
    q.primitive_part()
}

/// Is `p` square-free over the rationals? Decided modulo word-sized primes
/// when possible, with an exact gcd as fallback.
pub fn is_square_free(p: &[BigInt]) -> bool {
    if p.len() <= 2 {
        return true;
    }
    for &m in &[2_147_483_647u64, 2_147_483_629, 2_147_483_587] {
        let lc = p.last().unwrap().mod_floor(&BigInt::from(m));
        if lc.is_zero() {
            continue;
        }
        let f = reduce(p, m);
        let df = reduce(&derivative(p), m);
        if modp_gcd_degree(f, df, m) == 0 {
            return true;
        }
    }
    gcd(p, &derivative(p)).len() <= 1
}

fn reduce(p: &[BigInt], m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    let mut v: Vec<u64> = p.iter().map(|c| c.mod_floor(&mb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn modp_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> usize {
    if b.is_empty() {
        return a.len().saturating_sub(1);
    }
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), m - 2, m);
        while a.len() >= b.len() && !a.is_empty() {
            let c = (*a.last().unwrap() as u128 * inv as u128 % m as u128) as u64;
            let off = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                let t = (c as u128 * *bj as u128 % m as u128) as u64;
                a[off + j] = (a[off + j] + m - t) % m;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// The square-free part `p / gcd(p, p')`, primitive with positive leading
/// coefficient.
pub fn square_free_part(p: &[BigInt]) -> IntPoly {
    let p = primitive(trim(p.to_vec()));
    let mut out = if is_square_free(&p) {
        p
    } else {
        let g = gcd(&p, &derivative(&p));
        exact_div(&p, &g)
    };
    if out.last().is_some_and(|c| c.is_negative()) {
        out = out.into_iter().map(|c| -c).collect();
    }
    out
}

/// Sign of `p(x)` for rational `x`.
pub fn sign_at(p: &[BigInt], x: &Rat) -> i8 {
    let (a, b) = (x.numer(), x.denom());
    let Some(d) = p.len().checked_sub(1) else {
        return 0;
    };
    // Σ c_k a^k b^(d−k) has the sign of p(x) since b > 0.
    let mut s = p[d].clone();
    let mut bpow = BigInt::one();
    for k in (0..d).rev() {
        bpow *= b;
        s = s * a + &p[k] * &bpow;
    }
    match s.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Sturm chain `f, f', −rem, …` with positive content-free rescaling.
pub struct Sturm {
    chain: Vec<IntPoly>,
}

impl Sturm {
    pub fn new(f: &[BigInt]) -> Self {
        let f = trim(f.to_vec());
        let mut chain = vec![f.clone()];
        let df = primitive(derivative(&f));
        if df.is_empty() {
            return Sturm { chain };
        }
        chain.push(df);
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            let delta = a.len() - b.len();
            let mut r = pseudo_rem(a, b);
            if r.is_empty() {
                break;
            }
            // pseudo_rem multiplies by lc(b)^(δ+1); undo a negative sign.
            let negative_factor = b.last().unwrap().is_negative() && (delta + 1) % 2 == 1;
            if !negative_factor {
                r = r.into_iter().map(|c| -c).collect();
            }
            chain.push(primitive(r));
        }
        Sturm { chain }
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &Rat) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for p in &self.chain {
            let s = sign_at(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Distinct roots in `(a, b]`.
    pub fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Power of two strictly above every root modulus (Cauchy).
pub fn root_bound(p: &[BigInt]) -> Rat {
    let lc = p.last().unwrap().abs();
    let mx = p.iter().map(|c| c.abs()).max().unwrap();
    let b = Rat::one() + Rat::new(mx, lc);
    let mut r = Rat::one();
    while r <= b {
        r *= BigInt::from(2);
    }
    r
}

/// Disjoint closed intervals, each containing exactly one real root of `p`,
/// in increasing order. Roots hit exactly by a bisection point are returned
/// as point intervals.
pub fn isolate(p: &RationalPoly) -> Vec<RatInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let f = square_free_part(&p.primitive_part());
    let sturm = Sturm::new(&f);
    let b = root_bound(&f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let c = sturm.count(&lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            if sign_at(&f, &hi) == 0 {
                out.push(RatInterval::point(hi));
                continue;
            }
            if sign_at(&f, &lo) != 0 {
                out.push(RatInterval::new(lo, hi));
                continue;
            }
        }
        let mid = (&lo + &hi) / BigInt::from(2);
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Shrinks an isolating interval to width at most `tol`. Newton steps are
/// rounded to a dyadic grid and accepted only after two exact sign tests;
/// otherwise the interval is bisected.
pub fn refine(p: &RationalPoly, iv: &RatInterval, tol: &Rat) -> RatInterval {
    let mut f = p.primitive_part();
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    if lo == hi {
        return iv.clone();
    }
    let mut slo = sign_at(&f, &lo);
    let shi = sign_at(&f, &hi);
    if shi == 0 {
        return RatInterval::point(hi);
    }
    if slo == 0 || slo == shi {
        f = square_free_part(&f);
        slo = sign_at(&f, &lo);
        if sign_at(&f, &hi) == 0 {
            return RatInterval::point(hi);
        }
    }
    let df = derivative(&f);
    let two = BigInt::from(2);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        let w = &hi - &lo;
        // Newton from the midpoint, snapped to a grid finer than the target.
        let fm = eval_rat(&f, &mid);
        let dm = eval_rat(&df, &mid);
        if !dm.is_zero() {
            let x = &mid - fm / dm;
            let step = (&w / BigInt::from(64)).min(tol.clone() / &two);
            let grid = dyadic_below(&step);
            let xs = (&x / &grid).round() * &grid;
            let (a, b) = (&xs - &grid, &xs + &grid);
            if xs > lo && xs < hi && sign_at(&f, &xs) == 0 {
                return RatInterval::point(xs);
            }
            if a > lo && b < hi {
                let (sa, sb) = (sign_at(&f, &a), sign_at(&f, &b));
                if sa == 0 {
                    return RatInterval::point(a);
                }
                if sb == 0 {
                    return RatInterval::point(b);
                }
                if sa == slo && sb != slo {
                    lo = a;
                    hi = b;
                    continue;
                }
            }
        }
        let sm = sign_at(&f, &mid);
        if sm == 0 {
            return RatInterval::point(mid);
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RatInterval::new(lo, hi)
}

fn eval_rat(p: &[BigInt], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + Rat::from_integer(c.clone()))
}

/// Largest power of two not above `x > 0`.
fn dyadic_below(x: &Rat) -> Rat {
    let mut g = Rat::one();
    while &g > x {
        g /= BigInt::from(2);
    }
    while &g * BigInt::from(2) <= *x {
        g *= BigInt::from(2);
    }
    g
}
