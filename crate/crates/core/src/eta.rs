//! Coefficients of η-quotients and of `1/E₄` through the recurrence, with
//! the sandwich and growth inequalities for `1/E₄`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::rat::{binomial, fmt_rat, pow_rat, to_decimal};
use crate::arith::{int, rat, sigma_k, ArithFn, Rat};
use crate::bounds::{KappaCertificate, Variant};
use crate::error::{Error, Result};
use crate::polyrec::eval_sequence;

/// Largest `N` (and `|r|`) for which the product expansion cross-check runs.
pub const PRODUCT_CHECK_LIMIT: usize = 30;

/// Exact values indexed from `start`, plus derived display columns.
#[derive(Clone, Debug, Serialize)]
pub struct CoeffTable {
    pub label: String,
    pub start: usize,
    #[serde(serialize_with = "ser_rats")]
    pub values: Vec<Rat>,
    pub columns: Vec<Column>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Column {
    pub name: String,
    pub values: Vec<String>,
}

fn ser_rats<S: serde::Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rat))
}

impl CoeffTable {
    fn new(label: impl Into<String>, start: usize, values: Vec<Rat>) -> Self {
        CoeffTable { label: label.into(), start, values, columns: Vec::new() }
    }

    /// `(n, value)` pairs.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.values.iter().enumerate().map(move |(i, v)| (self.start + i, v))
    }

    pub fn get(&self, n: usize) -> Option<&Rat> {
        n.checked_sub(self.start).and_then(|i| self.values.get(i))
    }

    /// Tab-separated rendering: `n`, `value`, then each derived column.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tvalue");
        for c in &self.columns {
            out.push('\t');
            out.push_str(&c.name);
        }
        out.push('\n');
        for (i, (n, v)) in self.entries().enumerate() {
            out.push_str(&format!("{n}\t{}", fmt_rat(v)));
            for c in &self.columns {
                out.push('\t');
                out.push_str(&c.values[i]);
            }
            out.push('\n');
        }
        out
    }
}

fn mismatch(n: usize, check: &str, detail: String) -> Error {
    Error::Verification { n, x: String::new(), check: check.into(), detail }
}

/// Truncated power series product.
fn series_mul(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `∏_{m ≤ N} (1 − q^m)^r` mod `q^(N+1)` by repeated multiplication.
pub fn eta_product_expansion(r: i64, n: usize) -> Vec<BigInt> {
    let len = n + 1;
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::one();
    for m in 1..=n {
        let factor: Vec<BigInt> = if r >= 0 {
            let mut f = vec![BigInt::zero(); m + 1];
            f[0] = BigInt::one();
            f[m] = -BigInt::one();
            f
        } else {
            (0..len).map(|k| if k % m == 0 { BigInt::one() } else { BigInt::zero() }).collect()
        };
        for _ in 0..r.unsigned_abs() {
            acc = series_mul(&acc, &factor, len);
        }
    }
    acc
}

/// `a_n(r)` with `∏ (1 − q^m)^r = Σ a_n(r) q^n`, computed as `P_n^{σ,id}(−r)`.
/// For `N, |r| ≤ 30` the result is checked against the product expansion.
pub fn eta_power_coeffs(r: i64, n: usize) -> Result<CoeffTable> {
    let vals = eval_sequence(&ArithFn::sigma(), &ArithFn::id(), &int(-r), n)?;
    if n <= PRODUCT_CHECK_LIMIT && r.unsigned_abs() as usize <= PRODUCT_CHECK_LIMIT {
        let direct = eta_product_expansion(r, n);
        for (k, (a, b)) in vals.iter().zip(&direct).enumerate() {
            if *a != Rat::from_integer(b.clone()) {
                return Err(mismatch(k, "product expansion", format!("recurrence {a} vs product {b}")));
            }
        }
    }
    Ok(CoeffTable::new(format!("eta^{r}"), 0, vals))
}

/// Ramanujan `τ(1..=N)` as `P_{n−1}^{σ,id}(−24)`.
pub fn ramanujan_tau(n: usize) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let vals = eval_sequence(&ArithFn::sigma(), &ArithFn::id(), &int(-24), n - 1)?;
    Ok(vals.into_iter().map(|v| v.to_integer()).collect())
}

/// `τ(1..=N)` from `Δ = q ∏ (1 − q^m)^24` directly.
pub fn delta_expansion(n: usize) -> Vec<BigInt> {
    if n == 0 {
        return Vec::new();
    }
    eta_product_expansion(24, n - 1)
}

/// Radius beyond which `a_n(r) ≠ 0`: `κ·(n−1)` for a B-certificate of `σ`.
#[derive(Clone, Debug, Serialize)]
pub struct NonvanishingRegion {
    pub n: usize,
    #[serde(serialize_with = "ser_rat")]
    pub kappa: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub threshold: Rat,
}

fn ser_rat<S: serde::Serializer>(v: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(v))
}

impl NonvanishingRegion {
    /// Whether `r = re + i·im` is guaranteed to give `a_n(r) ≠ 0`.
    pub fn guarantees_nonzero(&self, re: &Rat, im: &Rat) -> bool {
        re * re + im * im > &self.threshold * &self.threshold
    }
}

pub fn nonvanishing_region(n: usize, cert: &KappaCertificate) -> Result<NonvanishingRegion> {
    if cert.g_name != "sigma" || cert.variant != Variant::B {
        return Err(Error::Domain(format!(
            "needs a B certificate for sigma, got {} for `{}`",
            cert.variant, cert.g_name
        )));
    }
    let threshold = if n == 0 { Rat::zero() } else { &cert.kappa * int(n as i64 - 1) };
    Ok(NonvanishingRegion { n, kappa: cert.kappa.clone(), threshold })
}

/// `B_0..=B_m` from `Σ_{j ≤ m} C(m+1, j) B_j = 0` (so `B_1 = −1/2`), memoized.
pub fn bernoulli(m: usize) -> Rat {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    let mut b = CACHE.get_or_init(|| Mutex::new(vec![Rat::one()])).lock().unwrap();
    while b.len() <= m {
        let k = b.len();
        let s = (0..k).fold(Rat::zero(), |acc, j| acc + Rat::from_integer(binomial(k as u64 + 1, j as u64)) * &b[j]);
        b.push(-s / Rat::from_integer(BigInt::from(k + 1)));
    }
    b[m].clone()
}

/// `E_k = 1 − (2k / B_k) Σ σ_{k−1}(n) q^n` to `q^N`. Weight 2 is accepted
/// and labelled quasimodular.
pub fn eisenstein_coeffs(k: u32, n: usize) -> Result<CoeffTable> {
    if k % 2 == 1 || k < 2 {
        return Err(Error::Domain(format!("Eisenstein weight must be even and at least 2, got {k}")));
    }
    let c = -int(2 * k as i64) / bernoulli(k as usize);
    let mut vals = vec![Rat::one()];
    for m in 1..=n as u64 {
        vals.push(&c * sigma_k(m, k - 1)?);
    }
    let label = if k == 2 { "E_2 (quasimodular)".to_string() } else { format!("E_{k}") };
    Ok(CoeffTable::new(label, 0, vals))
}

/// Exact reciprocal of a power series with constant term 1.
pub fn series_inverse(a: &[Rat], n: usize) -> Result<Vec<Rat>> {
    if a.first() != Some(&Rat::one()) {
        return Err(Error::Domain("series must start with 1".into()));
    }
    let mut b = vec![Rat::one()];
    for m in 1..=n {
        let s = (1..=m.min(a.len() - 1)).fold(Rat::zero(), |acc, k| acc + &a[k] * &b[m - k]);
        b.push(-s);
    }
    Ok(b)
}

/// `β_n` with `1/E₄ = Σ β_n q^n`, as `P_n^{σ₃,one}(−240)`. Checks `β_0 = 1`,
/// `240 | β_n` and `(−1)^n β_n > 0`. Columns follow the `230^(n−1)`,
/// `β_n/240`, `232^(n−1)` layout.
pub fn e4_reciprocal_coeffs(n: usize) -> Result<CoeffTable> {
    let vals = eval_sequence(&ArithFn::sigma3(), &ArithFn::one(), &int(-240), n)?;
    if vals[0] != Rat::one() {
        return Err(mismatch(0, "beta_0 = 1", fmt_rat(&vals[0])));
    }
    let b240 = BigInt::from(240);
    for (m, v) in vals.iter().enumerate() {
        if !v.is_integer() || (m > 0 && !v.to_integer().is_multiple_of(&b240)) {
            return Err(mismatch(m, "240 | beta_n", fmt_rat(v)));
        }
        let signed = if m % 2 == 0 { v.clone() } else { -v };
        if !signed.is_positive() {
            return Err(mismatch(m, "(-1)^n beta_n > 0", fmt_rat(v)));
        }
    }
    let mut t = CoeffTable::new("1/E_4", 0, vals.clone());
    let pow_col = |base: i64| Column {
        name: format!("{base}^(n-1)"),
        values: (0..=n).map(|m| if m == 0 { String::new() } else { num_traits::pow(BigInt::from(base), m - 1).to_string() }).collect(),
    };
    t.columns.push(pow_col(230));
    t.columns.push(Column {
        name: "beta_n/240".into(),
        values: vals.iter().enumerate().map(|(m, v)| if m == 0 { String::new() } else { (v.to_integer() / BigInt::from(240)).to_string() }).collect(),
    });
    t.columns.push(pow_col(232));
    Ok(t)
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichRow {
    pub n: usize,
    pub value: String,
    /// `β_n / (240·230^(n−1))`, 8 places.
    pub over_230: String,
    /// `β_n / (240·232^(n−1))`, 8 places.
    pub over_232: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub lo: String,
    pub hi: String,
    pub holds: bool,
    pub first_failure: Option<usize>,
    pub rows: Vec<SandwichRow>,
}

/// Exact check of `lo^(n−1) ≤ (−1)^n β_n/240 ≤ hi^(n−1)` for `1 ≤ n ≤ N`.
pub fn beta_sandwich(n: usize, lo: &Rat, hi: &Rat) -> Result<SandwichReport> {
    if lo >= hi {
        return Err(Error::Domain(format!("need lo < hi, got {lo} and {hi}")));
    }
    let t = e4_reciprocal_coeffs(n)?;
    let mut rows = Vec::new();
    let mut first_failure = None;
    for m in 1..=n {
        let b = t.get(m).unwrap() / int(240);
        let signed = if m % 2 == 0 { b.clone() } else { -&b };
        let e = m as u32 - 1;
        let holds = pow_rat(lo, e) <= signed && signed <= pow_rat(hi, e);
        if !holds && first_failure.is_none() {
            first_failure = Some(m);
        }
        rows.push(SandwichRow {
            n: m,
            value: b.to_integer().to_string(),
            over_230: to_decimal(&(&b / pow_rat(&int(230), e)), 8),
            over_232: to_decimal(&(&b / pow_rat(&int(232), e)), 8),
            holds,
        });
    }
    Ok(SandwichReport { lo: fmt_rat(lo), hi: fmt_rat(hi), holds: first_failure.is_none(), first_failure, rows })
}

pub fn eps1() -> Rat {
    rat(1, 25)
}

pub fn eps2() -> Rat {
    rat(1, 982)
}

/// The five inequality families for `2 ≤ n ≤ N`, with `b = β_1 β_{n−1}`:
///
/// 1. `|b|/2 < |β_n| < 3|b|/2`
/// 2. `|β_n − b| < ε₁ |b|`
/// 3. `(1 − ε₁)|b| < |β_n| < (1 + ε₁)|b|`
/// 4. `|β_n − (β_1 + 9) β_{n−1}| < ε₂ |b|`
/// 5. `|231 + ε₂ β_1| |β_{n−1}| < |β_n| < |231 − ε₂ β_1| |β_{n−1}|`
///
/// Values are the ratios `β_n / β_{n−1}`; one column per family holds the
/// slack of its tighter side relative to `|b|`.
pub fn beta_growth_ratios(n: usize) -> Result<CoeffTable> {
    if n < 2 {
        return Err(Error::Domain("need N ≥ 2".into()));
    }
    let beta = e4_reciprocal_coeffs(n)?.values;
    let (e1, e2) = (eps1(), eps2());
    let b1 = beta[1].clone();
    let mut slack: Vec<Vec<String>> = vec![Vec::new(); 5];
    let mut ratios = Vec::new();
    for m in 2..=n {
        let (bn, bp) = (&beta[m], &beta[m - 1]);
        let b = (&b1 * bp).abs();
        let a = bn.abs();
        // Positive margin means the family holds at this n.
        let margins: [Rat; 5] = [
            (&a - &b / int(2)).min(&b * rat(3, 2) - &a),
            &e1 * &b - (bn - &b1 * bp).abs(),
            (&a - (int(1) - &e1) * &b).min((int(1) + &e1) * &b - &a),
            &e2 * &b - (bn - (&b1 + int(9)) * bp).abs(),
            (&a - (int(231) + &e2 * &b1).abs() * bp.abs()).min((int(231) - &e2 * &b1).abs() * bp.abs() - &a),
        ];
        for (i, margin) in margins.iter().enumerate() {
            if !margin.is_positive() {
                return Err(mismatch(m, &format!("growth family {}", i + 1), format!("margin {}", fmt_rat(margin))));
            }
            slack[i].push(to_decimal(&(margin / &b), 8));
        }
        ratios.push(bn / bp);
    }
    let mut t = CoeffTable::new("beta_n/beta_(n-1)", 2, ratios);
    for (i, s) in slack.into_iter().enumerate() {
        t.columns.push(Column { name: format!("family{}_slack", i + 1), values: s });
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{kappa_from, Majorant, MajorantKind};

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta_power_coeffs(1, 5).unwrap().values, ints(&[1, -1, -1, 0, 0, 1]));
        assert_eq!(eta_power_coeffs(24, 9).unwrap().get(1), Some(&int(-24)));
        assert_eq!(eta_power_coeffs(0, 4).unwrap().values, ints(&[1, 0, 0, 0, 0]));
        assert_eq!(eta_power_coeffs(-1, 6).unwrap().values, ints(&[1, 1, 2, 3, 5, 7, 11]));
    }

    #[test]
    fn tau_matches_delta() {
        let t = ramanujan_tau(20).unwrap();
        assert_eq!(t, delta_expansion(20));
        assert_eq!(t[1], BigInt::from(-24));
        assert_eq!(t[5], &t[1] * &t[2]);
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(5), int(0));
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(eisenstein_coeffs(4, 2).unwrap().values, ints(&[1, 240, 2160]));
        assert_eq!(eisenstein_coeffs(6, 1).unwrap().values, ints(&[1, -504]));
        assert_eq!(eisenstein_coeffs(4, 0).unwrap().values, ints(&[1]));
        assert_eq!(eisenstein_coeffs(2, 1).unwrap().values, ints(&[1, -24]));
        assert!(eisenstein_coeffs(3, 2).is_err());
    }

    #[test]
    fn beta_values_and_inverse() {
        let t = e4_reciprocal_coeffs(10).unwrap();
        assert_eq!(t.get(1), Some(&int(-240)));
        assert_eq!(t.get(2).unwrap() / int(240), int(231));
        assert_eq!(
            t.get(10).unwrap() / int(240),
            Rat::from_integer("1857705425589167301906".parse().unwrap())
        );
        let e4 = eisenstein_coeffs(4, 10).unwrap().values;
        assert_eq!(series_inverse(&e4, 10).unwrap(), t.values);
    }

    #[test]
    fn sandwich_examples() {
        assert!(beta_sandwich(10, &int(230), &int(232)).unwrap().holds);
        let r = beta_sandwich(10, &rat(2307648, 10000), &rat(2312353, 10000)).unwrap();
        assert!(r.holds);
        assert_eq!(r.rows[1].over_230, "1.00434783");
        let r = beta_sandwich(1, &rat(1, 2), &int(3)).unwrap();
        assert!(r.holds && r.rows[0].value == "-1");
        let bad = beta_sandwich(5, &int(231), &int(232)).unwrap();
        assert_eq!(bad.first_failure, Some(3));
    }

    #[test]
    fn growth_families_hold() {
        let t = beta_growth_ratios(10).unwrap();
        assert_eq!(t.values.len(), 9);
        assert_eq!(t.values[0], rat(-231, 1));
        // n = 2, family 5: |231 − 240/982| < 231 < |231 + 240/982|.
        assert!(t.columns[4].values[0].parse::<f64>().unwrap() > 0.0);
    }

    #[test]
    fn region_threshold() {
        let m = Majorant::preset(MajorantKind::G2, &ArithFn::sigma()).unwrap();
        let cert = kappa_from(Variant::B, &m, &rat(2, 11), Some(&rat(3, 14))).unwrap();
        let r = nonvanishing_region(2, &cert).unwrap();
        assert_eq!(r.threshold, rat(119, 11));
        let r1 = nonvanishing_region(1, &cert).unwrap();
        assert_eq!(r1.threshold, int(0));
        assert!(r1.guarantees_nonzero(&rat(1, 1000), &int(0)));
        assert!(!r1.guarantees_nonzero(&int(0), &int(0)));
        let a = kappa_from(Variant::A, &Majorant::preset(MajorantKind::G1, &ArithFn::sigma()).unwrap(), &rat(1, 10), None);
        if let Ok(a) = a {
            assert!(nonvanishing_region(2, &a).is_err());
        }
    }
}
