//! Zeros of recurrence polynomials: exact real-root isolation, certified
//! complex enclosures, zero-free disks and the minimal-zero table.

pub mod aberth;
pub mod sturm;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::rat::{fmt_rat, to_decimal, to_f64};
use crate::arith::{int, rat, ArithFn, BigFloat, Rat, RatInterval, Round};
use crate::bounds::KappaCertificate;
use crate::error::{Error, Result};
use crate::polyrec::{build_sequence, eval_homogeneous, RationalPoly};

pub use sturm::{isolate, refine};

pub const START_PRECISION: u32 = 128;
pub const MAX_PRECISION: u32 = 8192;

/// Exact real-root isolation on the square-free part.
pub fn isolate_real_roots(p: &RationalPoly) -> Vec<RatInterval> {
    isolate(p)
}

/// Shrinks an isolating interval to width `≤ tol`.
pub fn refine_root(p: &RationalPoly, iv: &RatInterval, tol: &Rat) -> RatInterval {
    refine(p, iv, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Sturm,
    Aberth,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Sturm => "sturm",
            Method::Aberth => "aberth",
        })
    }
}

/// Closed disk (or real interval when `im = 0`) holding one root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootEnclosure {
    pub re: Rat,
    pub im: Rat,
    pub rad: Rat,
}

#[derive(Clone, Debug)]
pub struct RootReport {
    /// Degree of the polynomial.
    pub n: usize,
    /// One entry per root, repeated by multiplicity.
    pub roots: Vec<RootEnclosure>,
    pub min_re: Option<RatInterval>,
    pub max_mod: Option<RatInterval>,
    pub method: Method,
    /// Upper bounds on `|p(centre)|`, one per root.
    pub residuals: Vec<Rat>,
    pub precision_bits: u32,
}

#[derive(Serialize)]
struct EnclosureJson {
    re: String,
    im: String,
    rad: String,
}

#[derive(Serialize)]
pub struct RootReportJson {
    n: usize,
    roots: Vec<EnclosureJson>,
    min_re: Option<RatInterval>,
    max_mod: Option<RatInterval>,
    method: Method,
    residuals: Vec<String>,
    precision_bits: u32,
}

impl RootReport {
    pub fn to_json(&self) -> RootReportJson {
        RootReportJson {
            n: self.n,
            roots: self
                .roots
                .iter()
                .map(|r| EnclosureJson { re: fmt_rat(&r.re), im: fmt_rat(&r.im), rad: fmt_rat(&r.rad) })
                .collect(),
            min_re: self.min_re.clone(),
            max_mod: self.max_mod.clone(),
            method: self.method,
            residuals: self.residuals.iter().map(fmt_rat).collect(),
            precision_bits: self.precision_bits,
        }
    }

    fn assemble(p: &RationalPoly, roots: Vec<RootEnclosure>, method: Method, precision_bits: u32) -> Self {
        let min_re = roots
            .iter()
            .map(|r| RatInterval::new(&r.re - &r.rad, &r.re + &r.rad))
            .reduce(|a, b| RatInterval::new(a.lo.min(b.lo), a.hi.min(b.hi)));
        let max_mod = roots
            .iter()
            .map(|r| {
                let n2 = &r.re * &r.re + &r.im * &r.im;
                let lo = &sqrt_bound(&n2, Round::Down) - &r.rad;
                RatInterval::new(lo.max(Rat::zero()), sqrt_bound(&n2, Round::Up) + &r.rad)
            })
            .reduce(|a, b| RatInterval::new(a.lo.max(b.lo), a.hi.max(b.hi)));
        let f = p.primitive_part();
        let lc_ratio = BigFloat::from_rat(&(p.leading() / Rat::from_integer(f[f.len() - 1].clone())).abs(), 64, Round::Up);
        let d = f.len() as u32 - 1;
        let residuals = roots
            .iter()
            .map(|r| {
                let b = r.re.denom().lcm(r.im.denom());
                let ar = (&r.re * Rat::from_integer(b.clone())).to_integer();
                let ai = (&r.im * Rat::from_integer(b.clone())).to_integer();
                let (hr, hi) = eval_homogeneous(&f, &ar, &ai, &b);
                let num = BigFloat::from_bigint(&(&hr * &hr + &hi * &hi), 64, Round::Up).sqrt(64, Round::Up);
                let den = BigFloat::from_bigint(&num_traits::pow(b, d as usize), 64, Round::Down);
                num.div(&den, 64, Round::Up).mul(&lc_ratio, 64, Round::Up).to_rat()
            })
            .collect();
        RootReport { n: roots.len(), roots, min_re, max_mod, method, residuals, precision_bits }
    }
}

/// Directed 128-bit bound on `√x`.
fn sqrt_bound(x: &Rat, rnd: Round) -> Rat {
    BigFloat::from_rat(x, 128, rnd).sqrt(128, rnd).to_rat()
}

/// Square-free factorisation `p = c · ∏ a_i^i` (Yun). Returns primitive
/// `(a_i, i)` for the non-constant factors.
fn yun(f: &[BigInt]) -> Vec<(Vec<BigInt>, usize)> {
    if sturm::is_square_free(f) {
        return vec![(f.to_vec(), 1)];
    }
    let gcd = |a: &RationalPoly, b: &RationalPoly| {
        RationalPoly::from_bigints(&sturm::gcd(&a.primitive_part(), &b.primitive_part()))
    };
    let ff = RationalPoly::from_bigints(f);
    let df = ff.derivative(1);
    let b = gcd(&ff, &df);
    if b.degree() == Some(0) {
        return vec![(f.to_vec(), 1)];
    }
    let mut c = ff.div_rem(&b).0;
    let mut d = &df.div_rem(&b).0 - &c.derivative(1);
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = gcd(&c, &d);
        c = c.div_rem(&a).0;
        d = &d.div_rem(&a).0 - &c.derivative(1);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.primitive_part(), i));
        }
        i += 1;
    }
    out
}

/// Roots of a square-free integer polynomial with nonzero constant term.
fn aberth_roots(f: &[BigInt], start: u32, tol: &Rat) -> Result<(Vec<RootEnclosure>, u32)> {
    let d = f.len() - 1;
    if d == 1 {
        let r = Rat::new(-f[0].clone(), f[1].clone());
        return Ok((vec![RootEnclosure { re: r, im: Rat::zero(), rad: Rat::zero() }], start));
    }
    let mut roots = aberth::initial_guesses(f);
    let mut prec = start;
    let mut sweeps = 40 * d + 200;
    loop {
        aberth::iterate(f, &mut roots, prec, sweeps, 50 + d / 2);
        let cert = aberth::certify(f, &roots);
        let mut labels = cert.component.clone();
        labels.sort_unstable();
        labels.dedup();
        let radii: Option<Vec<Rat>> = cert.radii.iter().map(|r| r.as_ref().map(|r| r.to_rat())).collect();
        if let Some(radii) = radii {
            if labels.len() == d && radii.iter().all(|r| r <= tol) {
                let out = cert
                    .centers
                    .iter()
                    .zip(radii)
                    .map(|(c, rad)| RootEnclosure { re: c.re.to_rat(), im: c.im.to_rat(), rad })
                    .collect();
                return Ok((out, prec));
            }
        }
        if prec >= MAX_PRECISION {
            let worst = cert
                .radii
                .iter()
                .map(|r| r.as_ref().map(|r| r.to_f64()).unwrap_or(f64::INFINITY))
                .fold(0.0, f64::max);
            return Err(Error::NonConvergence(format!(
                "degree {d}: {} separated components of {d}, largest radius {worst:e} at {prec} bits",
                labels.len()
            )));
        }
        prec *= 2;
        sweeps = 4 * d + 50;
    }
}

/// All complex roots with certified inclusion disks of radius `≤ tol`,
/// starting at `precision` bits and doubling up to 8192.
pub fn all_roots(p: &RationalPoly, precision: u32, tol: &Rat) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::Domain("the zero polynomial has no finite root set".into()));
    }
    if !tol.is_positive() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let f = p.primitive_part();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    let exact0 = || RootEnclosure { re: Rat::zero(), im: Rat::zero(), rad: Rat::zero() };
    let mut roots: Vec<RootEnclosure> = (0..zeros).map(|_| exact0()).collect();
    let rest = &f[zeros..];
    let start = precision.clamp(53, MAX_PRECISION);
    let mut used = start;
    if rest.len() > 1 {
        for (factor, mult) in yun(rest) {
            let (rs, bits) = aberth_roots(&factor, start, tol)?;
            used = used.max(bits);
            for r in rs {
                for _ in 0..mult {
                    roots.push(r.clone());
                }
            }
        }
    }
    sort_roots(&mut roots);
    Ok(RootReport::assemble(p, roots, Method::Aberth, used))
}

/// Exact path for polynomials whose roots are all real: Sturm isolation of
/// each square-free factor, refined to width `≤ 2 tol`. Returns `None` if
/// some root is not real.
pub fn real_roots_report(p: &RationalPoly, tol: &Rat) -> Result<Option<RootReport>> {
    if p.is_zero() {
        return Err(Error::Domain("the zero polynomial has no finite root set".into()));
    }
    let f = p.primitive_part();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    let rest = &f[zeros..];
    let mut roots: Vec<RootEnclosure> =
        (0..zeros).map(|_| RootEnclosure { re: Rat::zero(), im: Rat::zero(), rad: Rat::zero() }).collect();
    if rest.len() > 1 {
        for (factor, mult) in yun(rest) {
            let fp = RationalPoly::from_bigints(&factor);
            let ivs = isolate(&fp);
            if ivs.len() != factor.len() - 1 {
                return Ok(None);
            }
            for iv in ivs {
                let r = refine(&fp, &iv, &(tol * int(2)));
                let e = RootEnclosure { re: r.mid(), im: Rat::zero(), rad: r.width() / int(2) };
                for _ in 0..mult {
                    roots.push(e.clone());
                }
            }
        }
    }
    sort_roots(&mut roots);
    Ok(Some(RootReport::assemble(p, roots, Method::Sturm, 0)))
}

fn sort_roots(roots: &mut [RootEnclosure]) {
    roots.sort_by(|a, b| a.re.cmp(&b.re).then(a.im.cmp(&b.im)));
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroFree {
    pub holds: bool,
    pub threshold: String,
    pub max_mod: Option<RatInterval>,
    /// `max |root| / h(n−1)`, absent when `h(n−1) = 0`.
    pub ratio: Option<f64>,
}

/// Checks `max |root| ≤ κ·h(n−1)`, i.e. that no root lies in the region the
/// certificate declares zero-free.
pub fn verify_zero_free(report: &RootReport, cert: &KappaCertificate, h: &ArithFn) -> Result<ZeroFree> {
    let n = report.n;
    let hm = if n == 0 { Rat::zero() } else { h.eval_h(n as u64 - 1)? };
    let threshold = &cert.kappa * &hm;
    let (holds, ratio) = match &report.max_mod {
        None => (true, None),
        Some(m) => {
            let ratio = if hm.is_zero() { None } else { Some(to_f64(&(m.mid() / &hm))) };
            if m.hi <= threshold {
                (true, ratio)
            } else if m.lo > threshold {
                (false, ratio)
            } else {
                return Err(Error::NonConvergence(format!(
                    "max |root| enclosure [{}, {}] straddles κ·h(n−1) = {}; raise the precision",
                    to_f64(&m.lo),
                    to_f64(&m.hi),
                    fmt_rat(&threshold)
                )));
            }
        }
    };
    Ok(ZeroFree { holds, threshold: fmt_rat(&threshold), max_mod: report.max_mod.clone(), ratio })
}

/// One row of the minimal-zero table for `P_n^{σ,id}`.
#[derive(Clone, Debug, Serialize)]
pub struct MinZeroRow {
    pub n: usize,
    pub min_re: String,
    pub method: Method,
    pub precision_bits: u32,
    pub enclosure: RatInterval,
}

/// Largest degree for which the exact Sturm path is attempted.
const STURM_LIMIT: usize = 12;

/// The exact Sturm path for small real-rooted polynomials, Aberth otherwise.
pub fn roots_report(p: &RationalPoly, precision: u32, tol: &Rat) -> Result<RootReport> {
    let small = p.degree().is_some_and(|d| d <= STURM_LIMIT);
    match small.then(|| real_roots_report(p, tol)).transpose()?.flatten() {
        Some(r) => Ok(r),
        None => all_roots(p, precision, tol),
    }
}

/// Minimal real part over all zeros of `P_n^{σ,id}`, rounded to 5 places.
/// The enclosure is tightened until both ends round to the same decimal.
pub fn min_zero_row(n: usize, precision: u32) -> Result<MinZeroRow> {
    let seq = build_sequence(&ArithFn::sigma(), &ArithFn::id(), n)?;
    let p = seq.get(n).expect("built").clone();
    let mut tol = rat(1, 10_000_000_000);
    for _ in 0..8 {
        let report = roots_report(&p, precision, &tol)?;
        let iv = report.min_re.clone().expect("n ≥ 1");
        let (lo, hi) = (to_decimal(&iv.lo, 5), to_decimal(&iv.hi, 5));
        if lo == hi {
            return Ok(MinZeroRow {
                n,
                min_re: lo,
                method: report.method,
                precision_bits: report.precision_bits,
                enclosure: iv,
            });
        }
        tol /= Rat::from_integer(BigInt::from(1_000_000));
    }
    Err(Error::NonConvergence(format!("n = {n}: min Re sits on a rounding boundary")))
}

/// Rows for each `n`, computed on up to `jobs` threads, in input order.
pub fn min_zero_table(ns: &[usize], precision: u32, jobs: usize) -> Result<Vec<MinZeroRow>> {
    crate::par::par_map(ns, jobs, |&n| min_zero_row(n, precision)).into_iter().collect()
}
