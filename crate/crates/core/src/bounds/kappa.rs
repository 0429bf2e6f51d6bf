//! κ certificates, their optimization over `T`, analytic lower bounds, and
//! the comparison of the two variants at a shared `T`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::rat::{fmt_rat, to_decimal, to_f64};
use crate::arith::{int, ArithFn, Rat, RatInterval};
use crate::error::{Error, Result};

use super::majorant::{majorant_eval, Majorant, MajorantJson, MajorantKind};

/// Variant A works with `G1` and `κ = 1/((1−ε)T)`; variant B works with `G2`
/// and `κ = (1/T + |g(2)|)/(1−ε)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    A,
    B,
}

impl Variant {
    pub fn majorant_kind(self) -> MajorantKind {
        match self {
            Variant::A => MajorantKind::G1,
            Variant::B => MajorantKind::G2,
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Variant::A),
            "B" | "b" => Ok(Variant::B),
            _ => Err(Error::Parse(format!("variant must be A or B, got `{s}`"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug)]
pub struct KappaCertificate {
    pub variant: Variant,
    pub g_name: String,
    pub t_eps: Rat,
    pub eps: Rat,
    /// Exact majorant value at `t_eps`; never above `eps`.
    pub g_bound: Rat,
    pub kappa: Rat,
    pub majorant: Majorant,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub variant: Variant,
    pub g: String,
    pub t_eps: String,
    pub eps: String,
    pub g_bound: String,
    pub kappa: String,
    pub kappa_decimal: String,
    pub majorant: MajorantJson,
    /// The tail inequality is checked up to the majorant's verified horizon;
    /// beyond it the bound rests on a growth estimate for `g`.
    pub tail_assumption: String,
}

impl KappaCertificate {
    pub fn g2_abs(&self) -> Result<Rat> {
        Ok(self.majorant.target().eval(2)?.abs())
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            variant: self.variant,
            g: self.g_name.clone(),
            t_eps: fmt_rat(&self.t_eps),
            eps: fmt_rat(&self.eps),
            g_bound: fmt_rat(&self.g_bound),
            kappa: fmt_rat(&self.kappa),
            kappa_decimal: to_decimal(&self.kappa, 8),
            majorant: self.majorant.to_json(),
            tail_assumption: format!(
                "tail bound checked exactly for k <= {}",
                self.majorant.verified_horizon()
            ),
        }
    }

    /// Re-derives every field from the majorant and checks the invariants.
    pub fn validate(&self) -> Result<()> {
        let bound = majorant_eval(&self.majorant, &self.t_eps)?;
        let expected = kappa_formula(self.variant, &self.t_eps, &self.eps, &self.g2_abs()?);
        if bound != self.g_bound
            || self.g_bound > self.eps
            || self.eps >= Rat::one()
            || self.kappa != expected
            || self.majorant.kind() != self.variant.majorant_kind()
        {
            return Err(Error::Infeasible(format!(
                "certificate for `{}` does not re-derive",
                self.g_name
            )));
        }
        Ok(())
    }
}

fn kappa_formula(variant: Variant, t: &Rat, eps: &Rat, g2_abs: &Rat) -> Rat {
    let one_minus = Rat::one() - eps;
    match variant {
        Variant::A => Rat::one() / (one_minus * t),
        Variant::B => (Rat::one() / t + g2_abs) / one_minus,
    }
}

/// The certificate at `T`. Without an override `ε` is the exact majorant
/// value; an override must lie in `[majorant value, 1)`.
pub fn kappa_from(
    variant: Variant,
    m: &Majorant,
    t: &Rat,
    eps_override: Option<&Rat>,
) -> Result<KappaCertificate> {
    if m.kind() != variant.majorant_kind() {
        return Err(Error::Domain(format!(
            "variant {variant} needs a {:?} majorant, got {:?}",
            variant.majorant_kind(),
            m.kind()
        )));
    }
    let bound = majorant_eval(m, t)?;
    if bound >= Rat::one() {
        return Err(Error::Infeasible(format!(
            "majorant value {} at T = {} is not below 1",
            to_decimal(&bound, 6),
            fmt_rat(t)
        )));
    }
    let eps = match eps_override {
        None => bound.clone(),
        Some(e) if *e >= bound && *e < Rat::one() => e.clone(),
        Some(e) => {
            return Err(Error::Infeasible(format!(
                "eps = {} must lie in [{}, 1), the lower end being the majorant value at T = {}",
                fmt_rat(e),
                fmt_rat(&bound),
                fmt_rat(t)
            )))
        }
    };
    let g2 = m.target().eval(2)?.abs();
    Ok(KappaCertificate {
        variant,
        g_name: m.target().name().to_string(),
        kappa: kappa_formula(variant, t, &eps, &g2),
        t_eps: t.clone(),
        eps,
        g_bound: bound,
        majorant: m.clone(),
    })
}

/// Grid over `T = j / denominator`, `0 < j < denominator`, followed by a
/// golden-section refinement whose probes are rounded to `digits` decimals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub denominator: u64,
    pub digits: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { denominator: 2000, digits: 8 }
    }
}

/// Smallest κ found. Ties go to the smaller `T`; the result is always a
/// certificate produced by [`kappa_from`].
pub fn optimize_kappa(variant: Variant, m: &Majorant, grid: &Grid) -> Result<KappaCertificate> {
    if grid.denominator < 2 {
        return Err(Error::Domain("grid denominator must be at least 2".into()));
    }
    let den = grid.denominator as i64;
    let mut best: Option<KappaCertificate> = None;
    let mut best_j = 0i64;
    for j in 1..den {
        let t = Rat::new(j.into(), den.into());
        if let Ok(c) = kappa_from(variant, m, &t, None) {
            if best.as_ref().is_none_or(|b| c.kappa < b.kappa) {
                best = Some(c);
                best_j = j;
            }
        }
    }
    let Some(mut best) = best else {
        return Err(Error::Infeasible(format!(
            "no T = j/{den} gives a majorant value below 1"
        )));
    };

    let scale = Rat::from_integer(num_traits::pow(BigInt::from(10), grid.digits as usize));
    let snap = |x: &Rat| -> Rat { (x * &scale).round() / &scale };
    let eval = |t: &Rat| -> Option<KappaCertificate> {
        if !t.is_positive() || *t >= Rat::one() {
            return None;
        }
        kappa_from(variant, m, t, None).ok()
    };
    let mut lo = Rat::new((best_j - 1).into(), den.into());
    let mut hi = Rat::new((best_j + 1).into(), den.into());
    // 1/φ ≈ 0.6180339887
    let inv_phi = Rat::new(6180339887i64.into(), 10000000000i64.into());
    let quantum = Rat::one() / &scale;
    for _ in 0..200 {
        if &hi - &lo <= &quantum * int(4) {
            break;
        }
        let c = snap(&(&hi - (&hi - &lo) * &inv_phi));
        let d = snap(&(&lo + (&hi - &lo) * &inv_phi));
        let kc = eval(&c);
        let kd = eval(&d);
        let value = |k: &Option<KappaCertificate>| k.as_ref().map(|k| k.kappa.clone());
        for k in [&kc, &kd].into_iter().flatten() {
            if k.kappa < best.kappa || (k.kappa == best.kappa && k.t_eps < best.t_eps) {
                best = k.clone();
            }
        }
        let (vc, vd) = (value(&kc), value(&kd));
        match (&vc, &vd) {
            (Some(a), Some(b)) => {
                let rel = to_f64(&((a - b).abs() / &best.kappa));
                if a <= b {
                    hi = d;
                } else {
                    lo = c;
                }
                if rel < 1e-6 {
                    break;
                }
            }
            // Infeasible probes lie beyond the feasible side of the bracket.
            (Some(_), None) => hi = d,
            (None, Some(_)) => lo = c,
            (None, None) => break,
        }
    }
    Ok(best)
}

/// Width of the square-root enclosures in lower bounds.
pub fn sqrt_tolerance() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// Analytic lower bound for κ. Variant A: `|g(2)|/((1−ε)ε)`, or `4|g(2)|`
/// without `ε`. Variant B: `(√(|g(2)²−g(3)|/ε) + |g(2)|)/(1−ε)`, or
/// `(3/2)√(3|g(2)²−g(3)|) + |g(2)|` without `ε`.
pub fn lower_bound(variant: Variant, g: &ArithFn, eps: Option<&Rat>) -> Result<RatInterval> {
    if let Some(e) = eps {
        if !e.is_positive() || *e >= Rat::one() {
            return Err(Error::Domain(format!("eps = {} must satisfy 0 < eps < 1", fmt_rat(e))));
        }
    }
    let g2 = g.eval(2)?.abs();
    match variant {
        Variant::A => Ok(RatInterval::point(match eps {
            Some(e) => &g2 / ((Rat::one() - e) * e),
            None => int(4) * g2,
        })),
        Variant::B => {
            let g2s = g.eval(2)?;
            let c = (&g2s * &g2s - g.eval(3)?).abs();
            let tol = sqrt_tolerance();
            Ok(match eps {
                Some(e) => RatInterval::sqrt(&(&c / e), &tol)
                    .add_rat(&g2)
                    .scale(&(Rat::one() / (Rat::one() - e))),
                None => RatInterval::sqrt(&(int(3) * c), &tol)
                    .scale(&Rat::new(3.into(), 2.into()))
                    .add_rat(&g2),
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub t: String,
    pub g2_abs: String,
    pub eps1: String,
    /// `(1 + |g(2)|T) G1maj(T) − |g(2)|T`: an upper bound for `G2(T)`.
    pub eps2_lower: String,
    /// `(1 + |g(2)|T) ε₁ − |g(2)|T`.
    pub eps2_upper: String,
    pub kappa1: String,
    /// κ₂ with `ε₂ = eps2_upper`; never above κ₁.
    pub kappa2_chain: String,
    /// κ₂ from the `G2` majorant directly, when feasible at this `T`.
    pub kappa2_direct: Option<String>,
    pub eps2_direct: Option<String>,
    pub holds: bool,
}

/// Derives a variant-B certificate from a variant-A one at the same `T`
/// through `G2 ≤ (1 + |g(2)|T) G1 − |g(2)|T`, and checks `κ₂ ≤ κ₁` exactly.
pub fn compare_a_b(m1: &Majorant, m2: &Majorant, t: &Rat) -> Result<Comparison> {
    let a = kappa_from(Variant::A, m1, t, None)?;
    compare_with(&a, m2)
}

/// As [`compare_a_b`], starting from a given variant-A certificate.
pub fn compare_with(a: &KappaCertificate, m2: &Majorant) -> Result<Comparison> {
    if a.variant != Variant::A {
        return Err(Error::Domain("comparison starts from a variant-A certificate".into()));
    }
    let t = &a.t_eps;
    let g2 = a.g2_abs()?;
    let at = &g2 * t;
    let one_at = Rat::one() + &at;
    let eps2_lower = &one_at * &a.g_bound - &at;
    let eps2_upper = &one_at * &a.eps - &at;
    let kappa2_chain = kappa_formula(Variant::B, t, &eps2_upper, &g2);
    let direct = kappa_from(Variant::B, m2, t, None).ok();
    let holds = eps2_lower <= eps2_upper && eps2_upper < Rat::one() && kappa2_chain <= a.kappa;
    Ok(Comparison {
        t: fmt_rat(t),
        g2_abs: fmt_rat(&g2),
        eps1: fmt_rat(&a.eps),
        eps2_lower: fmt_rat(&eps2_lower),
        eps2_upper: fmt_rat(&eps2_upper),
        kappa1: fmt_rat(&a.kappa),
        kappa2_chain: fmt_rat(&kappa2_chain),
        kappa2_direct: direct.as_ref().map(|d| fmt_rat(&d.kappa)),
        eps2_direct: direct.as_ref().map(|d| fmt_rat(&d.eps)),
        holds,
    })
}

/// The reference certificate for a built-in `g`:
///
/// | g | A | B |
/// |---|---|---|
/// | one | T = 3/10 | T = 1/2 |
/// | id | T = 1/6, ε = 11/25 | T = 1/3 |
/// | sigma | T = 1/8 | T = 2/11, ε = 3/14 |
/// | sigma3 | T = 87/20000, ε = 1/25 | T = 87/20000, ε = 1/982, head K = 5 |
pub fn standard_certificate(g: &ArithFn, variant: Variant) -> Result<KappaCertificate> {
    use crate::arith::rat;
    let preset = || Majorant::preset(variant.majorant_kind(), g);
    let (m, t, eps) = match (g.name(), variant) {
        ("one", Variant::A) => (preset()?, rat(3, 10), None),
        ("one", Variant::B) => (preset()?, rat(1, 2), None),
        ("id", Variant::A) => (preset()?, rat(1, 6), Some(rat(11, 25))),
        ("id", Variant::B) => (preset()?, rat(1, 3), None),
        ("sigma", Variant::A) => (preset()?, rat(1, 8), None),
        ("sigma", Variant::B) => (preset()?, rat(2, 11), Some(rat(3, 14))),
        ("sigma3", Variant::A) => (preset()?, rat(87, 20000), Some(rat(1, 25))),
        ("sigma3", Variant::B) => (Majorant::sigma3_g2(5)?, rat(87, 20000), Some(rat(1, 982))),
        (name, _) => {
            return Err(Error::Domain(format!("no reference certificate for `{name}`")));
        }
    };
    kappa_from(variant, &m, &t, eps.as_ref())
}
