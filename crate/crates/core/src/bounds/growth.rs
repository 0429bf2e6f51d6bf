//! Exact checks of the growth inequalities on circles `|x| = κ h(n−1) (1+δ)`.
//!
//! Sample points are Gaussian rationals `r·u` with `|u| = 1` exactly, so
//! `|x|² = r²` is rational and every inequality reduces to a comparison of
//! rationals after squaring.

use std::ops::RangeInclusive;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::rat::{fmt_rat, rat, to_f64};
use crate::arith::{int, Rat};
use crate::error::{Error, Result};
use crate::polyrec::PolySequence;

use super::kappa::{KappaCertificate, Variant};

/// Radii `κ·h(n−1)·(1+δ)` for each `δ`, along each unit direction.
/// For `n = 1`, where `h(0) = 0`, the scale `h(1)` is used instead.
#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub deltas: Vec<Rat>,
    pub directions: Vec<(Rat, Rat)>,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            deltas: vec![rat(1, 1000), int(1), int(10)],
            directions: vec![
                // arg π
                (int(-1), int(0)),
                // arg π/2
                (int(0), int(1)),
                // 697² + 696² = 985², arg ≈ π/4
                (rat(697, 985), rat(696, 985)),
                // 999999² + 2000² = 1000001², arg ≈ 0.002
                (rat(999_999, 1_000_001), rat(2000, 1_000_001)),
            ],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthCheck {
    pub n: usize,
    pub x_re: String,
    pub x_im: String,
    pub check: &'static str,
    /// Relative slack of the tighter side; positive means the check passed.
    pub margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub g: String,
    pub h: String,
    pub variant: Variant,
    pub kappa: String,
    pub eps: String,
    pub checks: Vec<GrowthCheck>,
    pub min_margin: f64,
}

struct Gauss {
    re: Rat,
    im: Rat,
}

impl Gauss {
    fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
    fn mul(&self, o: &Gauss) -> Gauss {
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn sub(&self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn scale(&self, r: &Rat) -> Gauss {
        Gauss { re: &self.re * r, im: &self.im * r }
    }
}

fn rel(slack: &Rat, scale: &Rat) -> f64 {
    if scale.is_zero() {
        if slack.is_zero() { 0.0 } else { f64::INFINITY }
    } else {
        to_f64(&(slack / scale))
    }
}

/// Runs the difference and sandwich inequalities of the certificate's
/// variant for every `n` in `range` and every sample point. With `ε = 0`
/// the inequalities hold with equality and are checked non-strictly.
pub fn verify_growth(
    seq: &PolySequence,
    cert: &KappaCertificate,
    range: RangeInclusive<usize>,
    spec: &SampleSpec,
) -> Result<GrowthReport> {
    if cert.g_name != seq.g().name() {
        return Err(Error::Domain(format!(
            "certificate is for `{}`, sequence uses `{}`",
            cert.g_name,
            seq.g().name()
        )));
    }
    if *range.end() > seq.max_n() {
        return Err(Error::Domain(format!(
            "sequence is built to n = {}, range ends at {}",
            seq.max_n(),
            range.end()
        )));
    }
    for (re, im) in &spec.directions {
        if re * re + im * im != Rat::one() {
            return Err(Error::Domain(format!("direction {re} + {im}i is not of modulus 1")));
        }
    }
    let h = seq.h();
    let g2 = seq.g().eval(2)?;
    let eps = &cert.eps;
    let strict = !eps.is_zero();
    let eps2 = eps * eps;
    let mut checks = Vec::new();
    for n in range.clone().filter(|&n| n >= 1) {
        let hn = h.eval(n as u64)?;
        let hm = h.eval_h(n as u64 - 1)?;
        let scale = if n == 1 { h.eval(1)? } else { hm.clone() };
        let (pn_poly, pm_poly) = (&seq.polys()[n], &seq.polys()[n - 1]);
        for delta in &spec.deltas {
            let r = &cert.kappa * &scale * (Rat::one() + delta);
            let r2 = &r * &r;
            for (ur, ui) in &spec.directions {
                let x = Gauss { re: &r * ur, im: &r * ui };
                let (a, b) = pn_poly.eval_gaussian(&x.re, &x.im);
                let pn = Gauss { re: a, im: b };
                let (a, b) = pm_poly.eval_gaussian(&x.re, &x.im);
                let pm = Gauss { re: a, im: b };
                let pn2 = pn.norm();
                let pm2 = pm.norm();
                let hn2 = &hn * &hn;
                let fail = |check: &str, detail: String| Error::Verification {
                    n,
                    x: format!("{} + {}i", fmt_rat(&x.re), fmt_rat(&x.im)),
                    check: check.to_string(),
                    detail,
                };
                if pm2.is_zero() {
                    return Err(fail("nonvanishing", "P_{n-1}(x) = 0".into()));
                }
                // ε² |x|² |P_{n−1}|² / h(n)²
                let bound = &eps2 * &r2 * &pm2 / &hn2;
                let shift = match cert.variant {
                    Variant::A => Gauss { re: x.re.clone(), im: x.im.clone() },
                    Variant::B => Gauss { re: &x.re + &g2 * &hm, im: x.im.clone() },
                };
                let diff = pn.sub(&shift.mul(&pm).scale(&(Rat::one() / &hn)));
                let d2 = diff.norm();
                let (name_d, name_s) = match cert.variant {
                    Variant::A => ("A-difference", "A-sandwich"),
                    Variant::B => ("B-difference", "B-sandwich"),
                };
                let ok = if strict { d2 < bound } else { d2 <= bound };
                if !ok {
                    return Err(fail(
                        name_d,
                        format!("|difference|² = {:e} vs bound {:e}", to_f64(&d2), to_f64(&bound)),
                    ));
                }
                let (x_re, x_im) = (fmt_rat(&x.re), fmt_rat(&x.im));
                checks.push(GrowthCheck {
                    n,
                    x_re: x_re.clone(),
                    x_im: x_im.clone(),
                    check: name_d,
                    margin: rel(&(&bound - &d2), &bound),
                });

                // Sandwich: with W = |P_n|² h(n)² / |P_{n−1}|² and U the
                // squared centre, |√W − √U| < v.
                let w = &pn2 * &hn2 / &pm2;
                let (u, v) = match cert.variant {
                    Variant::A => (r2.clone(), eps * &r),
                    Variant::B => (shift.norm(), eps * &r),
                };
                let v2 = &v * &v;
                let lhs = &w + &u - &v2;
                let ok = if lhs.is_negative() {
                    true
                } else {
                    let l2 = &lhs * &lhs;
                    let rhs = int(4) * &w * &u;
                    if strict { l2 < rhs } else { l2 <= rhs }
                };
                if !ok {
                    return Err(fail(
                        name_s,
                        format!(
                            "|P_n| h(n)/|P_(n-1)| ≈ {:.6e} outside centre {:.6e} ± {:.6e}",
                            to_f64(&w).sqrt(),
                            to_f64(&u).sqrt(),
                            to_f64(&v)
                        ),
                    ));
                }
                let gap = to_f64(&v) - (to_f64(&w).sqrt() - to_f64(&u).sqrt()).abs();
                let vf = to_f64(&v);
                checks.push(GrowthCheck {
                    n,
                    x_re,
                    x_im,
                    check: name_s,
                    margin: if vf == 0.0 { 0.0 } else { gap / vf },
                });
            }
        }
    }
    let min_margin = checks.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
    Ok(GrowthReport {
        g: seq.g().name().to_string(),
        h: h.name().to_string(),
        variant: cert.variant,
        kappa: fmt_rat(&cert.kappa),
        eps: fmt_rat(eps),
        checks,
        min_margin,
    })
}
