//! Simultaneous root approximation (Aberth–Ehrlich) in `BigFloat` arithmetic
//! and rigorous inclusion disks for the approximations.
//!
//! Inclusion: for distinct centres `c_j` of a degree-`d` polynomial with
//! leading coefficient `a_d`, every root lies in the union of the disks
//! `|z − c_j| ≤ d·|W_j|` with `W_j = p(c_j) / (a_d ∏_{k≠j} (c_j − c_k))`, and a
//! connected component made of `m` disks holds exactly `m` roots.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{BigComplex, BigFloat, Round};

/// Approximations plus their certified inclusion radii (`None` when two
/// centres coincide).
pub struct Certified {
    pub centers: Vec<BigComplex>,
    pub radii: Vec<Option<BigFloat>>,
    /// Component label per root.
    pub component: Vec<usize>,
}

/// Initial approximations from the upper convex hull of `(k, log2 |a_k|)`:
/// each hull edge of width `m` contributes `m` points on the circle whose
/// radius matches the slope of the edge.
pub fn initial_guesses(coeffs: &[BigInt]) -> Vec<BigComplex> {
    let d = coeffs.len() - 1;
    let logs: Vec<Option<f64>> = coeffs.iter().map(log2_abs).collect();
    let pts: Vec<(usize, f64)> =
        logs.iter().enumerate().filter_map(|(k, l)| l.map(|l| (k, l))).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b when it lies on or below the segment a–p.
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(d);
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let m = j - i;
        let u = ((li - lj) / m as f64).exp2();
        for t in 0..m {
            let theta = 2.0 * std::f64::consts::PI * (t as f64 / m as f64 + i as f64 / d as f64) + sigma;
            out.push(BigComplex::from_f64(u * theta.cos(), u * theta.sin()));
        }
    }
    out
}

fn log2_abs(c: &BigInt) -> Option<f64> {
    if c.is_zero() {
        return None;
    }
    let bits = c.bits() as i64;
    let drop = (bits - 60).max(0);
    let top = (c.abs() >> drop as usize).to_f64().unwrap();
    Some(top.log2() + drop as f64)
}

/// Evaluates `p` and `p'` at `z` by Horner's rule.
fn horner(coeffs: &[BigFloat], z: &BigComplex, prec: u32) -> (BigComplex, BigComplex) {
    let d = coeffs.len() - 1;
    let mut p = BigComplex::new(coeffs[d].clone(), BigFloat::zero());
    let mut dp = BigComplex::zero();
    for k in (0..d).rev() {
        dp = dp.mul(z, prec).add(&p, prec);
        p = p.mul(z, prec);
        p.re = p.re.add(&coeffs[k], prec, Round::Nearest);
    }
    (p, dp)
}

/// `|w|` is negligible against `|z|` at `prec` bits.
fn negligible(w: &BigComplex, z: &BigComplex, prec: u32) -> bool {
    let tw = w.re.top().max(w.im.top());
    if tw == i64::MIN {
        return true;
    }
    let tz = z.re.top().max(z.im.top());
    let scale = if tz == i64::MIN { 0 } else { tz.max(0) };
    tw <= scale - prec as i64 + 6
}

/// Aberth sweeps (Gauss–Seidel order) until every correction is negligible
/// or has stopped shrinking below `|z|·2^(−prec/2)`. Gives up after
/// `max_sweeps` sweeps, or after `patience` sweeps in which no root settled.
/// Returns whether all roots settled.
pub fn iterate(coeffs: &[BigInt], roots: &mut [BigComplex], prec: u32, max_sweeps: usize, patience: usize) -> bool {
    let fc: Vec<BigFloat> = coeffs.iter().map(|c| BigFloat::from_bigint(c, prec, Round::Nearest)).collect();
    for r in roots.iter_mut() {
        *r = r.round(prec);
    }
    let d = roots.len();
    let one = BigComplex::new(BigFloat::one(), BigFloat::zero());
    let mut frozen = vec![false; d];
    let mut last = vec![i64::MAX; d];
    let mut approx: Vec<(f64, f64)> = roots.iter().map(|z| z.to_f64()).collect();
    let mut idle = 0;
    for _ in 0..max_sweeps {
        let mut moved = false;
        let mut settled = false;
        for j in 0..d {
            if frozen[j] {
                continue;
            }
            let z = roots[j].clone();
            let (p, dp) = horner(&fc, &z, prec);
            if p.is_zero() {
                frozen[j] = true;
                settled = true;
                continue;
            }
            let w = if dp.is_zero() {
                // Stationary point: nudge outward.
                let bump = BigComplex::new(BigFloat::pow2(-(prec as i64) / 4), BigFloat::pow2(-(prec as i64) / 3));
                bump.mul(&BigComplex::new(z.re.abs().add(&BigFloat::one(), prec, Round::Nearest), BigFloat::zero()), prec)
            } else {
                let newton = p.div(&dp, prec);
                // Σ 1/(z − z_k) only needs a few correct digits once the
                // Newton term is small; well separated pairs go through f64.
                let (zr, zi) = approx[j];
                let (mut sr, mut si) = (0.0, 0.0);
                let mut s = BigComplex::zero();
                for (k, zk) in roots.iter().enumerate() {
                    if k == j {
                        continue;
                    }
                    let (dr, di) = (zr - approx[k].0, zi - approx[k].1);
                    let n2 = dr * dr + di * di;
                    if n2.is_finite() && n2 > 1e-20 * (zr * zr + zi * zi).max(1e-200) {
                        sr += dr / n2;
                        si -= di / n2;
                    } else {
                        let diff = z.sub(zk, prec);
                        if !diff.is_zero() {
                            s = s.add(&one.div(&diff, prec), prec);
                        }
                    }
                }
                let s = s.add(&BigComplex::from_f64(sr, si), prec);
                let den = one.sub(&newton.mul(&s, prec), prec);
                if den.is_zero() { newton } else { newton.div(&den, prec) }
            };
            roots[j] = z.sub(&w, prec);
            approx[j] = roots[j].to_f64();
            let tw = w.re.top().max(w.im.top());
            let tz = z.re.top().max(z.im.top()).max(0);
            if negligible(&w, &z, prec) || (tw >= last[j].saturating_sub(1) && tw < tz - prec as i64 / 2) {
                frozen[j] = true;
                settled = true;
            } else {
                moved = true;
            }
            last[j] = tw;
        }
        if !moved {
            return true;
        }
        idle = if settled { 0 } else { idle + 1 };
        if idle > patience {
            return false;
        }
    }
    false
}

/// Splits a dyadic complex number into `(A, E)` with value `A / 2^E`, `E ≥ 0`.
fn to_gaussian(z: &BigComplex) -> ((BigInt, BigInt), i64) {
    let e = (-z.re.exponent()).max(-z.im.exponent()).max(0);
    let lift = |x: &BigFloat| -> BigInt {
        if x.is_zero() {
            BigInt::zero()
        } else {
            x.mantissa() << (x.exponent() + e) as usize
        }
    };
    ((lift(&z.re), lift(&z.im)), e)
}

/// Exact `|p(z)|²·4^(E d)` pieces for dyadic `z = A / 2^E`:
/// returns `(Re H, Im H, E)` with `p(z) = H / 2^(E d)`.
fn exact_value(coeffs: &[BigInt], z: &BigComplex) -> (BigInt, BigInt, i64) {
    let ((ar, ai), e) = to_gaussian(z);
    let d = coeffs.len() - 1;
    let mut sr = coeffs[d].clone();
    let mut si = BigInt::zero();
    for k in (0..d).rev() {
        let nr = &sr * &ar - &si * &ai + (&coeffs[k] << ((d - k) as i64 * e) as usize);
        let ni = &sr * &ai + &si * &ar;
        sr = nr;
        si = ni;
    }
    (sr, si, e)
}

/// Upper bound of `√(x)` for an exact integer `x ≥ 0`, scaled by `2^-shift`.
fn sqrt_up(x: &BigInt, shift: i64) -> BigFloat {
    BigFloat::from_bigint(x, 64, Round::Up).sqrt(64, Round::Up).mul_pow2(-shift)
}

/// Inclusion radii for the given centres (made exact by their dyadic form).
pub fn certify(coeffs: &[BigInt], centers: &[BigComplex]) -> Certified {
    let d = centers.len();
    let lc = BigFloat::from_bigint(&coeffs[d].abs(), 64, Round::Down);
    let mut radii = Vec::with_capacity(d);
    for j in 0..d {
        let (hr, hi, e) = exact_value(coeffs, &centers[j]);
        let num = sqrt_up(&(&hr * &hr + &hi * &hi), e * d as i64);
        // Lower bound of ∏ |c_j − c_k|² from exact differences.
        let mut prod = BigFloat::one();
        let mut degenerate = false;
        for k in 0..d {
            if k == j {
                continue;
            }
            let dr = centers[j].re.sub_exact(&centers[k].re);
            let di = centers[j].im.sub_exact(&centers[k].im);
            let n2 = dr.mul_exact(&dr).add(&di.mul_exact(&di), 64, Round::Down);
            if n2.is_zero() {
                degenerate = true;
                break;
            }
            prod = prod.mul(&n2, 64, Round::Down);
        }
        if degenerate {
            radii.push(None);
            continue;
        }
        let den = lc.mul(&prod.sqrt(64, Round::Down), 64, Round::Down);
        let r = num.div(&den, 64, Round::Up).mul(&BigFloat::from_int(d as i64), 64, Round::Up);
        radii.push(Some(r));
    }
    let component = components(centers, &radii);
    Certified { centers: centers.to_vec(), radii, component }
}

/// Connected components of overlapping closed disks (exact tests).
fn components(centers: &[BigComplex], radii: &[Option<BigFloat>]) -> Vec<usize> {
    let d = centers.len();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for j in 0..d {
        for k in j + 1..d {
            let overlap = match (&radii[j], &radii[k]) {
                (Some(a), Some(b)) => {
                    let s = a.add_exact(b);
                    let dr = centers[j].re.sub_exact(&centers[k].re);
                    let di = centers[j].im.sub_exact(&centers[k].im);
                    let dist2 = dr.mul_exact(&dr).add_exact(&di.mul_exact(&di));
                    s.mul_exact(&s) >= dist2
                }
                _ => true,
            };
            if overlap {
                let (a, b) = (find(&mut parent, j), find(&mut parent, k));
                parent[a] = b;
            }
        }
    }
    (0..d).map(|i| find(&mut parent, i)).collect()
}
