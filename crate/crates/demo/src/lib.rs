//! Browser bindings for the demo page. Every entry point returns JSON.

use arithpoly::arith::rat::{fmt_rat, to_f64};
use arithpoly::arith::{rat, ArithFn, Rat};
use arithpoly::bounds::{kappa_from, optimize_kappa, standard_certificate, Grid, Majorant, Variant};
use arithpoly::eta::{eta_power_coeffs, nonvanishing_region};
use arithpoly::polyrec::build_sequence;
use arithpoly::zeros::roots_report;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest degree the page will ask for.
pub const MAX_DEGREE: usize = 60;

#[derive(Serialize)]
struct ZerosOut {
    g: String,
    n: usize,
    method: String,
    roots: Vec<[f64; 2]>,
    max_mod: f64,
    kappa: String,
    radius: f64,
}

#[derive(Serialize)]
struct CurvePoint {
    t: f64,
    kappa: f64,
    eps: f64,
}

#[derive(Serialize)]
struct CurveOut {
    g: String,
    variant: String,
    points: Vec<CurvePoint>,
    best_t: String,
    best_kappa: String,
    best_kappa_decimal: f64,
}

#[derive(Serialize)]
struct EtaOut {
    r: i64,
    coeffs: Vec<String>,
    zero_indices: Vec<usize>,
    nonvanishing_radius: Vec<f64>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Roots of `P_n^{g,id}` with the zero-free radius `κ·(n−1)` of the
/// reference B certificate for `g`.
pub fn zeros_json(g: &str, n: usize) -> Result<String, String> {
    if n == 0 || n > MAX_DEGREE {
        return Err(format!("n must lie in 1..={MAX_DEGREE}"));
    }
    let g = ArithFn::by_name(g).map_err(|e| e.to_string())?;
    let cert = standard_certificate(&g, Variant::B).map_err(|e| e.to_string())?;
    let seq = build_sequence(&g, &ArithFn::id(), n).map_err(|e| e.to_string())?;
    let rep = roots_report(seq.get(n).unwrap(), 128, &rat(1, 1_000_000_000)).map_err(|e| e.to_string())?;
    Ok(to_json(&ZerosOut {
        g: g.name().to_string(),
        n,
        method: rep.method.to_string(),
        roots: rep.roots.iter().map(|r| [to_f64(&r.re), to_f64(&r.im)]).collect(),
        max_mod: rep.max_mod.as_ref().map_or(0.0, |m| to_f64(&m.hi)),
        kappa: fmt_rat(&cert.kappa),
        radius: to_f64(&(&cert.kappa * Rat::from_integer((n as i64 - 1).into()))),
    }))
}

/// `κ` and the tightest `ε` at `T = j/steps` wherever the majorant value is
/// below 1, and the grid optimum.
pub fn kappa_curve_json(g: &str, variant: &str, steps: u32) -> Result<String, String> {
    if !(4..=2000).contains(&steps) {
        return Err("steps must lie in 4..=2000".into());
    }
    let g = ArithFn::by_name(g).map_err(|e| e.to_string())?;
    let variant: Variant = variant.parse().map_err(|e: arithpoly::Error| e.to_string())?;
    let m = Majorant::preset(variant.majorant_kind(), &g).map_err(|e| e.to_string())?;
    let points = (1..steps)
        .filter_map(|j| {
            let t = rat(j as i64, steps as i64);
            kappa_from(variant, &m, &t, None)
                .ok()
                .map(|c| CurvePoint { t: to_f64(&t), kappa: to_f64(&c.kappa), eps: to_f64(&c.eps) })
        })
        .collect();
    let best = optimize_kappa(variant, &m, &Grid { denominator: steps as u64, digits: 6 }).map_err(|e| e.to_string())?;
    Ok(to_json(&CurveOut {
        g: g.name().to_string(),
        variant: variant.to_string(),
        points,
        best_t: fmt_rat(&best.t_eps),
        best_kappa: fmt_rat(&best.kappa),
        best_kappa_decimal: to_f64(&best.kappa),
    }))
}

/// Coefficients `a_0..a_n` of `∏(1 − q^m)^r` with the radius
/// `(119/11)(k−1)` beyond which `a_k`, as a polynomial in `r`, cannot vanish.
pub fn eta_json(r: i64, n: usize) -> Result<String, String> {
    if n > 200 || r.unsigned_abs() > 1000 {
        return Err("need n <= 200 and |r| <= 1000".into());
    }
    let t = eta_power_coeffs(r, n).map_err(|e| e.to_string())?;
    let cert = standard_certificate(&ArithFn::sigma(), Variant::B).map_err(|e| e.to_string())?;
    let radius = (0..=n)
        .map(|k| nonvanishing_region(k, &cert).map(|z| to_f64(&z.threshold)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(to_json(&EtaOut {
        r,
        coeffs: t.values.iter().map(|v| v.to_integer().to_string()).collect(),
        zero_indices: t.values.iter().enumerate().filter(|(_, v)| *v == &Rat::from_integer(0.into())).map(|(k, _)| k).collect(),
        nonvanishing_radius: radius,
    }))
}

#[wasm_bindgen]
pub fn zeros(g: &str, n: usize) -> Result<String, JsValue> {
    zeros_json(g, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn kappa_curve(g: &str, variant: &str, steps: u32) -> Result<String, JsValue> {
    kappa_curve_json(g, variant, steps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn eta_coeffs(r: i64, n: usize) -> Result<String, JsValue> {
    eta_json(r, n).map_err(|e| JsValue::from_str(&e))
}
