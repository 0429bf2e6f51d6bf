//! Invariant suites shared by the command line and the acceptance tests.

use serde::Serialize;

use crate::arith::rat::{fmt_rat, to_f64};
use crate::arith::{int, rat, ArithFn, Rat};
use crate::bounds::{
    kappa_from, standard_certificate, verify_growth, KappaCertificate, Majorant, MajorantKind, SampleSpec, Variant,
};
use crate::error::Result;
use crate::eta::{delta_expansion, ramanujan_tau};
use crate::oracles::{
    chebyshev_u, exp_series_poly, laguerre, nekrasov_okounkov_poly, reciprocal_series_poly, toy_closed_form,
    NEKRASOV_OKOUNKOV_HORIZON,
};
use crate::par::par_map;
use crate::polyrec::{build_sequence, RationalPoly};
use crate::zeros::{all_roots, verify_zero_free};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: impl Into<String>, r: Result<String>) -> Self {
        match r {
            Ok(d) => Check::new(name, true, d),
            Err(e) => Check::new(name, false, e.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>) -> Self {
        SuiteReport { suite: suite.into(), passed: checks.iter().all(|c| c.passed), checks }
    }
}

/// First index in `0..=max_n` where `oracle(n)` differs from `P_n^{g,h}`.
fn first_disagreement(
    g: &ArithFn,
    h: &ArithFn,
    max_n: usize,
    oracle: impl Fn(usize) -> Result<RationalPoly>,
) -> Result<String> {
    let seq = build_sequence(g, h, max_n)?;
    for n in 0..=max_n {
        let o = oracle(n)?;
        if &o != seq.get(n).unwrap() {
            return Err(crate::Error::Verification {
                n,
                x: String::new(),
                check: "coefficientwise".into(),
                detail: format!("oracle {o} vs recurrence {}", seq.get(n).unwrap()),
            });
        }
    }
    Ok(format!("n <= {max_n}"))
}

/// Hook-length sums against `P_n^{σ,id}`.
pub fn nekrasov_okounkov(max_n: usize) -> Check {
    let n = max_n.min(NEKRASOV_OKOUNKOV_HORIZON);
    Check::from_result(
        "nekrasov-okounkov vs P^{sigma,id}",
        first_disagreement(&ArithFn::sigma(), &ArithFn::id(), n, nekrasov_okounkov_poly),
    )
}

/// Exp-series against `P_n^{g,id}` and reciprocal series against `P_n^{g,one}`.
pub fn series_oracles(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for g in [ArithFn::sigma(), ArithFn::id(), ArithFn::sigma3(), ArithFn::one()] {
        out.push(Check::from_result(
            format!("exp series vs P^{{{},id}}", g.name()),
            first_disagreement(&g, &ArithFn::id(), max_n, |n| exp_series_poly(&g, n)),
        ));
        out.push(Check::from_result(
            format!("reciprocal series vs P^{{{},one}}", g.name()),
            first_disagreement(&g, &ArithFn::one(), max_n, |n| reciprocal_series_poly(&g, n)),
        ));
    }
    out
}

/// Closed form `x(x + h(1))···(x + h(n−1)) / (h(1)···h(n))` against `P_n^{1,h}`.
pub fn toy_oracle(max_n: usize) -> Vec<Check> {
    [ArithFn::id(), ArithFn::square(), ArithFn::one()]
        .iter()
        .map(|h| {
            Check::from_result(
                format!("closed form vs P^{{one,{}}}", h.name()),
                first_disagreement(&ArithFn::one(), h, max_n, |n| toy_closed_form(h, n)),
            )
        })
        .collect()
}

pub fn oracle_suite(max_n: usize) -> SuiteReport {
    let mut checks = vec![nekrasov_okounkov(max_n.min(12))];
    checks.extend(series_oracles(max_n));
    checks.extend(toy_oracle(max_n));
    SuiteReport::new("oracles", checks)
}

/// `(x/n) L_{n−1}^{(1)}(−x) = P_n^{id,id}`, `x U_{n−1}(x/2 + 1) = P_n^{id,one}`
/// and `τ(n) = P_{n−1}^{σ,id}(−24)` against the `Δ` product.
pub fn identity_suite(max_n: usize, tau_n: usize) -> SuiteReport {
    let neg_x = RationalPoly::from_ints(&[0, -1]);
    let half_plus_one = RationalPoly::new(vec![int(1), rat(1, 2)]);
    let checks = vec![
        Check::from_result(
            "laguerre identity",
            first_disagreement(&ArithFn::id(), &ArithFn::id(), max_n, |n| {
                Ok(if n == 0 {
                    RationalPoly::one()
                } else {
                    laguerre(n - 1, &int(1)).compose(&neg_x).shift(1).scale(&rat(1, n as i64))
                })
            }),
        ),
        Check::from_result(
            "chebyshev identity",
            first_disagreement(&ArithFn::id(), &ArithFn::one(), max_n, |n| {
                Ok(if n == 0 { RationalPoly::one() } else { chebyshev_u(n - 1).compose(&half_plus_one).shift(1) })
            }),
        ),
        Check::from_result(
            "tau vs delta expansion",
            ramanujan_tau(tau_n).and_then(|t| {
                if t == delta_expansion(tau_n) {
                    Ok(format!("n <= {tau_n}"))
                } else {
                    Err(crate::Error::Verification {
                        n: 0,
                        x: "-24".into(),
                        check: "tau".into(),
                        detail: "recurrence and product disagree".into(),
                    })
                }
            }),
        ),
    ];
    SuiteReport::new("identities", checks)
}

/// The `(g, h)` pairs of the growth suite.
pub fn growth_pairs() -> Vec<(ArithFn, ArithFn)> {
    vec![
        (ArithFn::sigma(), ArithFn::id()),
        (ArithFn::id(), ArithFn::id()),
        (ArithFn::id(), ArithFn::one()),
        (ArithFn::sigma3(), ArithFn::one()),
    ]
}

/// `ε = 1/2`, `κ = 15` for `σ`: the half/three-halves sandwich.
pub fn legacy_sigma_certificate() -> Result<KappaCertificate> {
    let m = Majorant::preset(MajorantKind::G1, &ArithFn::sigma())?;
    kappa_from(Variant::A, &m, &rat(2, 15), Some(&rat(1, 2)))
}

/// Runs the exact growth checks for one certificate.
pub fn growth_check(g: &ArithFn, h: &ArithFn, cert: &KappaCertificate, max_n: usize) -> Check {
    let name = format!("{} P^{{{},{}}} kappa={}", cert.variant, g.name(), h.name(), fmt_rat(&cert.kappa));
    let r = build_sequence(g, h, max_n)
        .and_then(|seq| verify_growth(&seq, cert, 1..=max_n, &SampleSpec::default()))
        .map(|rep| format!("{} checks, min margin {:.3e}", rep.checks.len(), rep.min_margin));
    Check::from_result(name, r)
}

/// Both variants for every pair, with an optional κ override (accepted only
/// when it is at least the certified value).
pub fn growth_suite(
    pairs: &[(ArithFn, ArithFn)],
    variants: &[Variant],
    kappa: Option<&Rat>,
    max_n: usize,
    jobs: usize,
) -> SuiteReport {
    let mut tasks = Vec::new();
    for (g, h) in pairs {
        for &v in variants {
            tasks.push((g.clone(), h.clone(), v));
        }
    }
    let checks = par_map(&tasks, jobs, |(g, h, v)| {
        let cert = standard_certificate(g, *v).and_then(|mut c| {
            if let Some(k) = kappa {
                if k < &c.kappa {
                    return Err(crate::Error::Infeasible(format!(
                        "kappa {} is below the certified {} for {v} and `{}`",
                        fmt_rat(k),
                        fmt_rat(&c.kappa),
                        g.name()
                    )));
                }
                c.kappa = k.clone();
            }
            Ok(c)
        });
        match cert {
            Ok(c) => growth_check(g, h, &c, max_n),
            Err(e) => Check::new(format!("{v} P^{{{},{}}}", g.name(), h.name()), false, e.to_string()),
        }
    });
    SuiteReport::new("growth", checks)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroFreeRow {
    pub n: usize,
    pub max_mod: f64,
    pub threshold: String,
    pub ratio: Option<f64>,
    pub strict: bool,
}

/// Roots of `P_n^{g,id}` for `1 ≤ n ≤ max_n` against `κ·(n−1)` with the
/// reference B certificate (or `kappa` if given). The bound must hold
/// strictly for `n ≥ 2`.
pub fn zero_free_suite(
    g: &ArithFn,
    kappa: Option<&Rat>,
    max_n: usize,
    precision: u32,
    tol: &Rat,
    jobs: usize,
) -> Result<(SuiteReport, Vec<ZeroFreeRow>)> {
    let mut cert = standard_certificate(g, Variant::B)?;
    if let Some(k) = kappa {
        cert.kappa = k.clone();
    }
    let h = ArithFn::id();
    let seq = build_sequence(g, &h, max_n)?;
    let ns: Vec<usize> = (1..=max_n).collect();
    let rows = par_map(&ns, jobs, |&n| -> Result<ZeroFreeRow> {
        let rep = all_roots(seq.get(n).unwrap(), precision, tol)?;
        let z = verify_zero_free(&rep, &cert, &h)?;
        let m = rep.max_mod.clone().expect("n ≥ 1");
        let threshold = &cert.kappa * int(n as i64 - 1);
        let strict = n == 1 || m.hi < threshold;
        Ok(ZeroFreeRow { n, max_mod: to_f64(&m.mid()), threshold: fmt_rat(&threshold), ratio: z.ratio, strict: z.holds && strict })
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let mut checks: Vec<Check> = rows
        .iter()
        .map(|r| {
            Check::new(
                format!("zero-free P_{}^{{{},id}}", r.n, g.name()),
                r.strict,
                format!("max|root| = {:.6} vs {} (ratio {})", r.max_mod, r.threshold, r.ratio.map_or("-".into(), |x| format!("{x:.4}"))),
            )
        })
        .collect();
    let ratios: Vec<(usize, f64)> = rows.iter().filter_map(|r| r.ratio.map(|x| (r.n, x))).collect();
    if let Some(&(n_max, r_max)) = ratios.iter().max_by(|a, b| a.1.total_cmp(&b.1)) {
        let monotone = ratios.windows(2).all(|w| w[0].1 <= w[1].1);
        let k = to_f64(&cert.kappa);
        checks.push(Check::new(
            "empirical ratio max|root|/(n-1)",
            r_max < k,
            format!(
                "largest {r_max:.4} at n = {n_max}, below kappa = {k:.4}; {}",
                if monotone { "nondecreasing in n" } else { "not monotone in n" }
            ),
        ));
    }
    Ok((SuiteReport::new("zero-free", checks), rows))
}
