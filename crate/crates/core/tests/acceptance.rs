//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always print; exits nonzero if any criterion fails.

use std::time::Instant;

use arithpoly::arith::rat::to_f64;
use arithpoly::arith::{fmt_rat, int, parse_rat, rat, ArithFn, Rat};
use arithpoly::bounds::{kappa_from, lower_bound, optimize_kappa, standard_certificate, Grid, KappaCertificate, Majorant, MajorantKind, Variant};
use arithpoly::eta::{beta_sandwich, e4_reciprocal_coeffs};
use arithpoly::suites::{self, SuiteReport};
use arithpoly::tables::{compare, generate, golden};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn suite_outcome(r: &SuiteReport) -> Outcome {
    let failed: Vec<String> = r.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    if failed.is_empty() {
        Ok(format!("{} checks", r.checks.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn table5() -> Outcome {
    let expected = [
        (1, "0"),
        (2, "-3"),
        (3, "-8"),
        (4, "-14"),
        (5, "-20.61187"),
        (6, "-27.64001"),
        (7, "-34.97153"),
        (8, "-42.53511"),
        (9, "-50.28267"),
        (10, "-58.18014"),
        (50, "-410.63656"),
        (100, "-874.47135"),
    ];
    let start = Instant::now();
    let t = generate(5, Some(100), jobs()).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(t.rows.len() == expected.len(), format!("{} rows", t.rows.len()))?;
    for (row, (n, v)) in t.rows.iter().zip(expected) {
        ensure(row[0] == n.to_string(), format!("row order: {}", row[0]))?;
        let got = parse_rat(&row[1]).map_err(|e| e.to_string())?;
        ensure(got == parse_rat(v).unwrap(), format!("n = {n}: {} vs {v}", row[1]))?;
    }
    ensure(secs <= 60.0, format!("took {secs:.1} s"))?;
    Ok(format!("12 rows to 5 places in {secs:.2} s"))
}

fn table1() -> Outcome {
    let t = e4_reciprocal_coeffs(10).map_err(|e| e.to_string())?;
    let beta10 = (t.get(10).unwrap() / int(240)).to_integer().to_string();
    ensure(beta10 == "1857705425589167301906", format!("beta_10/240 = {beta10}"))?;
    let g = generate(1, Some(10), 1).map_err(|e| e.to_string())?;
    let m = compare(&g, &golden(1).unwrap());
    ensure(m.is_empty() && g.rows.len() == 10, format!("{m:?}"))?;
    for (lo, hi) in [(int(230), int(232)), (parse_rat("230.7648").unwrap(), parse_rat("231.2353").unwrap())] {
        let s = beta_sandwich(10, &lo, &hi).map_err(|e| e.to_string())?;
        ensure(s.holds, format!("sandwich [{}, {}] fails at n = {:?}", s.lo, s.hi, s.first_failure))?;
    }
    Ok("10 rows exact; both sandwiches hold".into())
}

fn table2() -> Outcome {
    let g = generate(2, Some(10), 1).map_err(|e| e.to_string())?;
    let gold = golden(2).unwrap();
    let m = compare(&g, &gold);
    ensure(m.is_empty(), format!("{m:?}"))?;
    ensure(gold.rows.iter().all(|r| g.rows.iter().any(|x| x == r)), "golden row missing")?;
    Ok(format!("{} rows, 8 decimals each", g.rows.len()))
}

fn certificates() -> Outcome {
    let e = |r: arithpoly::Result<KappaCertificate>| r.map_err(|e| e.to_string());
    let sigma = ArithFn::sigma();
    let s3 = ArithFn::sigma3();
    let id = ArithFn::id();
    let g2 = |g: &ArithFn| Majorant::preset(MajorantKind::G2, g).unwrap();
    let g1 = |g: &ArithFn| Majorant::preset(MajorantKind::G1, g).unwrap();

    let c = e(kappa_from(Variant::B, &g2(&sigma), &rat(2, 11), Some(&rat(3, 14))))?;
    let reference = Rat::new(3043993780u64.into(), 14206147659u64.into());
    ensure(c.kappa == rat(119, 11), "119/11")?;
    ensure(c.g_bound <= reference && reference < rat(3, 14), "G2(2/11) bound")?;

    let c = e(kappa_from(
        Variant::B,
        &Majorant::sigma_g2(12).unwrap(),
        &rat(18289, 100000),
        Some(&rat(217, 1000)),
    ))?;
    ensure(c.kappa <= rat(10815, 1000), format!("kappa {} above 10.815", c.kappa))?;

    let a = e(kappa_from(Variant::A, &g1(&s3), &rat(87, 20000), Some(&rat(1, 25))))?;
    ensure(a.kappa == rat(62500, 261) && a.g_bound < rat(1, 25), "62500/261")?;
    let b = e(kappa_from(Variant::B, &Majorant::sigma3_g2(5).unwrap(), &rat(87, 20000), Some(&rat(1, 982))))?;
    ensure(b.kappa == rat(20408906, 85347) && b.g_bound < rat(1, 982), "20408906/85347")?;

    let best = e(optimize_kappa(Variant::B, &g2(&s3), &Grid::default()))?;
    ensure(best.kappa <= rat(539, 16), format!("grid optimum {} above 539/16", best.kappa))?;

    let t3 = generate(3, None, 1).map_err(|e| e.to_string())?;
    ensure(t3.rows[0][2] == "75/7" && t3.rows[0][5] == "20/3", format!("{:?}", t3.rows[0]))?;

    let c = e(kappa_from(Variant::A, &g1(&id), &rat(2, 11), Some(&rat(1, 2))))?;
    ensure(c.kappa == int(11), "11")?;
    Ok(format!("all exact; sigma3 B grid optimum {:.4} <= 539/16 at T = {}", to_f64(&best.kappa), fmt_rat(&best.t_eps)))
}

fn table4() -> Outcome {
    let t = generate(4, None, 1).map_err(|e| e.to_string())?;
    let got: Vec<&str> = t.rows.iter().map(|r| r[1].as_str()).collect();
    let want = ["0", "5", "5", "15", "6", "28", "9", "32", "21", "42", "8", "70", "18", "48"];
    ensure(got == want, format!("{got:?}"))?;
    Ok("14 values".into())
}

fn oracles() -> Outcome {
    let mut checks = vec![suites::nekrasov_okounkov(12)];
    checks.extend(suites::series_oracles(30));
    checks.extend(suites::toy_oracle(100));
    let r = SuiteReport { suite: "oracles".into(), passed: checks.iter().all(|c| c.passed), checks };
    suite_outcome(&r)
}

fn identities() -> Outcome {
    suite_outcome(&suites::identity_suite(50, 20))
}

fn growth() -> Outcome {
    let mut r = suites::growth_suite(&suites::growth_pairs(), &[Variant::A, Variant::B], None, 30, jobs());
    let legacy = suites::legacy_sigma_certificate().map_err(|e| e.to_string())?;
    ensure(legacy.kappa == int(15), "legacy kappa")?;
    r.checks.push(suites::growth_check(&ArithFn::sigma(), &ArithFn::id(), &legacy, 30));
    suite_outcome(&r)
}

fn zero_free() -> Outcome {
    let (r, rows) = suites::zero_free_suite(&ArithFn::sigma(), None, 60, 128, &rat(1, 1_000_000_000_000), jobs())
        .map_err(|e| e.to_string())?;
    suite_outcome(&r)?;
    let max = rows.iter().filter_map(|r| r.ratio).fold(0.0, f64::max);
    ensure(max < 119.0 / 11.0, format!("ratio {max}"))?;
    Ok(format!("60 polynomials; largest ratio {max:.4} < 119/11"))
}

fn lower_bounds() -> Outcome {
    let mut certs = Vec::new();
    for g in [ArithFn::one(), ArithFn::id(), ArithFn::sigma(), ArithFn::sigma3()] {
        for v in [Variant::A, Variant::B] {
            certs.push(standard_certificate(&g, v).map_err(|e| e.to_string())?);
        }
    }
    certs.push(suites::legacy_sigma_certificate().map_err(|e| e.to_string())?);
    certs.push(
        kappa_from(Variant::B, &Majorant::sigma_g2(12).unwrap(), &rat(18289, 100000), Some(&rat(217, 1000)))
            .map_err(|e| e.to_string())?,
    );
    for c in &certs {
        let g = ArithFn::by_name(&c.g_name).unwrap();
        let eps = (c.eps != int(0)).then_some(&c.eps);
        let lb = lower_bound(c.variant, &g, eps).map_err(|e| e.to_string())?;
        ensure(c.kappa >= lb.hi, format!("{} {}: kappa {} below {}", c.variant, c.g_name, c.kappa, lb.hi))?;
    }
    let sigma = ArithFn::sigma();
    let a = lower_bound(Variant::A, &sigma, None).map_err(|e| e.to_string())?;
    ensure(a.lo == int(12) && a.hi == int(12), "A sigma bound is not 12")?;
    let b = lower_bound(Variant::B, &sigma, None).map_err(|e| e.to_string())?;
    ensure(b.hi < rat(10815, 1000), "B sigma bound not below 10.815")?;
    Ok(format!("{} certificates; A sigma = 12; B sigma < {:.6}", certs.len(), b.to_f64() + 1e-6))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("minimal zeros of P_n^{sigma,id}", table5),
        ("beta_n/240 exact with sandwiches", table1),
        ("normalized beta ratios", table2),
        ("kappa certificates", certificates),
        ("|sigma(k+1) - 3 sigma(k)|", table4),
        ("oracle equivalence", oracles),
        ("identity suites", identities),
        ("growth inequalities", growth),
        ("zero-free verification", zero_free),
        ("lower-bound consistency", lower_bounds),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {:>2} PASS {name} ({d}) [{secs:.2} s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {d} [{secs:.2} s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
