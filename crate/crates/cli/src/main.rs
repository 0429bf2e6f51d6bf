//! Command-line front end for arithpoly.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arithpoly::arith::rat::{fmt_rat, to_f64};
use arithpoly::arith::{int, parse_rat, to_decimal, ArithFn, Rat};
use arithpoly::bounds::{
    kappa_from, lower_bound, optimize_kappa, standard_certificate, Grid, KappaCertificate, Majorant, Variant,
};
use arithpoly::polyrec::{build_sequence, eval_sequence};
use arithpoly::suites::{self, SuiteReport};
use arithpoly::tables::{self, Table};
use arithpoly::zeros::roots_report;
use arithpoly::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "arithpoly", version, about = "Recurrence polynomials of arithmetic functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,

    /// Output file (a directory for `tables` without `--which`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Starting working precision in bits for root finding.
    #[arg(long, default_value_t = 128, global = true)]
    precision: u32,

    /// Radius target for root enclosures.
    #[arg(long, default_value = "1/1000000000000", global = true)]
    tol: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of P_n, or the value P_n(x) with --eval.
    Poly {
        /// Built-in name (one, id, square, sigma, sigma<k>) or @FILE of values g(1), g(2), ...
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<String>,
        /// With --eval, list P_0(x), ..., P_n(x).
        #[arg(long, requires = "eval")]
        all: bool,
    },
    /// κ certificate at a given T, or the best one on a grid.
    Kappa {
        #[arg(long)]
        g: String,
        #[arg(long)]
        variant: String,
        #[arg(long = "T")]
        t: Option<String>,
        #[arg(long)]
        eps: Option<String>,
        /// Rebuild the preset majorant with its exact head up to this index.
        #[arg(long)]
        tail_start: Option<u64>,
        /// Grid denominator when --T is absent.
        #[arg(long, default_value_t = 2000)]
        grid: u64,
        /// Use the reference (T, ε) pair for this g and variant.
        #[arg(long, conflicts_with_all = ["t", "eps", "tail_start"])]
        legacy_eps: bool,
    },
    /// Regenerate the reference tables and compare with the golden copies.
    Tables {
        #[arg(long)]
        which: Option<u8>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Run an invariant suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        kappa: Option<String>,
    },
    /// Certified enclosures of all zeros of P_n.
    Zeros {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Oracles,
    Growth,
    ZeroFree,
    Identities,
    All,
}

/// A failed run: exit code plus message.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    payload: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse(_) | Error::Domain(_) => (2, "usage"),
            Error::Infeasible(_) => (3, "infeasible"),
            Error::Verification { .. } => (1, "verification"),
            _ => (1, "error"),
        };
        Failure { code, kind, message: e.to_string(), payload: None }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, kind: "usage", message: msg.into(), payload: None }
}

type Run<T> = std::result::Result<T, Failure>;

fn selector(s: &str) -> Run<ArithFn> {
    match s.strip_prefix('@') {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
            let values = text
                .split_whitespace()
                .map(parse_rat)
                .collect::<arithpoly::Result<Vec<_>>>()?;
            let name = Path::new(path).file_stem().and_then(|s| s.to_str()).unwrap_or(path);
            Ok(ArithFn::custom(name, values)?)
        }
        None => Ok(ArithFn::by_name(s)?),
    }
}

/// `num/den` or an integer; decimals are refused.
fn exact(flag: &str, s: &str) -> Run<Rat> {
    if s.contains('.') || s.contains(['e', 'E']) {
        return Err(usage(format!("--{flag} must be an exact rational such as 2/11, got `{s}`")));
    }
    Ok(parse_rat(s)?)
}

fn tsv_kv(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, v) in map {
            match v {
                Value::String(s) => out.push_str(&format!("{k}\t{s}\n")),
                _ => out.push_str(&format!("{k}\t{v}\n")),
            }
        }
    }
    out
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_poly(cli: &Cli, g: &str, h: &str, n: usize, eval: Option<&str>, all: bool) -> Run<String> {
    let (g, h) = (selector(g)?, selector(h)?);
    match eval {
        Some(x) => {
            let x = parse_rat(x)?;
            let values = eval_sequence(&g, &h, &x, n)?;
            let first = if all { 0 } else { n };
            Ok(match cli.format {
                Format::Tsv if !all => format!("{}\n", short(&values[n])),
                Format::Tsv => {
                    let mut out = String::from("n\tvalue\n");
                    for (k, v) in values.iter().enumerate() {
                        out.push_str(&format!("{k}\t{}\n", short(v)));
                    }
                    out
                }
                Format::Json => render_json(&json!({
                    "g": g.name(), "h": h.name(), "x": fmt_rat(&x), "n": n,
                    "values": values[first..].iter().map(fmt_rat).collect::<Vec<_>>(),
                })),
            })
        }
        None => {
            let seq = build_sequence(&g, &h, n)?;
            let p = seq.get(n).expect("built up to n");
            Ok(match cli.format {
                Format::Tsv => {
                    let mut out = String::from("k\tcoeff\n");
                    for (k, c) in p.coeffs().iter().enumerate() {
                        out.push_str(&format!("{k}\t{}\n", fmt_rat(c)));
                    }
                    out
                }
                Format::Json => render_json(&json!({
                    "g": g.name(), "h": h.name(), "poly": p.to_json(n),
                })),
            })
        }
    }
}

fn short(r: &Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        fmt_rat(r)
    }
}

struct KappaArgs<'a> {
    g: &'a str,
    variant: &'a str,
    t: Option<&'a str>,
    eps: Option<&'a str>,
    tail_start: Option<u64>,
    grid: u64,
    legacy: bool,
}

fn cmd_kappa(cli: &Cli, a: KappaArgs) -> Run<String> {
    let g = selector(a.g)?;
    let variant: Variant = a.variant.parse()?;
    let cert: KappaCertificate = if a.legacy {
        standard_certificate(&g, variant)?
    } else {
        let preset = Majorant::preset(variant.majorant_kind(), &g)?;
        let m = match a.tail_start {
            Some(k) => Majorant::new(
                preset.kind(),
                &g,
                preset.amplitude().clone(),
                preset.degree(),
                preset.shift(),
                k,
                preset.verified_horizon(),
            )?,
            None => preset,
        };
        let eps = a.eps.map(|e| exact("eps", e)).transpose()?;
        match a.t {
            Some(t) => kappa_from(variant, &m, &exact("T", t)?, eps.as_ref())?,
            None => {
                if eps.is_some() {
                    return Err(usage("--eps needs --T"));
                }
                optimize_kappa(variant, &m, &Grid { denominator: a.grid, ..Grid::default() })?
            }
        }
    };
    cert.validate()?;
    let lb = lower_bound(variant, &g, (cert.eps != int(0)).then_some(&cert.eps)).ok();
    let mut v = serde_json::to_value(cert.to_json()).expect("serializable");
    if let (Some(lb), Value::Object(map)) = (lb, &mut v) {
        map.insert("lower_bound".into(), json!([fmt_rat(&lb.lo), fmt_rat(&lb.hi)]));
        map.insert("above_lower_bound".into(), json!(cert.kappa >= lb.lo));
    }
    Ok(match cli.format {
        Format::Tsv => tsv_kv(&v),
        Format::Json => render_json(&v),
    })
}

fn cmd_tables(cli: &Cli, which: Option<u8>, max_n: Option<usize>, jobs: usize) -> Run<(String, Vec<(u8, String)>)> {
    let ids: Vec<u8> = match which {
        Some(w) => vec![w],
        None => (1..=5).collect(),
    };
    let mut generated: Vec<Table> = Vec::new();
    let mut mismatches = Vec::new();
    for id in ids {
        let t = tables::generate(id, max_n, jobs)?;
        for m in tables::compare(&t, &tables::golden(id)?) {
            mismatches.push((id, m));
        }
        generated.push(t);
    }
    let files: Vec<(u8, String)> = generated
        .iter()
        .map(|t| {
            (
                t.id,
                match cli.format {
                    Format::Tsv => t.to_tsv(),
                    Format::Json => render_json(&serde_json::to_value(t).expect("serializable")),
                },
            )
        })
        .collect();
    let joined = match cli.format {
        Format::Tsv => files.iter().map(|(id, s)| format!("# table {id}\n{s}")).collect::<Vec<_>>().join("\n"),
        Format::Json => render_json(&serde_json::to_value(&generated).expect("serializable")),
    };
    if !mismatches.is_empty() {
        let diff: Vec<String> = mismatches
            .iter()
            .map(|(id, m)| format!("table {id} row {} column {}: expected {} got {}", m.row, m.column, m.expected, m.got))
            .collect();
        return Err(Failure {
            code: 4,
            kind: "golden-mismatch",
            message: diff.join("\n"),
            payload: Some(json!(mismatches
                .iter()
                .map(|(id, m)| json!({"table": id, "row": m.row, "column": m.column, "expected": m.expected, "got": m.got}))
                .collect::<Vec<_>>())),
        });
    }
    Ok((joined, files))
}

struct VerifyArgs<'a> {
    suite: Suite,
    max_n: Option<usize>,
    g: Option<&'a str>,
    kappa: Option<&'a str>,
}

fn cmd_verify(cli: &Cli, a: VerifyArgs, jobs: usize) -> Run<(String, bool)> {
    let kappa = a.kappa.map(|k| exact("kappa", k)).transpose()?;
    let g = a.g.map(selector).transpose()?;
    let tol = parse_rat(&cli.tol)?;
    let run = |s: Suite| -> Run<SuiteReport> {
        Ok(match s {
            Suite::Oracles => suites::oracle_suite(a.max_n.unwrap_or(30)),
            Suite::Identities => suites::identity_suite(a.max_n.unwrap_or(50), 20),
            Suite::Growth => {
                let max_n = a.max_n.unwrap_or(30);
                let pairs: Vec<_> = suites::growth_pairs()
                    .into_iter()
                    .filter(|(pg, _)| g.as_ref().is_none_or(|g| g == pg))
                    .collect();
                if pairs.is_empty() {
                    return Err(usage("no growth pair uses this g; choose sigma, id or sigma3"));
                }
                let variants: Vec<Variant> = match &kappa {
                    None => vec![Variant::A, Variant::B],
                    Some(k) => [Variant::A, Variant::B]
                        .into_iter()
                        .filter(|&v| pairs.iter().any(|(pg, _)| standard_certificate(pg, v).is_ok_and(|c| &c.kappa <= k)))
                        .collect(),
                };
                if variants.is_empty() {
                    return Err(Failure::from(Error::Infeasible(format!(
                        "kappa {} is below every reference certificate",
                        fmt_rat(kappa.as_ref().unwrap())
                    ))));
                }
                let mut rep = suites::growth_suite(&pairs, &variants, kappa.as_ref(), max_n, jobs);
                if kappa.is_none() && pairs.iter().any(|(pg, _)| pg == &ArithFn::sigma()) {
                    let legacy = suites::legacy_sigma_certificate()?;
                    let c = suites::growth_check(&ArithFn::sigma(), &ArithFn::id(), &legacy, max_n);
                    rep.passed &= c.passed;
                    rep.checks.push(c);
                }
                rep
            }
            Suite::ZeroFree => {
                let g = g.clone().unwrap_or_else(ArithFn::sigma);
                suites::zero_free_suite(&g, kappa.as_ref(), a.max_n.unwrap_or(60), cli.precision, &tol, jobs)?.0
            }
            Suite::All => unreachable!(),
        })
    };
    let selected = match a.suite {
        Suite::All => vec![Suite::Oracles, Suite::Identities, Suite::Growth, Suite::ZeroFree],
        s => vec![s],
    };
    let reports = selected.into_iter().map(run).collect::<Run<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let out = match cli.format {
        Format::Tsv => {
            let mut out = String::from("suite\tcheck\tstatus\tdetail\n");
            for r in &reports {
                for c in &r.checks {
                    let status = if c.passed { "pass" } else { "FAIL" };
                    out.push_str(&format!("{}\t{}\t{status}\t{}\n", r.suite, c.name, c.detail));
                }
            }
            out
        }
        Format::Json => render_json(&json!({ "passed": passed, "suites": reports })),
    };
    Ok((out, passed))
}

fn cmd_zeros(cli: &Cli, g: &str, h: &str, n: usize) -> Run<String> {
    let (g, h) = (selector(g)?, selector(h)?);
    let seq = build_sequence(&g, &h, n)?;
    let rep = roots_report(seq.get(n).expect("built up to n"), cli.precision, &parse_rat(&cli.tol)?)?;
    Ok(match cli.format {
        Format::Tsv => {
            let mut out = String::new();
            out.push_str(&format!("# degree {} method {} precision {}\n", rep.n, rep.method, rep.precision_bits));
            if let Some(m) = &rep.min_re {
                out.push_str(&format!("# min_re {}\n", to_decimal(&m.mid(), 10)));
            }
            if let Some(m) = &rep.max_mod {
                out.push_str(&format!("# max_mod {}\n", to_decimal(&m.hi, 10)));
            }
            out.push_str("re\tim\trad\n");
            for r in &rep.roots {
                out.push_str(&format!("{}\t{}\t{:.3e}\n", to_decimal(&r.re, 12), to_decimal(&r.im, 12), to_f64(&r.rad)));
            }
            out
        }
        Format::Json => render_json(&serde_json::to_value(rep.to_json()).expect("serializable")),
    })
}

fn emit(path: Option<&Path>, text: &str) -> Run<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure { code: 1, kind: "io", message: format!("{}: {e}", p.display()), payload: None }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).ok();
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Run<()> {
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    match &cli.command {
        Command::Poly { g, h, n, eval, all } => {
            emit(cli.out.as_deref(), &cmd_poly(cli, g, h, *n, eval.as_deref(), *all)?)
        }
        Command::Kappa { g, variant, t, eps, tail_start, grid, legacy_eps } => {
            let a = KappaArgs {
                g,
                variant,
                t: t.as_deref(),
                eps: eps.as_deref(),
                tail_start: *tail_start,
                grid: *grid,
                legacy: *legacy_eps,
            };
            emit(cli.out.as_deref(), &cmd_kappa(cli, a)?)
        }
        Command::Tables { which, max_n } => {
            let (joined, files) = cmd_tables(cli, *which, *max_n, jobs)?;
            match (&cli.out, which) {
                (Some(dir), None) => {
                    fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
                    let ext = if cli.format == Format::Json { "json" } else { "tsv" };
                    for (id, text) in files {
                        emit(Some(&dir.join(format!("table{id}.{ext}"))), &text)?;
                    }
                    Ok(())
                }
                (out, Some(_)) => emit(out.as_deref(), &files[0].1),
                (None, None) => emit(None, &joined),
            }
        }
        Command::Verify { suite, max_n, g, kappa } => {
            let a = VerifyArgs { suite: *suite, max_n: *max_n, g: g.as_deref(), kappa: kappa.as_deref() };
            let (text, passed) = cmd_verify(cli, a, jobs)?;
            emit(cli.out.as_deref(), &text)?;
            if passed {
                Ok(())
            } else {
                Err(Failure { code: 1, kind: "verification", message: "some checks failed".into(), payload: None })
            }
        }
        Command::Zeros { g, h, n } => emit(cli.out.as_deref(), &cmd_zeros(cli, g, h, *n)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            if cli.format == Format::Json && f.kind != "verification" {
                let mut v = json!({ "error": f.kind, "message": f.message, "exit_code": f.code });
                if let Some(p) = f.payload {
                    v["details"] = p;
                }
                print!("{}", render_json(&v));
            }
            ExitCode::from(f.code)
        }
    }
}
