//! Regeneration of the five reference tables and comparison with the
//! golden copies under `data/`.

use serde::Serialize;

use crate::arith::rat::{fmt_rat, pow_rat, to_decimal};
use crate::arith::{int, parse_rat, rat, sigma_diff, ArithFn, Rat};
use crate::bounds::{kappa_from, Majorant, MajorantKind, Variant};
use crate::error::{Error, Result};
use crate::eta::e4_reciprocal_coeffs;
use crate::zeros::{min_zero_table, START_PRECISION};

const GOLDEN: [&str; 5] = [
    include_str!("../data/table1.tsv"),
    include_str!("../data/table2.tsv"),
    include_str!("../data/table3.tsv"),
    include_str!("../data/table4.tsv"),
    include_str!("../data/table5.tsv"),
];

/// Rows of the minimal-zero table regenerated by default.
pub const TABLE5_DEFAULT_MAX_N: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub id: u8,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_tsv(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        out
    }

    fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

fn parse_tsv(id: u8, text: &str) -> Table {
    let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let header = lines.next().unwrap_or_default().split('\t').map(String::from).collect();
    let rows = lines.map(|l| l.split('\t').map(String::from).collect()).collect();
    Table { id, header, rows }
}

fn check_id(which: u8) -> Result<()> {
    if (1..=5).contains(&which) {
        Ok(())
    } else {
        Err(Error::Domain(format!("no table {which}; choose 1 to 5")))
    }
}

pub fn golden(which: u8) -> Result<Table> {
    check_id(which)?;
    Ok(parse_tsv(which, GOLDEN[which as usize - 1]))
}

/// Regenerates a table. `max_n` caps the row index for tables 1, 2 and 5;
/// `jobs` bounds the worker threads used for table 5.
pub fn generate(which: u8, max_n: Option<usize>, jobs: usize) -> Result<Table> {
    check_id(which)?;
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(match which {
        1 => {
            let n = max_n.unwrap_or(10);
            let t = e4_reciprocal_coeffs(n)?;
            let rows = (1..=n)
                .map(|m| {
                    let mut row = vec![m.to_string()];
                    row.extend(t.columns.iter().map(|c| c.values[m].clone()));
                    row
                })
                .collect();
            Table { id: 1, header: s(&["n", "230^(n-1)", "beta_n/240", "232^(n-1)"]), rows }
        }
        2 => {
            let n = max_n.unwrap_or(10);
            let t = e4_reciprocal_coeffs(n)?;
            let rows = (1..=n)
                .map(|m| {
                    let b = t.get(m).unwrap() / int(240);
                    let e = m as u32 - 1;
                    vec![
                        e.to_string(),
                        to_decimal(&(&b / pow_rat(&int(230), e)), 8),
                        to_decimal(&(&b / pow_rat(&int(232), e)), 8),
                    ]
                })
                .collect();
            Table {
                id: 2,
                header: s(&["n-1", "beta_n/(240*230^(n-1))", "beta_n/(240*232^(n-1))"]),
                rows,
            }
        }
        3 => {
            let id = ArithFn::id();
            let a = kappa_from(
                Variant::A,
                &Majorant::preset(MajorantKind::G1, &id)?,
                &rat(1, 6),
                Some(&rat(11, 25)),
            )?;
            let b = kappa_from(Variant::B, &Majorant::preset(MajorantKind::G2, &id)?, &rat(1, 3), None)?;
            let row = [&a.eps, &a.t_eps, &a.kappa, &b.eps, &b.t_eps, &b.kappa].map(short_rat).to_vec();
            Table { id: 3, header: s(&["eps1", "T1", "kappa1", "eps2", "T2", "kappa2"]), rows: vec![row] }
        }
        4 => {
            let rows = (1..=14u64)
                .map(|k| Ok(vec![k.to_string(), short_rat(&sigma_diff(k)?)]))
                .collect::<Result<_>>()?;
            Table { id: 4, header: s(&["k", "|sigma(k+1)-3sigma(k)|"]), rows }
        }
        _ => {
            let cap = max_n.unwrap_or(TABLE5_DEFAULT_MAX_N);
            let ns: Vec<usize> = golden(5)?
                .rows
                .iter()
                .filter_map(|r| r[0].parse::<usize>().ok())
                .filter(|&n| n <= cap)
                .collect();
            let rows = min_zero_table(&ns, START_PRECISION, jobs)?
                .into_iter()
                .map(|r| vec![r.n.to_string(), r.min_re, r.method.to_string(), r.precision_bits.to_string()])
                .collect();
            Table { id: 5, header: s(&["n", "min_re", "method", "precision_bits"]), rows }
        }
    })
}

/// Integers without the `/1`.
fn short_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        fmt_rat(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub row: String,
    pub column: String,
    pub expected: String,
    pub got: String,
}

/// Compares the generated rows with the golden rows of the same key (first
/// column) on the shared columns. Numeric cells compare by value, so
/// `-3` matches `-3.00000`.
pub fn compare(generated: &Table, golden: &Table) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let shared: Vec<(usize, usize, &String)> = golden
        .header
        .iter()
        .enumerate()
        .filter_map(|(gi, h)| generated.column(h).map(|ti| (gi, ti, h)))
        .collect();
    for row in &generated.rows {
        let Some(gold) = golden.rows.iter().find(|g| g[0] == row[0]) else {
            out.push(Mismatch { row: row[0].clone(), column: "n".into(), expected: "(no golden row)".into(), got: row[0].clone() });
            continue;
        };
        for &(gi, ti, h) in &shared {
            if !same_cell(&gold[gi], &row[ti]) {
                out.push(Mismatch { row: row[0].clone(), column: h.clone(), expected: gold[gi].clone(), got: row[ti].clone() });
            }
        }
    }
    out
}

fn same_cell(a: &str, b: &str) -> bool {
    a == b || matches!((parse_rat(a), parse_rat(b)), (Ok(x), Ok(y)) if x == y)
}
