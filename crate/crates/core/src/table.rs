//! Tables of `(a, b)` over `z ∈ F_p^*`, the embedded reference tables, and
//! their CSV / JSON / Markdown renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::SeriesCache;
use crate::catalog::lookup;
use crate::classify::point_mod;
use crate::diffop::{solve_series_residues, ResidueTarget, ThetaOperator};
use crate::error::{Error, Result};
use crate::frobenius::{series_degree, FrobeniusResult, FrobeniusStatus, PrimeContext};
use crate::padic::check_odd_prime;
use crate::wedge::wedge_square;

/// Primes covered by the reference tables.
pub const TABLE_PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Json,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            other => Err(Error::Parse(format!("unknown format {other}"))),
        }
    }
}

/// One row of the table: every `z ∈ F_p^*` for one operator and prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableArtifact {
    pub operator: String,
    pub p: u64,
    pub cells: Vec<FrobeniusResult>,
}

impl TableArtifact {
    /// Printed cells `(a,b)`, `(a,b)'`, `(a,b)*` or `-`.
    pub fn printed(&self) -> Vec<String> {
        self.cells.iter().map(FrobeniusResult::cell).collect()
    }

    /// `NAME p: cell cell ...`, the format of the embedded reference tables.
    pub fn fixture_line(&self) -> String {
        format!("{} {}: {}", self.operator, self.p, self.printed().join(" "))
    }

    /// Cells that differ from the reference table, as `(z, expected, computed)`.
    pub fn mismatches(&self) -> Option<Vec<(u64, String, String)>> {
        let expected = reference_row(&self.operator, self.p)?;
        Some(
            self.cells
                .iter()
                .zip(expected)
                .filter(|(c, e)| &c.cell() != *e)
                .map(|(c, e)| (c.z0, e.clone(), c.cell()))
                .collect(),
        )
    }
}

fn parse_reference_tables(text: &str) -> BTreeMap<(String, u64), Vec<String>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (head, cells) = l.split_once(':').expect("row header");
            let (name, p) = head.split_once(' ').expect("operator and prime");
            (
                (name.to_string(), p.trim().parse().expect("prime")),
                cells.split_whitespace().map(str::to_string).collect(),
            )
        })
        .collect()
}

/// The embedded reference tables, keyed by operator and prime.
pub fn reference_tables() -> &'static BTreeMap<(String, u64), Vec<String>> {
    static TABLES: OnceLock<BTreeMap<(String, u64), Vec<String>>> = OnceLock::new();
    TABLES.get_or_init(|| parse_reference_tables(include_str!("../data/reference_tables.txt")))
}

pub fn reference_row(operator: &str, p: u64) -> Option<&'static Vec<String>> {
    reference_tables().get(&(operator.to_string(), p))
}

/// `(a, b)` and marker of a printed cell; `None` for `-`.
pub fn parse_cell(cell: &str) -> Option<(i64, i64, &str)> {
    let body = cell.strip_prefix('(')?;
    let (pair, marker) = body.split_once(')')?;
    let (a, b) = pair.split_once(',')?;
    Some((a.parse().ok()?, b.parse().ok()?, marker))
}

/// Series levels per prime: enough for every point of `F_p^*`.
pub fn levels(op: &ThetaOperator, primes: &[u64]) -> Vec<(u64, u32)> {
    primes.iter().map(|&p| (p, PrimeContext::level_for(op, p))).collect()
}

/// `f_0` and `F_0` residues for every prime, through the cache if given.
pub fn prime_contexts(op: &ThetaOperator, primes: &[u64], cache: Option<&SeriesCache>) -> Result<Vec<PrimeContext>> {
    for &p in primes {
        check_odd_prime(p)?;
    }
    let q = wedge_square(op)?;
    let levels = levels(op, primes);
    let targets: Vec<ResidueTarget> = levels
        .iter()
        .map(|&(prime, cap)| ResidueTarget {
            prime,
            cap,
            degree: series_degree(prime, cap),
        })
        .collect();
    let solve = |o: &ThetaOperator| match cache {
        Some(c) => c.series_many(o, &targets),
        None => solve_series_residues(o, &targets),
    };
    let (f, g) = rayon::join(|| solve(op), || solve(&q));
    let (f, g) = (f?, g?);
    Ok(levels
        .iter()
        .zip(f.into_iter().zip(g))
        .map(|(&(p, s), (f0, big_f0))| PrimeContext::from_series(op, p, s, f0, big_f0))
        .collect())
}

/// Computes every cell for every prime. `jobs` sets the worker count
/// (default: all cores); the output does not depend on it.
pub fn compute_tables(
    op: &ThetaOperator,
    primes: &[u64],
    jobs: Option<usize>,
    cache: Option<&SeriesCache>,
) -> Result<Vec<TableArtifact>> {
    let run = || -> Result<Vec<TableArtifact>> {
        let contexts = prime_contexts(op, primes, cache)?;
        contexts
            .iter()
            .map(|ctx| {
                let cells = (1..ctx.p)
                    .into_par_iter()
                    .map(|z| ctx.point(z))
                    .collect::<Result<Vec<_>>>()?;
                Ok(TableArtifact {
                    operator: op.name().to_string(),
                    p: ctx.p,
                    cells,
                })
            })
            .collect()
    };
    match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Unknown(e.to_string()))?
            .install(run),
        None => run(),
    }
}

/// Label of the annotated form at the cell's point, for singular cells of
/// catalog operators.
pub fn form_label(cell: &FrobeniusResult) -> Option<&'static str> {
    if !matches!(cell.status, FrobeniusStatus::Singular { .. }) {
        return None;
    }
    let entry = lookup(&cell.operator).ok()?;
    entry
        .modular
        .iter()
        .find(|m| point_mod(&m.point, cell.p) == Some(cell.z0 % cell.p))
        .and_then(|m| m.form)
}

pub const CSV_HEADER: &str = "operator,p,z,status,a,b,alpha,beta,chi,ap,form";

/// One CSV line in the column order of [`CSV_HEADER`].
pub fn csv_line(c: &FrobeniusResult) -> String {
    let opt = |x: Option<i64>| x.map(|v| v.to_string()).unwrap_or_default();
    let (alpha, beta, chi, ap) = match c.status {
        FrobeniusStatus::Reducible { alpha, beta } => (Some(alpha), Some(beta), None, None),
        FrobeniusStatus::Singular { chi, ap } => (None, None, Some(chi), Some(ap)),
        _ => (None, None, None, None),
    };
    let operator = if c.operator.contains([',', '"']) {
        format!("\"{}\"", c.operator.replace('"', "\"\""))
    } else {
        c.operator.clone()
    };
    format!(
        "{operator},{},{},{},{},{},{},{},{},{},{}",
        c.p,
        c.z0,
        c.status.label(),
        opt(c.a),
        opt(c.b),
        opt(alpha),
        opt(beta),
        opt(chi),
        opt(ap),
        form_label(c).unwrap_or_default()
    )
}

pub fn render_csv(tables: &[TableArtifact]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for c in tables.iter().flat_map(|t| &t.cells) {
        out.push_str(&csv_line(c));
        out.push('\n');
    }
    out
}

pub fn render_json(tables: &[TableArtifact]) -> String {
    serde_json::to_string_pretty(tables).expect("tables serialize") + "\n"
}

/// One Markdown table per operator: a row per prime, a column per `z`.
pub fn render_markdown(tables: &[TableArtifact]) -> String {
    let mut out = String::new();
    let mut by_op: Vec<(&str, Vec<&TableArtifact>)> = Vec::new();
    for t in tables {
        match by_op.iter_mut().find(|(n, _)| *n == t.operator) {
            Some((_, v)) => v.push(t),
            None => by_op.push((&t.operator, vec![t])),
        }
    }
    for (name, rows) in by_op {
        let width = rows.iter().map(|t| t.cells.len()).max().unwrap_or(0);
        let _ = writeln!(out, "### {name}\n");
        let _ = write!(out, "| p |");
        for z in 1..=width {
            let _ = write!(out, " {z} |");
        }
        let _ = write!(out, "\n|---|");
        out.push_str(&"---|".repeat(width));
        out.push('\n');
        for t in rows {
            let _ = write!(out, "| {} |", t.p);
            let printed = t.printed();
            for z in 0..width {
                let _ = write!(out, " {} |", printed.get(z).map(String::as_str).unwrap_or(""));
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Reads the cells back from [`render_markdown`] output, keyed like [`reference_tables`].
pub fn parse_markdown(text: &str) -> BTreeMap<(String, u64), Vec<String>> {
    let mut out = BTreeMap::new();
    let mut current = String::new();
    for line in text.lines() {
        if let Some(name) = line.strip_prefix("### ") {
            current = name.trim().to_string();
            continue;
        }
        let Some(body) = line.strip_prefix('|') else { continue };
        let fields: Vec<&str> = body.split('|').map(str::trim).collect();
        let Ok(p) = fields[0].parse::<u64>() else { continue };
        let cells = fields[1..]
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| c.to_string())
            .collect();
        out.insert((current.clone(), p), cells);
    }
    out
}

pub fn render(tables: &[TableArtifact], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => render_csv(tables),
        TableFormat::Json => render_json(tables),
        TableFormat::Markdown => render_markdown(tables),
    }
}

/// Parses `3..17`, `3..=17`, `5` or `3,5,7` into the odd primes it covers.
pub fn parse_primes(arg: &str) -> Result<Vec<u64>> {
    let bad = || Error::Parse(format!("bad prime range {arg}"));
    let is_odd_prime = |n: u64| n > 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
    let candidates: Vec<u64> = if let Some((lo, hi)) = arg.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        (lo..=hi).filter(|&n| is_odd_prime(n)).collect()
    } else {
        let v = arg
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&n) = v.iter().find(|&&n| !is_odd_prime(n)) {
            return Err(Error::InvalidPrime(n));
        }
        v
    };
    if candidates.is_empty() {
        return Err(bad());
    }
    Ok(candidates)
}
