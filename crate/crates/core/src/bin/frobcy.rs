use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use frobcy::cache::SeriesCache;
use frobcy::catalog::{catalog, lookup, operator_by_name, SequenceRule};
use frobcy::classify::match_all;
use frobcy::congruence::{check_dwork_congruence, default_n_max};
use frobcy::diffop::ThetaOperator;
use frobcy::frobenius::{frobenius_at, legendre_frobenius, legendre_precision};
use frobcy::table::{compute_tables, parse_primes, render, render_csv, TableFormat};
use frobcy::wedge::wedge_square;
use frobcy::{Error, Result};

#[derive(Parser)]
#[command(
    name = "frobcy",
    version,
    about = "Frobenius polynomials of one-parameter Calabi-Yau operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of (a, b) over all z in F_p^* for a range of primes.
    Table {
        #[arg(long)]
        operator: String,
        #[arg(long, default_value = "3..17")]
        primes: String,
        #[arg(long, default_value = "csv")]
        format: TableFormat,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// One cell as JSON.
    Frob {
        #[arg(long)]
        operator: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        point: u64,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// The exterior square operator as JSON.
    Wedge {
        #[arg(long)]
        operator: String,
    },
    /// Dwork congruences of a sequence (A..J, a..g, or a product X*y).
    Congruence {
        #[arg(long)]
        sequence: String,
        #[arg(long, default_value = "3..13")]
        primes: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 3)]
        s_max: u32,
    },
    /// Classified cells as CSV, with modular comparisons on stderr.
    Classify {
        #[arg(long)]
        operator: String,
        #[arg(long, default_value = "3..17")]
        primes: String,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Unit root and trace of Frobenius for y^2 = x(x-1)(x-s0).
    Legendre {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        point: u64,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Lists the catalog, or prints one operator as JSON.
    Catalog { name: Option<String> },
}

fn operator(source: &str) -> Result<ThetaOperator> {
    if std::path::Path::new(source).is_file() {
        return ThetaOperator::from_json(&std::fs::read_to_string(source)?);
    }
    operator_by_name(source)
}

fn cache(disabled: bool) -> Option<SeriesCache> {
    (!disabled).then(SeriesCache::from_env).flatten()
}

fn sequence(name: &str, n: usize) -> Result<Vec<num_bigint::BigInt>> {
    if let Ok(e) = lookup(name) {
        return Ok(e.sequence(n));
    }
    Ok(SequenceRule::from_name(name)?.terms(n))
}

fn run(cli: Cli) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Table {
            operator: source,
            primes,
            format,
            jobs,
            output,
            no_cache,
        } => {
            let op = operator(&source)?;
            let tables = compute_tables(&op, &parse_primes(&primes)?, jobs, cache(no_cache).as_ref())?;
            let text = render(&tables, format);
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => stdout.write_all(text.as_bytes())?,
            }
        }
        Command::Frob {
            operator: source,
            prime,
            point,
            precision,
        } => {
            let r = frobenius_at(&operator(&source)?, prime, point, precision)?;
            writeln!(stdout, "{}", serde_json::to_string_pretty(&r)?)?;
        }
        Command::Wedge { operator: source } => {
            writeln!(stdout, "{}", wedge_square(&operator(&source)?)?.to_json())?;
        }
        Command::Congruence {
            sequence: name,
            primes,
            n_max,
            s_max,
        } => {
            let primes = parse_primes(&primes)?;
            let mut reports = Vec::new();
            for p in primes {
                let n = n_max.unwrap_or_else(|| default_n_max(p));
                let len = n + (p as usize - 1) * (p as usize).pow(s_max);
                let c = sequence(&name, len)?;
                reports.push(check_dwork_congruence(&c, p, n, s_max));
            }
            writeln!(stdout, "{}", serde_json::to_string_pretty(&reports)?)?;
            if reports.iter().any(|r| !r.pass) {
                return Err(Error::Unknown(format!("{name} fails the congruences")));
            }
        }
        Command::Classify {
            operator: name,
            primes,
            jobs,
            no_cache,
        } => {
            let op = operator(&name)?;
            let tables = compute_tables(&op, &parse_primes(&primes)?, jobs, cache(no_cache).as_ref())?;
            stdout.write_all(render_csv(&tables).as_bytes())?;
            if let Ok(entry) = lookup(op.name()) {
                let cells: Vec<_> = tables.into_iter().flat_map(|t| t.cells).collect();
                for (point, m) in match_all(entry, &cells, None) {
                    match m {
                        Ok(m) => eprintln!("{}", serde_json::to_string(&m)?),
                        Err(e) => eprintln!("{} at {point}: {e}", entry.name),
                    }
                }
            }
        }
        Command::Legendre {
            prime,
            point,
            precision,
        } => {
            let r = legendre_frobenius(point, prime, precision.unwrap_or_else(|| legendre_precision(prime)))?;
            let out = json!({
                "pi": r.pi.certified().to_string(),
                "ap": r.ap,
                "zeta_numerator": r.zeta_numerator(),
            });
            writeln!(stdout, "{}", serde_json::to_string_pretty(&out)?)?;
        }
        Command::Catalog { name: Some(name) } => {
            writeln!(stdout, "{}", operator(&name)?.to_json())?;
        }
        Command::Catalog { name: None } => {
            for e in catalog() {
                let points: Vec<String> = e
                    .modular
                    .iter()
                    .map(|m| format!("{} {}", m.point, m.form.unwrap_or("-")))
                    .collect();
                writeln!(stdout, "{}\tAESZ {}\t{}", e.name, e.aesz, points.join(", "))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("frobcy: {e}");
            ExitCode::FAILURE
        }
    }
}
