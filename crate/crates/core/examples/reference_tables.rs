//! Recomputes the reference tables and reports cells that differ.
//!
//!     cargo run --release --example reference_tables -- A*a B*a C*c D*g
//!     cargo run --release --example reference_tables -- --all

use std::time::Instant;

use frobcy::cache::SeriesCache;
use frobcy::catalog::catalog;
use frobcy::table::{compute_tables, TABLE_PRIMES};

fn main() -> frobcy::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let names: Vec<String> = if args.iter().any(|a| a == "--all") {
        catalog().iter().map(|e| e.name.clone()).collect()
    } else if args.is_empty() {
        ["A*a", "B*a", "C*c", "D*g"].map(String::from).to_vec()
    } else {
        args
    };
    let cache = SeriesCache::from_env();
    let mut total = 0;
    for name in &names {
        let op = frobcy::catalog::operator_by_name(name)?;
        let start = Instant::now();
        let tables = compute_tables(&op, &TABLE_PRIMES, None, cache.as_ref())?;
        for t in &tables {
            println!("{}", t.fixture_line());
            for (z, expected, got) in t.mismatches().unwrap_or_default() {
                total += 1;
                println!("    z = {z}: printed {expected}, computed {got}");
            }
        }
        eprintln!("{name}: {:.1?}", start.elapsed());
    }
    println!("{total} cells differ from the printed tables");
    Ok(())
}
