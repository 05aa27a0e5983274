//! The 24 Hadamard products: sequences, operators and the quintic's wedge series.

use frobcy::catalog::{catalog, quintic_wedge_coefficients};
use frobcy::diffop::{check_cy4, solve_series, SolveMode};

fn main() -> frobcy::Result<()> {
    for e in catalog() {
        let n = 100;
        let closed = e.sequence(n);
        let rec = solve_series(&e.operator, n, SolveMode::Exact)?;
        println!(
            "{:<4} AESZ {:>3}  {} * {}  CY(4): {}  Hadamard = recurrence: {}  c = {:?}",
            e.name,
            e.aesz,
            e.factors.0.name(),
            e.factors.1.name(),
            check_cy4(&e.operator.to_monic()?),
            closed == rec.coeffs,
            &closed[..4]
        );
    }
    let a = quintic_wedge_coefficients(6)?;
    println!("quintic wedge series: {a:?}");
    Ok(())
}
