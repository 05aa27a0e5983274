//! Exterior square of a fourth-order operator and its consistency checks.
//!
//!     cargo run --release --example wedge_operator -- B*a

use frobcy::catalog::operator_by_name;
use frobcy::diffop::{check_cy4, check_cy5, solve_series, SolveMode};
use frobcy::wedge::{f0_wedge_via_wronskian, verify_horizontal_u4, verify_horizontal_u5, wedge_square};

fn main() -> frobcy::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "A*a".into());
    let p = operator_by_name(&name)?;
    let q = wedge_square(&p)?;
    println!("P:");
    for (i, row) in p.rows().iter().enumerate() {
        println!("  z^{i}: {row:?}");
    }
    println!("Q:");
    for (i, row) in q.rows().iter().enumerate() {
        println!("  z^{i}: {row:?}");
    }
    println!("CY(4) condition on P: {}", check_cy4(&p.to_monic()?));
    println!("CY(5) conditions on Q: {}", check_cy5(&q.to_monic()?));
    let w = f0_wedge_via_wronskian(&p, 8)?;
    let f = solve_series(&q, 8, SolveMode::Exact)?;
    println!("F0 from the Wronskian:  {:?}", w.coeffs);
    println!("F0 from the recurrence: {:?}", f.coeffs);
    println!("horizontal section u4 to order 60: {}", verify_horizontal_u4(&p, 60)?);
    println!("horizontal section u5 to order 60: {}", verify_horizontal_u5(&q, 60)?);
    Ok(())
}
