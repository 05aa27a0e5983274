//! Monic form of a catalog operator and its Calabi-Yau conditions: order four
//! for the operator, order five for its exterior square. A perturbed operator
//! serves as a control.

use frobcy::catalog::operator_by_name;
use frobcy::diffop::{check_cy4, check_cy5, ThetaOperator};
use frobcy::wedge::wedge_square;

fn main() -> frobcy::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "A*a".into());
    let op = operator_by_name(&name)?;
    println!(
        "{name}: order {}, degree {} in z, MUM {}",
        op.order(),
        op.z_degree(),
        op.check_mum()
    );
    println!("leading symbol {}", op.leading_symbol());
    for p in [3, 5, 7, 11, 13, 17] {
        println!("  singular mod {p}: {:?}", op.singular_points_mod(p));
    }
    report(&op)?;

    let mut rows = op.rows().to_vec();
    rows[1][1] += 1;
    report(&ThetaOperator::new(format!("{name}+z*theta"), None, rows)?)
}

fn report(op: &ThetaOperator) -> frobcy::Result<()> {
    print!("{}: CY4 {}, ", op.name(), check_cy4(&op.to_monic()?));
    match wedge_square(op) {
        Ok(w) => println!(
            "exterior square of order {}, CY5 {}",
            w.order(),
            check_cy5(&w.to_monic()?)
        ),
        Err(e) => println!("no order-five exterior square ({e})"),
    }
    Ok(())
}
