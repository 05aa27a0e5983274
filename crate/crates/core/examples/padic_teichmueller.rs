//! Teichmüller lifts and Dwork's unit-root ratio for the Apéry-like
//! sequence A, computed in Z/p^s.

use frobcy::catalog::operator_by_name;
use frobcy::congruence::dwork_ratio;
use frobcy::diffop::{solve_series, SolveMode};
use frobcy::padic::teichmueller;

fn main() -> frobcy::Result<()> {
    let (p, s) = (7u64, 4u32);
    for a in 1..p as i64 {
        let t = teichmueller(a, p, s)?;
        println!(
            "omega({a}) = {:>4} mod {p}^{s}, omega^{} = {}",
            t.certified(),
            p - 1,
            t.pow(p - 1).certified()
        );
    }

    let op = operator_by_name("A*a")?;
    let y = solve_series(
        &op,
        (p as usize).pow(s) - 1,
        SolveMode::Modular { prime: p, cap: s + 1 },
    )?;
    println!("\nF_0 to degree {} mod {p}^{}", y.degree(), s + 1);
    for z in 1..p as i64 {
        let alpha = teichmueller(z, p, s + 1)?;
        match dwork_ratio(&y, &alpha, s) {
            Ok(r) => println!("  z = {z}: unit root {} (+O({p}^{}))", r.certified(), r.guaranteed()),
            Err(e) => println!("  z = {z}: {e}"),
        }
    }
    Ok(())
}
