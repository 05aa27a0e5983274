//! The cell `z = 2` of A*a at `p = 7`, step by step, modulo `7^4`.

use num_traits::Zero;

use frobcy::catalog::lookup;
use frobcy::classify::classify_point;
use frobcy::congruence::{dwork_ratio, dwork_ratio_parts};
use frobcy::diffop::{solve_series, SolveMode};
use frobcy::frobenius::{assemble_frobenius, frobenius_polynomial, weil_verify};
use frobcy::padic::teichmueller;
use frobcy::wedge::wedge_square;

fn main() -> frobcy::Result<()> {
    let (p, z, s) = (7u64, 2i64, 4u32);
    let n = 7usize.pow(s);
    let op = &lookup("A*a")?.operator;
    let q = wedge_square(op)?;
    println!("P = {}", op.to_json());
    println!("Q = {}", q.to_json());

    let f0 = solve_series(op, n, SolveMode::Modular { prime: p, cap: s })?;
    let big_f0 = solve_series(&q, n, SolveMode::Modular { prime: p, cap: s })?;
    let exact = solve_series(op, 5, SolveMode::Exact)?;
    let exact_big = solve_series(&q, 5, SolveMode::Exact)?;
    println!("f0 = {:?} + ...", exact.coeffs);
    println!("F0 = {:?} + ...", exact_big.coeffs);

    let alpha = teichmueller(z, p, s)?;
    println!("Teichmüller lift of {z}: {alpha}");
    let (num, den) = dwork_ratio_parts(&f0, &alpha, s)?;
    let r1 = dwork_ratio(&f0, &alpha, s)?;
    println!("f0: {num} / {den} = {}", r1.residue());
    let (num, den) = dwork_ratio_parts(&big_f0, &alpha, s)?;
    let rhat = dwork_ratio(&big_f0, &alpha, s)?;
    println!("F0: {num} / {den} = {}", rhat.residue());

    let (a, b) = assemble_frobenius(&r1, &rhat, p, s)?;
    let c = frobenius_polynomial(a, b, p);
    println!("(a, b) = ({a}, {b})");
    let terms: Vec<String> = (0..5)
        .rev()
        .filter(|&k| !c[k].is_zero())
        .map(|k| match k {
            0 => format!("{:+}", c[k]),
            1 => format!("{:+}T", c[k]),
            _ => format!("{:+}T^{k}", c[k]),
        })
        .collect();
    println!("P(T) = {}", terms.join(" "));
    println!("roots on |T| = 7^(-3/2): {}", weil_verify(a, b, p));
    println!("status: {:?}", classify_point(a, b, p, false));
    Ok(())
}
