//! Unit roots for the Legendre family against point counts.

use frobcy::frobenius::{legendre_frobenius, legendre_precision};

fn main() {
    for p in [5u64, 7, 11, 13] {
        let s = legendre_precision(p);
        println!("p = {p}, working mod {p}^{s}");
        for s0 in 2..p {
            let count = (0..p)
                .map(|x| {
                    let rhs = x * ((x + p - 1) % p) % p * ((x + p - s0) % p) % p;
                    (0..p).filter(|y| y * y % p == rhs).count() as i64
                })
                .sum::<i64>();
            match legendre_frobenius(s0, p, s) {
                Ok(r) => println!(
                    "  s0 = {s0:>2}: pi = {:>5}  a_p = {:>3}  p - #affine = {:>3}",
                    r.pi.certified(),
                    r.ap,
                    p as i64 - count
                ),
                Err(e) => println!("  s0 = {s0:>2}: {e}"),
            }
        }
    }
}
