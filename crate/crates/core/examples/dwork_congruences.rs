//! Dwork congruences for the second-order sequences, and a corrupted control.

use frobcy::catalog::SequenceRule;
use frobcy::congruence::check_dwork_congruence;

fn main() {
    let (n_max, s_max) = (2000usize, 3u32);
    for rule in SequenceRule::ALL {
        let mut line = format!("{:>2}", rule.name());
        for p in [3u64, 5, 7, 11, 13] {
            let len = n_max + (p as usize - 1) * (p as usize).pow(s_max);
            let c = rule.terms(len);
            let r = check_dwork_congruence(&c, p, n_max, s_max);
            line += &format!("  p={p}: {}", if r.pass { "ok" } else { "FAIL" });
        }
        println!("{line}");
    }
    let mut bad = SequenceRule::A.terms(2000);
    bad[10] += 1;
    let r = check_dwork_congruence(&bad, 5, 1000, 3);
    println!(
        "A with c(10) + 1 at p = 5: pass = {}, first failure (n, m, s) = {:?}",
        r.pass, r.counterexample
    );
}
