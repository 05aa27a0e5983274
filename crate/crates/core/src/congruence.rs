//! Dwork congruences and the truncation formula for `y(x)/y(x^p)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffop::TruncatedSeries;
use crate::error::{Error, Result};
use crate::padic::{check_odd_prime, mod_inverse, prime_power, PadicNumber};

/// Outcome of an exhaustive sweep `C(n) ≡ C(n + m p^s) mod p^s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub prime: u64,
    pub n_max: usize,
    pub s_max: u32,
    pub pass: bool,
    /// Smallest failing `(n, m, s)`; `(0, 0, 0)` flags `c(0) != 1`.
    pub counterexample: Option<(usize, usize, u32)>,
    /// Indices whose `C(n)` is undefined because `c(⌊n/p⌋)` is not a unit.
    pub skipped: Vec<usize>,
}

/// Default `n_max` for sweeps: `min(2000, p^4)`.
pub fn default_n_max(p: u64) -> usize {
    (p.pow(4) as usize).min(2000)
}

/// Checks the Dwork congruences for `c` at `p` for all `n <= n_max`,
/// `1 <= s <= s_max`, `1 <= m < p` with `n + m p^s < c.len()`.
///
/// `c` may hold exact values or residues modulo `p^S` with `S >= s_max`.
pub fn check_dwork_congruence(c: &[BigInt], p: u64, n_max: usize, s_max: u32) -> CongruenceReport {
    check_odd_prime(p).expect("odd prime");
    let pp = p as usize;
    let modulus = BigInt::from(prime_power(p, s_max));
    let pb = BigInt::from(p);
    let unit = |x: &BigInt| !x.mod_floor(&pb).is_zero();
    let big_c: Vec<Option<BigInt>> = (0..c.len())
        .into_par_iter()
        .map(|n| {
            let d = &c[n / pp];
            unit(d).then(|| {
                let inv = mod_inverse(d, &modulus).expect("unit is invertible");
                (&c[n] * inv).mod_floor(&modulus)
            })
        })
        .collect();
    let mut report = CongruenceReport {
        prime: p,
        n_max,
        s_max,
        pass: true,
        counterexample: None,
        skipped: big_c
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_none())
            .map(|(n, _)| n)
            .collect(),
    };
    if c.is_empty() || !(&c[0] - BigInt::one()).mod_floor(&modulus).is_zero() {
        report.pass = false;
        report.counterexample = Some((0, 0, 0));
        return report;
    }
    let moduli: Vec<BigInt> = (0..=s_max).map(|s| BigInt::from(prime_power(p, s))).collect();
    let last = n_max.min(c.len().saturating_sub(1));
    let failure = (0..=last).into_par_iter().find_map_first(|n| {
        let cn = big_c[n].as_ref()?;
        for s in 1..=s_max {
            let step = pp.checked_pow(s)?;
            for m in 1..pp {
                let k = n + m * step;
                if k >= c.len() {
                    break;
                }
                if let Some(ck) = &big_c[k] {
                    if !(cn - ck).mod_floor(&moduli[s as usize]).is_zero() {
                        return Some((n, m, s));
                    }
                }
            }
        }
        None
    });
    if let Some(f) = failure {
        report.pass = false;
        report.counterexample = Some(f);
    }
    report
}

/// `y^{(p^s - 1)}(α) / y^{(p^{s-1} - 1)}(α^p) mod p^s`, where `y^{(N)}` is the
/// truncation of `y` at degree `N` and `α` a Teichmüller point.
///
/// Fails with `OutsideUnitDisk` when `y^{(p-1)}` vanishes at `α mod p`.
pub fn dwork_ratio(y: &TruncatedSeries, alpha: &PadicNumber, s: u32) -> Result<PadicNumber> {
    let p = alpha.prime();
    if s == 0 {
        return Err(Error::PrecisionExhausted("level must be at least 1".into()));
    }
    let top = prime_power(p, s);
    let len = top
        .to_string()
        .parse::<usize>()
        .map_err(|e| Error::Parse(e.to_string()))?;
    if y.coeffs.len() < len {
        return Err(Error::PrecisionExhausted(format!(
            "series has {} coefficients, level {s} needs {len}",
            y.coeffs.len()
        )));
    }
    if y.eval_truncated(p as usize - 1, &alpha.with_cap(1)).residue().is_zero() {
        return Err(Error::OutsideUnitDisk);
    }
    let a = alpha.with_cap(s);
    let num = y.eval_truncated(len - 1, &a);
    let den = y.eval_truncated(len / p as usize - 1, &a.pow(p));
    if den.residue().is_zero() || !den.is_unit() {
        return Err(Error::OutsideUnitDisk);
    }
    num.div(&den)
}

/// Numerator and denominator of [`dwork_ratio`] as residues mod `p^s`.
pub fn dwork_ratio_parts(y: &TruncatedSeries, alpha: &PadicNumber, s: u32) -> Result<(BigUint, BigUint)> {
    let p = alpha.prime() as usize;
    let len = p.pow(s);
    let a = alpha.with_cap(s);
    Ok((
        y.eval_truncated(len - 1, &a).residue().clone(),
        y.eval_truncated(len / p - 1, &a.pow(p as u64)).residue().clone(),
    ))
}

/// `C(n) = c(n) / c(⌊n/p⌋)` as a residue mod `p^s`, if the denominator is a unit.
pub fn dwork_quotient(c: &[BigInt], p: u64, n: usize, s: u32) -> Option<BigInt> {
    let m = BigInt::from(prime_power(p, s));
    let inv = mod_inverse(&c[n / p as usize], &m)?;
    Some((&c[n] * inv).mod_floor(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lookup, SequenceRule};
    use crate::diffop::{solve_series, SolveMode};
    use crate::padic::teichmueller;
    use crate::wedge::wedge_square;

    #[test]
    fn apery_and_hypergeometric_pass() {
        let b = SequenceRule::Zb.terms(2000 + 4 * 125);
        let r = check_dwork_congruence(&b, 5, 2000, 3);
        assert!(r.pass, "{r:?}");
        assert!(r.counterexample.is_none());
        let a = SequenceRule::A.terms(400);
        assert!(check_dwork_congruence(&a, 3, 200, 3).pass);
    }

    #[test]
    fn corrupted_sequence_fails_with_first_counterexample() {
        let p = 5u64;
        let mut c = SequenceRule::A.terms(300);
        for (n, x) in c.iter_mut().enumerate() {
            *x *= n + 1;
        }
        let r = check_dwork_congruence(&c, p, 200, 2);
        assert!(!r.pass);
        // brute force: smallest n, then s, then m
        let mut expected = None;
        'outer: for n in 0..=200usize {
            let Some(cn) = dwork_quotient(&c, p, n, 2) else {
                continue;
            };
            for s in 1..=2u32 {
                for m in 1..p as usize {
                    let k = n + m * (p as usize).pow(s);
                    if k >= c.len() {
                        break;
                    }
                    if let Some(ck) = dwork_quotient(&c, p, k, 2) {
                        let md = BigInt::from(p).pow(s);
                        if !(&cn - &ck).mod_floor(&md).is_zero() {
                            expected = Some((n, m, s));
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert_eq!(r.counterexample, expected);
        assert!(expected.is_some());
    }

    #[test]
    fn nonunit_denominators_are_reported() {
        // A at p = 3: c(1) = 4, c(2) = 36 ≡ 0 mod 3
        let a = SequenceRule::A.terms(40);
        let r = check_dwork_congruence(&a, 3, 30, 2);
        assert!(r.skipped.contains(&6));
        assert!(r.skipped.iter().all(|&n| (&a[n / 3] % 3u32).is_zero()));
        let mut bad = a.clone();
        bad[0] = BigInt::from(2);
        assert_eq!(check_dwork_congruence(&bad, 3, 30, 2).counterexample, Some((0, 0, 0)));
    }

    #[test]
    fn worked_example_ratios() {
        let op = &lookup("A*a").unwrap().operator;
        let f0 = solve_series(op, 7usize.pow(4), SolveMode::Exact).unwrap();
        let alpha = teichmueller(2, 7, 4).unwrap();
        let (num, den) = dwork_ratio_parts(&f0, &alpha, 4).unwrap();
        assert_eq!((num, den), (BigUint::from(1709u32), BigUint::from(1814u32)));
        assert_eq!(dwork_ratio(&f0, &alpha, 4).unwrap().residue(), &BigUint::from(582u32));
        let q = wedge_square(op).unwrap();
        let big_f0 = solve_series(&q, 7usize.pow(4), SolveMode::Modular { prime: 7, cap: 4 }).unwrap();
        let (num, den) = dwork_ratio_parts(&big_f0, &alpha, 4).unwrap();
        assert_eq!((num, den), (BigUint::from(51u32), BigUint::from(1387u32)));
        assert_eq!(
            dwork_ratio(&big_f0, &alpha, 4).unwrap().residue(),
            &BigUint::from(1101u32)
        );
    }

    #[test]
    fn constant_series_ratio_is_one() {
        let one = TruncatedSeries {
            modulus: crate::diffop::SeriesModulus::Exact,
            coeffs: std::iter::once(BigInt::one())
                .chain(std::iter::repeat_n(BigInt::zero(), 124))
                .collect(),
            guaranteed: 0,
            source: "1".into(),
        };
        for a in 1..5 {
            let alpha = teichmueller(a, 5, 3).unwrap();
            assert!(dwork_ratio(&one, &alpha, 3).unwrap().residue().is_one());
        }
    }

    #[test]
    fn ratio_consistent_across_levels() {
        let op = &lookup("A*a").unwrap().operator;
        let f0 = solve_series(op, 7usize.pow(5), SolveMode::Modular { prime: 7, cap: 5 }).unwrap();
        for a in 1..7 {
            let alpha = teichmueller(a, 7, 5).unwrap();
            let r4 = dwork_ratio(&f0, &alpha, 4);
            let r5 = dwork_ratio(&f0, &alpha, 5);
            match (r4, r5) {
                (Ok(x), Ok(y)) => assert_eq!(x.residue(), &(y.residue() % BigUint::from(7u32.pow(4)))),
                (Err(Error::OutsideUnitDisk), Err(Error::OutsideUnitDisk)) => {}
                other => panic!("inconsistent at {a}: {other:?}"),
            }
        }
    }

    #[test]
    fn outside_unit_disk() {
        // f0^{(4)}(z) for A*a at p=5 vanishes at z = 3
        let op = &lookup("A*a").unwrap().operator;
        let f0 = solve_series(op, 125, SolveMode::Exact).unwrap();
        let zeros: Vec<i64> = (1..5i64)
            .filter(|&z| {
                matches!(
                    dwork_ratio(&f0, &teichmueller(z, 5, 3).unwrap(), 3),
                    Err(Error::OutsideUnitDisk)
                )
            })
            .collect();
        let oracle: Vec<i64> = (1..5i64)
            .filter(|&z| {
                let v: i64 = (0..5)
                    .map(|k| (&f0.coeffs[k] % 5u32).try_into().unwrap_or(0i64) * z.pow(k as u32))
                    .sum();
                v % 5 == 0
            })
            .collect();
        assert_eq!(zeros, oracle);
    }
}
