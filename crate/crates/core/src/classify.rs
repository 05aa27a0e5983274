//! Splitting types of the Frobenius quartic, η-products, and the comparison
//! of conifold traces with weight-four newforms.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{is_square, CatalogEntry};
use crate::error::{Error, Result};
use crate::frobenius::{weil_verify, FrobeniusResult, FrobeniusStatus};
use crate::padic::mod_inverse;
use crate::polyrat::Rational;

/// Environment variable naming the directory of coefficient fixtures.
pub const FORMS_DIR_ENV: &str = "FROBCY_FORMS_DIR";

fn within_half_weil(x: i64, p: u64) -> bool {
    // |x| <= 2 p^{3/2}  <=>  x^2 <= 4 p^3
    (x as i128).pow(2) <= 4 * (p as i128).pow(3)
}

/// Singular split `(1 - χpT)(1 - χp^2T)(1 - a_pT + p^3T^2)`, if any `χ = ±1` fits.
pub fn singular_split(a: i64, b: i64, p: u64) -> Option<(i64, i64)> {
    let pi = p as i64;
    let t = pi + pi * pi;
    [1i64, -1].into_iter().find_map(|chi| {
        let ap = -a - chi * t;
        let ok = (b as i128) * (p as i128) == 2 * (pi as i128).pow(3) + (chi * t) as i128 * ap as i128;
        (ok && within_half_weil(ap, p)).then_some((chi, ap))
    })
}

/// Split `(1 + αT + p^3T^2)(1 + βT + p^3T^2)` with `α >= β` both within
/// `2p^{3/2}`.
pub fn reducible_split(a: i64, b: i64, p: u64) -> Option<(i64, i64)> {
    let p3 = BigInt::from(p).pow(3);
    let disc = BigInt::from(a).pow(2) - (BigInt::from(b) * p - &p3 * 2u32) * 4u32;
    if !is_square(&disc) {
        return None;
    }
    let r = disc.sqrt();
    let sum = BigInt::from(a) + &r;
    if sum.is_odd() {
        return None;
    }
    let alpha = (sum / 2u32).to_i64()?;
    let beta = a - alpha;
    (within_half_weil(alpha, p) && within_half_weil(beta, p)).then_some((alpha, beta))
}

/// Splitting type of `1 + aT + bpT^2 + ap^3T^3 + p^6T^4`. The singular split
/// is only reported at roots of the leading symbol; elsewhere it counts as a
/// reducible factorization.
pub fn classify_point(a: i64, b: i64, p: u64, at_singular: bool) -> FrobeniusStatus {
    let singular = singular_split(a, b, p);
    if at_singular {
        if let Some((chi, ap)) = singular {
            return FrobeniusStatus::Singular { chi, ap };
        }
    }
    if let Some((alpha, beta)) = reducible_split(a, b, p) {
        return FrobeniusStatus::Reducible { alpha, beta };
    }
    if let Some((chi, ap)) = singular {
        let t = (p + p * p) as i64;
        return FrobeniusStatus::Reducible {
            alpha: -chi * t,
            beta: -ap,
        };
    }
    if weil_verify(a, b, p) {
        FrobeniusStatus::Smooth
    } else {
        FrobeniusStatus::Inconsistent
    }
}

/// `∏ η(q^m)^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaProduct {
    pub factors: Vec<(u32, i32)>,
}

impl EtaProduct {
    /// Fails unless `Σ m e ≡ 0 mod 24`.
    pub fn new(factors: Vec<(u32, i32)>) -> Result<Self> {
        let e = EtaProduct { factors };
        if e.shift_times_24() % 24 != 0 {
            return Err(Error::Parse(format!(
                "η-product {e:?} has a fractional leading exponent"
            )));
        }
        Ok(e)
    }

    fn shift_times_24(&self) -> i64 {
        self.factors.iter().map(|&(m, e)| m as i64 * e as i64).sum()
    }

    /// `Σ e / 2`.
    pub fn weight(&self) -> Rational {
        Rational::new(
            self.factors.iter().map(|&(_, e)| e as i64).sum::<i64>().into(),
            2.into(),
        )
    }

    /// `Σ m e / 24`.
    pub fn leading_exponent(&self) -> i64 {
        self.shift_times_24() / 24
    }

    /// Level 8: `η(q^2)^4 η(q^4)^4`.
    pub fn level8() -> Self {
        EtaProduct {
            factors: vec![(2, 4), (4, 4)],
        }
    }

    /// Level 9: `η(q^3)^8`.
    pub fn level9() -> Self {
        EtaProduct { factors: vec![(3, 8)] }
    }
}

/// `∏_{n>=1} (1 - q^n)` to `q^n_max` by the pentagonal number theorem.
pub fn euler_product(n_max: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); n_max + 1];
    for k in 0i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let g1 = (k * (3 * k - 1) / 2) as usize;
        let g2 = (k * (3 * k + 1) / 2) as usize;
        if g1 > n_max {
            break;
        }
        c[g1] += sign;
        if k > 0 && g2 <= n_max {
            c[g2] += sign;
        }
    }
    c
}

fn series_mul(x: &[BigInt], y: &[BigInt], n_max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n_max + 1];
    for (i, a) in x.iter().enumerate().take(n_max + 1) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(n_max + 1 - i) {
            out[i + j] += a * b;
        }
    }
    out
}

/// Inverse of a series with constant term 1.
fn series_inv(x: &[BigInt], n_max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n_max + 1];
    out[0] = BigInt::from(1);
    for n in 1..=n_max {
        let s: BigInt = (1..=n.min(x.len() - 1)).map(|k| &x[k] * &out[n - k]).sum();
        out[n] = -s;
    }
    out
}

/// Fourier coefficients `a_0..a_N` of the η-product.
pub fn eta_expand(e: &EtaProduct, n_max: usize) -> Vec<BigInt> {
    let shift = e.leading_exponent();
    let mut acc = vec![BigInt::zero(); n_max + 1];
    acc[0] = BigInt::from(1);
    let euler = euler_product(n_max);
    for &(m, exp) in &e.factors {
        let m = m as usize;
        let mut scaled = vec![BigInt::zero(); n_max + 1];
        for (k, c) in euler.iter().enumerate() {
            if k * m > n_max {
                break;
            }
            scaled[k * m] = c.clone();
        }
        let base = if exp < 0 { series_inv(&scaled, n_max) } else { scaled };
        for _ in 0..exp.unsigned_abs() {
            acc = series_mul(&acc, &base, n_max);
        }
    }
    let mut out = vec![BigInt::zero(); n_max + 1];
    for (k, c) in acc.into_iter().enumerate() {
        let idx = k as i64 + shift;
        if (0..=n_max as i64).contains(&idx) {
            out[idx as usize] = c;
        }
    }
    out
}

/// Hecke eigenvalues for one newform, as stored in a fixture file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFixture {
    pub label: String,
    pub weight: u32,
    pub ap: BTreeMap<String, i64>,
}

impl FormFixture {
    pub fn coefficient(&self, p: u64) -> Option<i64> {
        self.ap.get(&p.to_string()).copied()
    }
}

/// Built-in η-product for a form label.
pub fn builtin_form(label: &str) -> Option<EtaProduct> {
    match label {
        "8/1" => Some(EtaProduct::level8()),
        "9/1" => Some(EtaProduct::level9()),
        _ => None,
    }
}

/// Searches `dir` for a fixture with the given label.
pub fn load_fixture(dir: &Path, label: &str) -> Result<FormFixture> {
    let entries = std::fs::read_dir(dir).map_err(|_| Error::NoFixture(label.to_string()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    for path in paths {
        let text = std::fs::read_to_string(&path)?;
        if let Ok(f) = serde_json::from_str::<FormFixture>(&text) {
            if f.label == label {
                return Ok(f);
            }
        }
    }
    Err(Error::NoFixture(label.to_string()))
}

/// `a_p` of a form: from the η-product if built in, else from a fixture in
/// `forms_dir` (default: the `FROBCY_FORMS_DIR` directory).
pub fn form_coefficients(label: &str, primes: &[u64], forms_dir: Option<&Path>) -> Result<BTreeMap<u64, i64>> {
    if let Some(e) = builtin_form(label) {
        let n = primes.iter().copied().max().unwrap_or(1) as usize;
        let c = eta_expand(&e, n);
        return Ok(primes
            .iter()
            .map(|&p| (p, c[p as usize].to_i64().expect("small coefficient")))
            .collect());
    }
    let dir = match forms_dir {
        Some(d) => d.to_path_buf(),
        None => std::env::var_os(FORMS_DIR_ENV)
            .map(PathBuf::from)
            .ok_or_else(|| Error::NoFixture(label.to_string()))?,
    };
    let f = load_fixture(&dir, label)?;
    Ok(primes
        .iter()
        .filter_map(|&p| f.coefficient(p).map(|v| (p, v)))
        .collect())
}

/// Residue of a rational point mod `p`, if its denominator is a unit.
pub fn point_mod(point: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let inv = mod_inverse(point.denom(), &pb)?;
    let z = (point.numer() * inv).mod_floor(&pb);
    z.to_u64()
}

/// One prime's comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApComparison {
    pub p: u64,
    pub z: u64,
    pub chi: i64,
    pub computed: i64,
    pub expected: Option<i64>,
    pub equal: bool,
}

/// Comparison of conifold traces at one rational point with one form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularMatch {
    pub operator: String,
    pub point: String,
    pub form: String,
    pub comparisons: Vec<ApComparison>,
    /// Every compared prime agrees and at least one prime was compared.
    pub all_match: bool,
}

/// Singular cells of `results` lying over `point`.
pub fn singular_cells_at(point: &Rational, results: &[FrobeniusResult]) -> Vec<(u64, u64, i64, i64)> {
    let mut cells: Vec<(u64, u64, i64, i64)> = results
        .iter()
        .filter_map(|r| match r.status {
            FrobeniusStatus::Singular { chi, ap } if point_mod(point, r.p) == Some(r.z0 % r.p) => {
                Some((r.p, r.z0, chi, ap))
            }
            _ => None,
        })
        .collect();
    cells.sort();
    cells.dedup();
    cells
}

/// Compares the singular traces of `entry` at `point` with the annotated form.
pub fn match_singular_ap(
    entry: &CatalogEntry,
    point: &Rational,
    results: &[FrobeniusResult],
    forms_dir: Option<&Path>,
) -> Result<ModularMatch> {
    let annotation = entry
        .modular
        .iter()
        .find(|m| &m.point == point)
        .ok_or_else(|| Error::NoFixture(format!("{} has no annotated point {point}", entry.name)))?;
    let label = annotation
        .form
        .ok_or_else(|| Error::NoFixture(format!("{} at {point}", entry.name)))?;
    let cells = singular_cells_at(point, results);
    let primes: Vec<u64> = cells.iter().map(|c| c.0).collect();
    let expected = form_coefficients(label, &primes, forms_dir)?;
    let comparisons: Vec<ApComparison> = cells
        .into_iter()
        .map(|(p, z, chi, ap)| {
            let e = expected.get(&p).copied();
            ApComparison {
                p,
                z,
                chi,
                computed: ap,
                expected: e,
                equal: e == Some(ap),
            }
        })
        .collect();
    let all_match = !comparisons.is_empty() && comparisons.iter().all(|c| c.equal);
    Ok(ModularMatch {
        operator: entry.name.clone(),
        point: point.to_string(),
        form: label.to_string(),
        comparisons,
        all_match,
    })
}

/// [`match_singular_ap`] for every annotated point of `entry`.
pub fn match_all(
    entry: &CatalogEntry,
    results: &[FrobeniusResult],
    forms_dir: Option<&Path>,
) -> Vec<(Rational, Result<ModularMatch>)> {
    entry
        .modular
        .iter()
        .map(|m| (m.point.clone(), match_singular_ap(entry, &m.point, results, forms_dir)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::polyrat::ratio;

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_point(6, -6, 5, false),
            FrobeniusStatus::Reducible { alpha: 20, beta: -14 }
        );
        assert_eq!(
            classify_point(32, 62, 5, true),
            FrobeniusStatus::Singular { chi: -1, ap: -2 }
        );
        assert_eq!(classify_point(-8, 2, 7, false), FrobeniusStatus::Smooth);
        // the same split away from a conifold point
        assert_eq!(
            classify_point(32, 62, 5, false),
            FrobeniusStatus::Reducible { alpha: 30, beta: 2 }
        );
        assert_eq!(
            classify_point(36, -62, 7, true),
            FrobeniusStatus::Singular { chi: -1, ap: 20 }
        );
        assert_eq!(
            classify_point(32, -94, 7, true),
            FrobeniusStatus::Singular { chi: -1, ap: 24 }
        );
        assert_eq!(classify_point(1000, 0, 7, false), FrobeniusStatus::Inconsistent);
    }

    #[test]
    fn discriminant_oracle() {
        // α, β are the roots of x^2 - a x + (bp - 2p^3)
        for (a, b, p) in [(6i64, -6i64, 5u64), (10, 50, 7), (56, 290, 11), (-8, 270, 13)] {
            let FrobeniusStatus::Reducible { alpha, beta } = classify_point(a, b, p, false) else {
                panic!("({a}, {b}) at {p} should split");
            };
            assert_eq!(alpha + beta, a);
            assert_eq!(alpha * beta, b * p as i64 - 2 * (p as i64).pow(3));
        }
        assert_eq!(36 - 4 * (-30 - 250), 1156);
    }

    /// Products of `(1 - q^n)` computed by direct multiplication.
    fn naive_eta(e: &EtaProduct, n_max: usize) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); n_max + 1];
        acc[0] = BigInt::from(1);
        for &(m, exp) in &e.factors {
            for _ in 0..exp {
                for n in 1..=n_max {
                    let step = n * m as usize;
                    if step > n_max {
                        break;
                    }
                    for k in (step..=n_max).rev() {
                        let t = acc[k - step].clone();
                        acc[k] -= t;
                    }
                }
            }
        }
        let shift = e.leading_exponent() as usize;
        let mut out = vec![BigInt::zero(); n_max + 1];
        out[shift..].clone_from_slice(&acc[..=n_max - shift]);
        out
    }

    #[test]
    fn eta_examples() {
        let to_i: fn(&BigInt) -> i64 = |x| x.to_i64().unwrap();
        let c8: Vec<i64> = eta_expand(&EtaProduct::level8(), 7).iter().map(to_i).collect();
        assert_eq!(c8, vec![0, 1, 0, -4, 0, -2, 0, 24]);
        let c9: Vec<i64> = eta_expand(&EtaProduct::level9(), 7).iter().map(to_i).collect();
        assert_eq!(c9, vec![0, 1, 0, 0, -8, 0, 0, 20]);
        let empty = eta_expand(&EtaProduct::new(vec![]).unwrap(), 5);
        assert_eq!(empty[0], BigInt::from(1));
        assert!(empty[1..].iter().all(Zero::is_zero));
        for e in [EtaProduct::level8(), EtaProduct::level9()] {
            assert_eq!(eta_expand(&e, 60), naive_eta(&e, 60));
            assert_eq!(e.weight(), Rational::from_integer(4.into()));
        }
        assert!(EtaProduct::new(vec![(1, 1)]).is_err());
    }

    #[test]
    fn eta_inverse_factor() {
        // η(q)^24 η(q)^-24 = 1
        let e = EtaProduct::new(vec![(1, 24), (1, -24)]).unwrap();
        let c = eta_expand(&e, 10);
        assert_eq!(c[0], BigInt::from(1));
        assert!(c[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn eta_multiplicative() {
        for e in [EtaProduct::level8(), EtaProduct::level9()] {
            let c = eta_expand(&e, 100);
            for m in 1..=100usize {
                for n in 1..=100 / m {
                    if m.gcd(&n) == 1 {
                        assert_eq!(c[m * n], &c[m] * &c[n], "{e:?} at {m}, {n}");
                    }
                }
            }
        }
    }

    fn singular(p: u64, z0: u64, a: i64, b: i64) -> FrobeniusResult {
        FrobeniusResult {
            operator: "X".into(),
            p,
            z0,
            status: classify_point(a, b, p, true),
            a: Some(a),
            b: Some(b),
            r1: None,
            rhat: None,
            precision: 4,
        }
    }

    #[test]
    fn modular_matching_from_printed_cells() {
        let aa = lookup("A*a").unwrap();
        let results = [singular(5, 4, 32, 62), singular(7, 3, 32, -94)];
        let m = match_singular_ap(aa, &ratio(-1, 16), &results, None).unwrap();
        assert!(m.all_match, "{m:?}");
        assert_eq!(m.form, "8/1");
        let ap: Vec<(u64, i64)> = m.comparisons.iter().map(|c| (c.p, c.computed)).collect();
        assert_eq!(ap, vec![(5, -2), (7, 24)]);

        let bd = lookup("B*d").unwrap();
        let m = match_singular_ap(bd, &ratio(1, 216), &[singular(7, 6, 36, -62)], None).unwrap();
        assert!(m.all_match);
        assert_eq!(m.comparisons[0].computed, 20);

        let dc = lookup("D*c").unwrap();
        assert!(matches!(
            match_singular_ap(dc, &ratio(1, 3888), &[], None),
            Err(Error::NoFixture(_))
        ));
    }

    #[test]
    fn fixture_forms() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("f.json"),
            r#"{"label": "64/5", "weight": 4, "ap": {"3": 0, "5": 22, "7": 0}}"#,
        )
        .unwrap();
        let c = form_coefficients("64/5", &[3, 5, 11], Some(dir.path())).unwrap();
        assert_eq!(c.get(&5), Some(&22));
        assert_eq!(c.get(&11), None);
        assert!(matches!(
            form_coefficients("128/1", &[3], Some(dir.path())),
            Err(Error::NoFixture(_))
        ));
    }

    #[test]
    fn points_mod_p() {
        assert_eq!(point_mod(&ratio(-1, 16), 5), Some(4));
        assert_eq!(point_mod(&ratio(-1, 16), 7), Some(3));
        assert_eq!(point_mod(&ratio(1, 216), 7), Some(6));
        assert_eq!(point_mod(&ratio(1, 216), 3), None);
    }
}
