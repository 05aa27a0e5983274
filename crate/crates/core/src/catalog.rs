//! Second-order operators, their coefficient sequences, and the 24
//! fourth-order Hadamard products with their modular annotations.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diffop::{OperatorFile, ThetaOperator};
use crate::error::{Error, Result};
use crate::polyrat::{ratio, RatPoly, Rational};

/// Named second-order sequence with its closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceRule {
    A,
    B,
    C,
    D,
    E,
    H,
    I,
    J,
    Za,
    Zb,
    Zc,
    Zd,
    Zf,
    Zg,
}

/// Constant printed for `j` in the `x^2` coefficient; the operator uses `432^2`.
pub const J_PRINTED_X2_CONSTANT: i64 = 18664;

impl SequenceRule {
    pub const ALL: [SequenceRule; 14] = [
        SequenceRule::A,
        SequenceRule::B,
        SequenceRule::C,
        SequenceRule::D,
        SequenceRule::E,
        SequenceRule::H,
        SequenceRule::I,
        SequenceRule::J,
        SequenceRule::Za,
        SequenceRule::Zb,
        SequenceRule::Zc,
        SequenceRule::Zd,
        SequenceRule::Zf,
        SequenceRule::Zg,
    ];

    pub fn name(self) -> &'static str {
        use SequenceRule::*;
        match self {
            A => "A",
            B => "B",
            C => "C",
            D => "D",
            E => "e",
            H => "h",
            I => "i",
            J => "j",
            Za => "a",
            Zb => "b",
            Zc => "c",
            Zd => "d",
            Zf => "f",
            Zg => "g",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.name() == name)
            .ok_or_else(|| Error::Unknown(name.to_string()))
    }

    /// Hypergeometric data `(λ, f1)` with `θ^2 - λ x f1(θ)` for A–D.
    fn hypergeometric(self) -> Option<(i64, [(i64, i64); 2])> {
        use SequenceRule::*;
        match self {
            A => Some((4, [(2, 1), (2, 1)])),
            B => Some((3, [(3, 1), (3, 2)])),
            C => Some((4, [(4, 1), (4, 3)])),
            D => Some((12, [(6, 1), (6, 5)])),
            _ => None,
        }
    }

    /// `(a, b, c)` with operator `θ^2 - x(aθ^2 + aθ + b) - c x^2 (θ+1)^2`.
    fn two_term(self) -> Option<(i64, i64, i64)> {
        use SequenceRule::*;
        match self {
            E => Some((32, 12, -256)),
            H => Some((54, 21, -729)),
            I => Some((128, 52, -4096)),
            J => Some((864, 372, -186624)),
            Za => Some((7, 2, 8)),
            Zb => Some((11, 3, 1)),
            Zc => Some((10, 3, -9)),
            Zd => Some((12, 4, -32)),
            Zf => Some((9, 3, -27)),
            Zg => Some((17, 6, -72)),
            _ => None,
        }
    }

    /// `(a, b, c)` of a Zagier operator a–g.
    pub fn zagier_parameters(self) -> Option<(i64, i64, i64)> {
        matches!(
            self,
            SequenceRule::Za
                | SequenceRule::Zb
                | SequenceRule::Zc
                | SequenceRule::Zd
                | SequenceRule::Zf
                | SequenceRule::Zg
        )
        .then(|| self.two_term())
        .flatten()
    }

    /// The second-order θ-operator whose holomorphic solution is the sequence.
    pub fn operator(self) -> ThetaOperator {
        let rows: Vec<Vec<i64>> = if let Some((lam, f)) = self.hypergeometric() {
            let p = RatPoly::from_ints([f[0].1, f[0].0]).mul(&RatPoly::from_ints([f[1].1, f[1].0]));
            let p1: Vec<i64> = p.coeffs().iter().map(|c| -lam * int(c)).collect();
            vec![vec![0, 0, 1], p1]
        } else {
            let (a, b, c) = self.two_term().expect("every rule has an operator");
            vec![vec![0, 0, 1], vec![-b, -a, -a], vec![-c, -2 * c, -c]]
        };
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        ThetaOperator::new(self.name(), None, rows).expect("nonzero operator")
    }

    /// `a_n` from the closed form.
    pub fn term(self, n: usize) -> BigInt {
        self.term_with(n, &Tables::new(self, n))
    }

    /// `a_0, ..., a_n`.
    pub fn terms(self, n: usize) -> Vec<BigInt> {
        let t = Tables::new(self, n);
        (0..=n).map(|k| self.term_with(k, &t)).collect()
    }

    fn term_with(self, n: usize, t: &Tables) -> BigInt {
        use SequenceRule::*;
        let f = |k: usize| &t.fact[k];
        let signed = |k: usize, v: BigInt| if k % 2 == 1 { -v } else { v };
        match self {
            A => t.central[n].pow(2),
            B => f(3 * n) / f(n).pow(3),
            C => f(4 * n) / (f(2 * n) * f(n).pow(2)),
            D => f(6 * n) / (f(3 * n) * f(2 * n) * f(n)),
            E => moebius_term(n, 2, 2, 1, 1, &t.fact),
            H => moebius_term(n, 1, 3, 2, 1, &t.fact),
            I => moebius_term(n, 1, 4, 3, 1, &t.fact),
            J => moebius_term(n, 2, 6, 5, 1, &t.fact),
            Za => binomial_row(n as u64).iter().map(|c| c.pow(3)).sum(),
            Zb => {
                // binom(n + k, n) updated along k
                let mut upper = BigInt::one();
                let mut acc = BigInt::zero();
                for (k, c) in binomial_row(n as u64).iter().enumerate() {
                    acc += c.pow(2) * &upper;
                    upper = upper * (n + k + 1) / (k + 1);
                }
                acc
            }
            Zc => binomial_row(n as u64)
                .iter()
                .enumerate()
                .map(|(k, c)| c.pow(2) * &t.central[k])
                .sum(),
            Zd => binomial_row(n as u64)
                .iter()
                .enumerate()
                .map(|(k, c)| c * &t.central[k] * &t.central[n - k])
                .sum(),
            Zf => {
                let row = binomial_row(n as u64);
                let mut pow3 = BigInt::from(3).pow((n % 3) as u32);
                let mut acc = BigInt::zero();
                for k in (0..=n / 3).rev() {
                    acc += signed(k, &pow3 * &row[3 * k] * f(3 * k) / f(k).pow(3));
                    pow3 *= 27;
                }
                acc
            }
            Zg => {
                let row = binomial_row(n as u64);
                let mut pow8 = BigInt::one();
                let mut acc = BigInt::zero();
                for i in (0..=n).rev() {
                    acc += signed(i, &pow8 * &row[i] * &t.franel[i]);
                    pow8 *= 8;
                }
                acc
            }
        }
    }
}

/// Factorials, central binomials and Franel numbers shared across terms.
struct Tables {
    fact: Vec<BigInt>,
    central: Vec<BigInt>,
    franel: Vec<BigInt>,
}

impl Tables {
    fn new(rule: SequenceRule, n: usize) -> Self {
        let mut fact = vec![BigInt::one()];
        for k in 1..=6 * n {
            let next = &fact[k - 1] * k;
            fact.push(next);
        }
        let central = (0..=n).map(|k| &fact[2 * k] / (&fact[k] * &fact[k])).collect();
        let franel = if rule == SequenceRule::Zg {
            (0..=n as u64)
                .map(|i| binomial_row(i).iter().map(|c| c.pow(3)).sum())
                .collect()
        } else {
            Vec::new()
        };
        Tables { fact, central, franel }
    }
}

fn int(c: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    c.to_integer().to_i64().expect("small coefficient")
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `binom(n, 0), ..., binom(n, n)`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    for k in 0..=n {
        row.push(c.clone());
        c = c * (n - k) / (k + 1);
    }
    row
}

/// `N^n Σ_k (-1)^k binom(-a/b, k) binom(-c/b, n-k)^2` with `N = r b^3`.
///
/// Consecutive summands differ by the factor
/// `ρ_k = b (a + k b) m^2 / ((k + 1) (c + (m - 1) b)^2)` with `m = n - k`, and
/// the first one is `r^n b^n v_n^2 / n!^2` with `v_n = Π_{i<n} (c + i b)`;
/// the sum is nested Horner-style with an unreduced fraction.
fn moebius_term(n: usize, r: u64, b: u64, a: u64, c: u64, fact: &[BigInt]) -> BigInt {
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for k in (0..n as u64).rev() {
        let m = n as u64 - k;
        let p = BigInt::from(b * (a + k * b)) * (m * m);
        let q = BigInt::from((k + 1) * (c + (m - 1) * b).pow(2));
        num = &den * &q + num * p;
        den *= q;
    }
    let vn = (0..n as u64).fold(BigInt::one(), |acc, i| acc * (c + i * b));
    let head = BigInt::from(r).pow(n as u32) * BigInt::from(b).pow(n as u32) * &vn * &vn;
    let (q, rem) = (head * num).div_rem(&(den * &fact[n] * &fact[n]));
    debug_assert!(rem.is_zero());
    q
}

/// Termwise product of the first `n + 1` terms.
pub fn hadamard_product(f: &[BigInt], g: &[BigInt], n: usize) -> Result<Vec<BigInt>> {
    if f.len() <= n || g.len() <= n {
        return Err(Error::LengthMismatch(f.len(), g.len()));
    }
    Ok(f[..=n].iter().zip(&g[..=n]).map(|(a, b)| a * b).collect())
}

/// `A_0..A_n` with
/// `A_n = Σ_k (5k)!/k!^5 (5(n-k))!/(n-k)!^5 (1 + k(-5H_k + 5H_{n-k} + 5H_{5k} - 5H_{5(n-k)}))`.
pub fn quintic_wedge_coefficients(n: usize) -> Result<Vec<BigInt>> {
    let harmonic: Vec<Rational> = {
        let mut h = vec![Rational::zero()];
        for j in 1..=5 * n as i64 {
            let next = &h[j as usize - 1] + ratio(1, j);
            h.push(next);
        }
        h
    };
    let quint = |k: u64| factorial(5 * k) / factorial(k).pow(5);
    let q: Vec<BigInt> = (0..=n as u64).map(quint).collect();
    let five = Rational::from_integer(BigInt::from(5));
    (0..=n)
        .map(|m| {
            let mut acc = Rational::zero();
            for k in 0..=m {
                let l = m - k;
                let bracket = Rational::one()
                    + Rational::from_integer(BigInt::from(k))
                        * &five
                        * (-&harmonic[k] + &harmonic[l] + &harmonic[5 * k] - &harmonic[5 * l]);
                acc += Rational::from_integer(&q[k] * &q[l]) * bracket;
            }
            if acc.is_integer() {
                Ok(acc.to_integer())
            } else {
                Err(Error::NonIntegral(m))
            }
        })
        .collect()
}

/// `θ^4 - 5z(5θ+1)(5θ+2)(5θ+3)(5θ+4)`.
pub fn quintic_operator() -> ThetaOperator {
    let p = [(5, 1), (5, 2), (5, 3), (5, 4)]
        .iter()
        .fold(RatPoly::from_ints([-5]), |acc, &(a, b)| {
            acc.mul(&RatPoly::from_ints([b, a]))
        });
    ThetaOperator::from_theta_polys("quintic", None, &[RatPoly::from_ints([0, 0, 0, 0, 1]), p])
        .expect("nonzero operator")
}

/// One critical point with its weight-four form, as tabulated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularAnnotation {
    pub point: Rational,
    /// Point as it appears in the table, where it differs from `point`.
    pub printed_point: Option<&'static str>,
    /// Hecke eigenform `level/index`.
    pub form: Option<&'static str>,
    pub twist_of: Option<&'static str>,
}

/// One of the 24 fourth-order Hadamard products.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub aesz: u32,
    pub operator: ThetaOperator,
    pub factors: (SequenceRule, SequenceRule),
    pub singular_locus: RatPoly,
    pub modular: Vec<ModularAnnotation>,
}

impl CatalogEntry {
    /// First `n + 1` coefficients of the holomorphic solution from the closed forms.
    pub fn sequence(&self, n: usize) -> Vec<BigInt> {
        hadamard_product(&self.factors.0.terms(n), &self.factors.1.terms(n), n).expect("equal lengths")
    }
}

const OPERATORS_JSON: &str = include_str!("../data/operators.json");

type Row = (&'static str, &'static str, Option<&'static str>, Option<&'static str>);

/// Modular table: per case two (point, form, twist) triples.
const MODULAR_TABLE: [(&str, [Row; 2]); 16] = [
    (
        "A*a",
        [
            ("-1/16", "-1/16", Some("8/1"), None),
            ("1/128", "1/128", Some("64/5"), Some("8/1")),
        ],
    ),
    (
        "B*a",
        [
            ("-1/27", "-1/27", Some("27/2"), Some("27/1")),
            ("1/216", "1/126", Some("54/2"), None),
        ],
    ),
    (
        "C*a",
        [
            ("-1/64", "-1/64", Some("32/3"), Some("32/2")),
            ("1/512", "1/512", Some("256/3"), None),
        ],
    ),
    (
        "D*a",
        [
            ("-1/432", "-1/432", Some("216/4"), Some("216/2")),
            ("1/3456", "1/3456", Some("1728/16"), Some("216/1")),
        ],
    ),
    (
        "A*c",
        [
            ("1/144", "1/144", Some("48/1"), Some("24/1")),
            ("1/16", "1/16", Some("16/1"), Some("8/1")),
        ],
    ),
    (
        "B*c",
        [
            ("1/243", "1/243", Some("243/1"), None),
            ("1/27", "1/27", Some("27/1"), None),
        ],
    ),
    (
        "C*c",
        [
            ("1/576", "1/576", Some("576/3"), Some("94/4")),
            ("1/64", "1/64", Some("64/3"), Some("32/2")),
        ],
    ),
    (
        "D*c",
        [
            ("1/3888", "1/3888", None, Some("1944/5")),
            ("1/432", "1/432", Some("432/9"), Some("216/2")),
        ],
    ),
    (
        "A*d",
        [
            ("1/128", "1/128", Some("64/4"), Some("32/1")),
            ("1/64", "1/64", Some("32/2"), None),
        ],
    ),
    (
        "B*d",
        [
            ("1/216", "1/216", Some("9/1"), None),
            ("1/108", "1/108", Some("108/4"), Some("108/2")),
        ],
    ),
    (
        "C*d",
        [
            ("1/512", "1/512", Some("256/1"), None),
            ("1/256", "1/256", Some("128/4"), Some("128/1")),
        ],
    ),
    (
        "D*d",
        [
            ("1/3456", "1/3456", Some("576/8"), Some("288/1")),
            ("1/1728", "1/1728", Some("864/3"), Some("864/1")),
        ],
    ),
    (
        "A*g",
        [
            ("1/144", "1/144", Some("24/1"), None),
            ("1/128", "1/128", Some("64/1"), Some("8/1")),
        ],
    ),
    (
        "B*g",
        [
            ("1/243", "1/243", Some("243/2"), Some("243/1")),
            ("1/216", "1/216", Some("54/4"), Some("54/2")),
        ],
    ),
    (
        "C*g",
        [
            ("1/576", "1/576", Some("288/10"), Some("96/4")),
            ("1/512", "1/512", Some("256/4"), Some("256/3")),
        ],
    ),
    (
        "D*g",
        [
            ("1/3888", "1/3888", Some("1944/6"), Some("1944/5")),
            ("1/3456", "1/3456", Some("1728/15"), None),
        ],
    ),
];

fn parse_rational(s: &str) -> Rational {
    let (n, d) = s.split_once('/').expect("fraction");
    ratio(n.parse().expect("integer"), d.parse().expect("integer"))
}

fn build_catalog() -> Vec<CatalogEntry> {
    let files: Vec<OperatorFile> = serde_json::from_str(OPERATORS_JSON).expect("embedded operators parse");
    files
        .iter()
        .map(|f| {
            let operator = ThetaOperator::from_file(f).expect("embedded operator is valid");
            let (x, y) = f.name.split_once('*').expect("product name");
            let factors = (
                SequenceRule::from_name(x).expect("known factor"),
                SequenceRule::from_name(y).expect("known factor"),
            );
            let modular = MODULAR_TABLE
                .iter()
                .find(|(n, _)| *n == f.name)
                .map(|(_, rows)| {
                    rows.iter()
                        .map(|&(point, printed, form, twist_of)| ModularAnnotation {
                            point: parse_rational(point),
                            printed_point: (point != printed).then_some(printed),
                            form,
                            twist_of,
                        })
                        .collect()
                })
                .unwrap_or_default();
            CatalogEntry {
                name: f.name.clone(),
                aesz: f.aesz.expect("aesz number"),
                singular_locus: operator.leading_symbol(),
                operator,
                factors,
                modular,
            }
        })
        .collect()
}

/// All 24 products in table order.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Unknown(name.to_string()))
}

/// Any operator by name: a product `X*y`, a second-order factor, or `quintic`.
pub fn operator_by_name(name: &str) -> Result<ThetaOperator> {
    if name == "quintic" {
        return Ok(quintic_operator());
    }
    if let Ok(e) = lookup(name) {
        return Ok(e.operator.clone());
    }
    SequenceRule::from_name(name).map(SequenceRule::operator)
}

/// True iff `n` is a perfect square (`n >= 0`).
pub fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::{solve_series, SolveMode};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// `n^2 u_n = P_1(n-1) u_{n-1} + P_2(n-2) u_{n-2}` read off the operator rows.
    fn satisfies_recurrence(op: &ThetaOperator, u: &[BigInt]) -> bool {
        op.apply_to_series(u).iter().all(Zero::is_zero)
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(SequenceRule::A.term(2), BigInt::from(36));
        assert_eq!(SequenceRule::Za.term(2), BigInt::from(10));
        // Σ binom(2,k)^2 binom(2+k,2) = 1 + 12 + 6
        assert_eq!(SequenceRule::Zb.term(2), BigInt::from(19));
        assert_eq!(SequenceRule::Zb.terms(6), ints(&[1, 3, 19, 147, 1251, 11253, 104959]));
        assert_eq!(SequenceRule::E.terms(4), ints(&[1, 12, 164, 2352, 34596]));
        assert_eq!(SequenceRule::J.terms(2), ints(&[1, 372, 148644]));
    }

    #[test]
    fn sequences_satisfy_their_operators() {
        for rule in SequenceRule::ALL {
            let u = rule.terms(1000);
            assert!(satisfies_recurrence(&rule.operator(), &u), "{}", rule.name());
            assert_eq!(
                solve_series(&rule.operator(), 40, SolveMode::Exact).unwrap().coeffs,
                u[..=40]
            );
        }
    }

    #[test]
    fn printed_j_constant_fails() {
        let op = ThetaOperator::from_i64_rows(
            "j printed",
            None,
            &[
                &[0, 0, 1],
                &[-372, -864, -864],
                &[J_PRINTED_X2_CONSTANT, 2 * J_PRINTED_X2_CONSTANT, J_PRINTED_X2_CONSTANT],
            ],
        )
        .unwrap();
        assert!(!satisfies_recurrence(&op, &SequenceRule::J.terms(10)));
        assert_eq!(432 * 432, 186624);
    }

    #[test]
    fn hadamard_examples() {
        let a = SequenceRule::A.terms(5);
        let z = SequenceRule::Za.terms(5);
        assert_eq!(
            hadamard_product(&a, &z, 5).unwrap(),
            ints(&[1, 8, 360, 22400, 1695400, 143011008])
        );
        assert_eq!(hadamard_product(&a, &z, 2).unwrap()[2], BigInt::from(360));
        let ones = vec![BigInt::one(); 6];
        assert_eq!(hadamard_product(&a, &ones, 5).unwrap(), a);
        assert_eq!(
            hadamard_product(&a, &z[..3], 5).unwrap_err(),
            Error::LengthMismatch(6, 3)
        );
    }

    #[test]
    fn catalog_operators_match_products() {
        assert_eq!(catalog().len(), 24);
        for e in catalog() {
            let f = solve_series(&e.operator, 500, SolveMode::Exact).unwrap();
            assert_eq!(f.coeffs, e.sequence(500), "{}", e.name);
        }
    }

    #[test]
    fn catalog_operators_follow_product_formula() {
        // θ^4 - zλ f1 (aθ^2 + aθ + b) - c z^2 λ^2 f1 f2 for X ∈ A–D, y ∈ a–g
        let shape = |x: SequenceRule| -> (i64, RatPoly, RatPoly) {
            let (lam, f1, f2) = match x {
                SequenceRule::A => (4, [(2, 1), (2, 1)], [(2, 3), (2, 3)]),
                SequenceRule::B => (3, [(3, 1), (3, 2)], [(3, 4), (3, 5)]),
                SequenceRule::C => (4, [(4, 1), (4, 3)], [(4, 5), (4, 7)]),
                SequenceRule::D => (12, [(6, 1), (6, 5)], [(6, 7), (6, 11)]),
                _ => unreachable!(),
            };
            let p =
                |f: [(i64, i64); 2]| RatPoly::from_ints([f[0].1, f[0].0]).mul(&RatPoly::from_ints([f[1].1, f[1].0]));
            (lam, p(f1), p(f2))
        };
        for e in catalog() {
            let (lam, f1, f2) = shape(e.factors.0);
            let (a, b, c) = e.factors.1.zagier_parameters().unwrap();
            let p1 = f1.mul(&RatPoly::from_ints([b, a, a])).scale(&ratio(-lam, 1));
            let p2 = f1.mul(&f2).scale(&ratio(-c * lam * lam, 1));
            let built =
                ThetaOperator::from_theta_polys("x", None, &[RatPoly::from_ints([0, 0, 0, 0, 1]), p1, p2]).unwrap();
            assert_eq!(built.rows(), e.operator.rows(), "{}", e.name);
        }
    }

    #[test]
    fn aesz_numbers() {
        assert_eq!(lookup("A*a").unwrap().aesz, 45);
        assert_eq!(lookup("D*g").unwrap().aesz, 140);
        assert_eq!(lookup("B*b").unwrap().aesz, 24);
        assert!(matches!(lookup("X*y"), Err(Error::Unknown(_))));
    }

    #[test]
    fn zagier_discriminants_not_square() {
        // 1 - a x - c x^2 is a square polynomial iff a^2 + 4c = 0
        for rule in [
            SequenceRule::Za,
            SequenceRule::Zb,
            SequenceRule::Zc,
            SequenceRule::Zd,
            SequenceRule::Zf,
            SequenceRule::Zg,
        ] {
            let (a, _, c) = rule.zagier_parameters().unwrap();
            assert_ne!(a * a + 4 * c, 0, "{}", rule.name());
        }
        for rule in [SequenceRule::E, SequenceRule::H, SequenceRule::I, SequenceRule::J] {
            let (a, _, c) = rule.two_term().unwrap();
            assert_eq!(a * a + 4 * c, 0, "{}", rule.name());
        }
    }

    #[test]
    fn modular_points_are_singular() {
        let annotated: Vec<_> = catalog().iter().filter(|e| !e.modular.is_empty()).collect();
        assert_eq!(annotated.len(), 16);
        for e in annotated {
            for m in &e.modular {
                assert!(e.singular_locus.eval(&m.point).is_zero(), "{} {}", e.name, m.point);
            }
        }
        let b = lookup("B*a").unwrap();
        assert_eq!(b.modular[1].printed_point, Some("1/126"));
        assert!(!b.singular_locus.eval(&ratio(1, 126)).is_zero());
    }

    #[test]
    fn quintic_formula() {
        let a = quintic_wedge_coefficients(50).unwrap();
        assert!(a[0].is_one());
        assert_eq!(a[1], BigInt::from(1010));
        let w = crate::wedge::f0_wedge_via_wronskian(&quintic_operator(), 50).unwrap();
        assert_eq!(w.coeffs, a);
    }
}
