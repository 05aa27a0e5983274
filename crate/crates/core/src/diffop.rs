//! Differential operators in θ-form, `Σ z^i P_i(θ)` with `θ = z d/dz`.
//!
//! Covers the MUM test, conversion to monic `d/dz` form, the Calabi-Yau
//! coefficient identities for orders four and five, and power series
//! solutions through the coefficient recurrence
//! `Σ_i P_i(n - i) c_{n-i} = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::padic::{prime_power, reduce_mod, PadicNumber};
use crate::polyrat::{rat, ratio, RatPoly, Rational, RationalFunction};

/// Operator `Σ_i z^i P_i(θ)` with integer coefficients.
///
/// `rows[i][j]` is the coefficient of `z^i θ^j`. Rows are stored primitive;
/// the extracted content is kept in `content`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOperator {
    name: String,
    aesz: Option<u32>,
    rows: Vec<Vec<BigInt>>,
    content: BigInt,
}

/// JSON operator file: `{"name", "aesz", "theta_order", "coeffs"}` with
/// decimal-string integers, `coeffs[i][j]` the coefficient of `z^i θ^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorFile {
    pub name: String,
    pub aesz: Option<u32>,
    pub theta_order: usize,
    pub coeffs: Vec<Vec<String>>,
}

impl ThetaOperator {
    pub fn new(name: impl Into<String>, aesz: Option<u32>, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let mut rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|mut r| {
                while r.last().is_some_and(Zero::is_zero) {
                    r.pop();
                }
                r
            })
            .collect();
        while rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        if rows.is_empty() {
            return Err(Error::ZeroSymbol);
        }
        let content = rows.iter().flatten().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|c| c / &content).collect())
            .collect();
        Ok(ThetaOperator {
            name: name.into(),
            aesz,
            rows,
            content,
        })
    }

    pub fn from_i64_rows(name: impl Into<String>, aesz: Option<u32>, rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            name,
            aesz,
            rows.iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    /// Builds `Σ z^i P_i(θ)` from θ-polynomials `P_i`.
    pub fn from_theta_polys(name: impl Into<String>, aesz: Option<u32>, polys: &[RatPoly]) -> Result<Self> {
        let den = polys
            .iter()
            .flat_map(|p| p.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let d = Rational::from_integer(den);
        let rows = polys
            .iter()
            .map(|p| p.coeffs().iter().map(|c| (c * &d).to_integer()).collect())
            .collect();
        Self::new(name, aesz, rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn aesz(&self) -> Option<u32> {
        self.aesz
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn content(&self) -> &BigInt {
        &self.content
    }

    /// Same coefficients under another name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        ThetaOperator {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Highest power of θ present.
    pub fn order(&self) -> usize {
        self.rows.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Highest power of `z` present.
    pub fn z_degree(&self) -> usize {
        self.rows.len() - 1
    }

    /// `P_i` as a polynomial in θ.
    pub fn theta_poly(&self, i: usize) -> RatPoly {
        self.rows.get(i).map(RatPoly::from_bigints).unwrap_or_default()
    }

    /// `P_i(m)` for an integer `m`.
    pub fn eval_row(&self, i: usize, m: &BigInt) -> BigInt {
        self.rows
            .get(i)
            .map(|r| r.iter().rev().fold(BigInt::zero(), |acc, c| acc * m + c))
            .unwrap_or_default()
    }

    /// True iff `P_0(θ)` is a constant multiple of `θ^n`.
    pub fn check_mum(&self) -> bool {
        let n = self.order();
        let p0 = &self.rows[0];
        p0.len() == n + 1 && p0[..n].iter().all(Zero::is_zero)
    }

    /// `Σ_i z^i [θ^n] P_i`, whose nonzero roots are the finite singular points.
    pub fn leading_symbol(&self) -> RatPoly {
        let n = self.order();
        RatPoly::new(
            self.rows
                .iter()
                .map(|r| Rational::from_integer(r.get(n).cloned().unwrap_or_default()))
                .collect(),
        )
    }

    /// Roots of the leading symbol in `F_p^*`.
    pub fn singular_points_mod(&self, p: u64) -> Vec<u64> {
        let n = self.order();
        let pb = BigInt::from(p);
        let sym: Vec<BigInt> = self
            .rows
            .iter()
            .map(|r| r.get(n).cloned().unwrap_or_default().mod_floor(&pb))
            .collect();
        (1..p)
            .filter(|&z| {
                let zb = BigInt::from(z);
                sym.iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, c| (acc * &zb + c).mod_floor(&pb))
                    .is_zero()
            })
            .collect()
    }

    /// Rewrites the operator in monic `d/dz` form using
    /// `θ^k = Σ_j S(k, j) z^j D^j`.
    pub fn to_monic(&self) -> Result<MonicForm> {
        let n = self.order();
        let stirling = stirling_table(n);
        let mut dcoef = vec![RatPoly::zero(); n + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, s) in stirling[k].iter().enumerate().take(k + 1) {
                    if s.is_zero() {
                        continue;
                    }
                    let term = RatPoly::monomial(Rational::from_integer(c * s), i + j);
                    dcoef[j] = dcoef[j].add(&term);
                }
            }
        }
        if dcoef[n].is_zero() {
            return Err(Error::ZeroSymbol);
        }
        let lead = RationalFunction::from(dcoef[n].clone());
        let coeffs = dcoef[..n]
            .iter()
            .map(|c| RationalFunction::from(c.clone()).div(&lead))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonicForm { order: n, coeffs })
    }

    /// Serializes to the JSON operator file structure.
    pub fn to_file(&self) -> OperatorFile {
        OperatorFile {
            name: self.name.clone(),
            aesz: self.aesz,
            theta_order: self.order(),
            coeffs: self
                .rows
                .iter()
                .map(|r| {
                    (0..=self.order())
                        .map(|j| r.get(j).cloned().unwrap_or_default().to_string())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_file(f: &OperatorFile) -> Result<Self> {
        let rows = f
            .coeffs
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        s.trim()
                            .parse::<BigInt>()
                            .map_err(|e| Error::Parse(format!("coefficient {s:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let op = Self::new(f.name.clone(), f.aesz, rows)?;
        if op.order() != f.theta_order {
            return Err(Error::Parse(format!(
                "theta_order {} but coefficients have order {}",
                f.theta_order,
                op.order()
            )));
        }
        Ok(op)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("operator serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(s)?)
    }

    /// SHA-256 of the canonical JSON coefficient table (name excluded).
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        let coeffs = self.to_file().coeffs;
        h.update(serde_json::to_vec(&coeffs).expect("coefficients serialize"));
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Applies the operator to a power series given by its coefficients:
    /// returns the coefficients of `L(f)` up to the length of `f`.
    pub fn apply_to_series(&self, c: &[BigInt]) -> Vec<BigInt> {
        (0..c.len())
            .map(|n| {
                (0..=self.z_degree().min(n))
                    .map(|i| self.eval_row(i, &BigInt::from(n - i)) * &c[n - i])
                    .sum()
            })
            .collect()
    }
}

/// Stirling numbers of the second kind `S(k, j)` for `k, j <= n`, via
/// `θ · z^j D^j = z^{j+1} D^{j+1} + j z^j D^j`.
pub fn stirling_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n + 1]; n + 1];
    s[0][0] = BigInt::one();
    for k in 0..n {
        for j in 0..=k {
            let v = s[k][j].clone();
            if v.is_zero() {
                continue;
            }
            s[k + 1][j + 1] += &v;
            s[k + 1][j] += v * BigInt::from(j);
        }
    }
    s
}

/// `y^(n) + a_{n-1} y^(n-1) + ... + a_0 y` with rational-function coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicForm {
    pub order: usize,
    /// `coeffs[i]` multiplies `y^(i)`.
    pub coeffs: Vec<RationalFunction>,
}

impl MonicForm {
    pub fn coeff(&self, i: usize) -> &RationalFunction {
        &self.coeffs[i]
    }

    /// Re-expands into θ-form `Σ z^i P_i(θ)` after clearing denominators, using
    /// `z^j D^j = θ(θ-1)...(θ-j+1)`.
    pub fn to_theta(&self, name: &str) -> Result<ThetaOperator> {
        let n = self.order;
        let mut lcm = RatPoly::one();
        for c in &self.coeffs {
            let g = lcm.gcd(c.den());
            lcm = lcm.mul(c.den()).div_exact(&g);
        }
        // multiply D^j coefficients by z^n * lcm so every term is z^j D^j times a polynomial.
        let zn = RatPoly::monomial(Rational::one(), n);
        let scale = lcm.mul(&zn);
        let mut theta_rows: Vec<Vec<Rational>> = Vec::new();
        let add = |rows: &mut Vec<Vec<Rational>>, i: usize, j: usize, c: Rational| {
            if rows.len() <= i {
                rows.resize(i + 1, vec![Rational::zero(); n + 1]);
            }
            rows[i][j] += c;
        };
        let falling = falling_factorial_table(n);
        for j in 0..=n {
            let poly = if j == n {
                scale.clone()
            } else {
                let c = &self.coeffs[j];
                c.num().mul(&scale.div_exact(c.den()))
            };
            // poly(z) * D^j = poly(z) z^{-j} * z^j D^j; poly divisible by z^j by construction.
            for (deg, coef) in poly.coeffs().iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let zi = deg.checked_sub(j).ok_or(Error::ZeroSymbol)?;
                for (k, f) in falling[j].iter().enumerate() {
                    add(&mut theta_rows, zi, k, coef * Rational::from_integer(f.clone()));
                }
            }
        }
        let polys: Vec<RatPoly> = theta_rows.into_iter().map(RatPoly::new).collect();
        // drop leading zero rows in z
        let start = polys.iter().position(|p| !p.is_zero()).unwrap_or(0);
        let op = ThetaOperator::from_theta_polys(name, None, &polys[start..])?;
        let lead_positive = op.rows[0].last().is_some_and(Signed::is_positive);
        if lead_positive {
            Ok(op)
        } else {
            let rows = op.rows.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
            ThetaOperator::new(name, None, rows)
        }
    }
}

/// Coefficients of `θ(θ-1)...(θ-j+1)` in θ, for `j <= n`.
fn falling_factorial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::one()]];
    for j in 1..=n {
        let prev = &out[j - 1];
        let mut next = vec![BigInt::zero(); prev.len() + 1];
        for (k, c) in prev.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * BigInt::from(j - 1);
        }
        out.push(next);
    }
    out
}

fn d(f: &RationalFunction, k: usize) -> RationalFunction {
    f.nth_derivative(k)
}

/// Exact test of the order-four self-duality identity
/// `a1 = a2 a3/2 - a3^3/8 + a2' - 3/4 a3 a3' - a3''/2`.
pub fn check_cy4(m: &MonicForm) -> bool {
    if m.order != 4 {
        return false;
    }
    let (a1, a2, a3) = (m.coeff(1), m.coeff(2), m.coeff(3));
    let rhs = a2
        .mul(a3)
        .scale(&ratio(1, 2))
        .sub(&a3.pow(3).scale(&ratio(1, 8)))
        .add(&d(a2, 1))
        .sub(&a3.mul(&d(a3, 1)).scale(&ratio(3, 4)))
        .sub(&d(a3, 2).scale(&ratio(1, 2)));
    &rhs == a1
}

/// The `b2` relation for order five, as `b2 - rhs`.
pub fn cy5_b2_defect(m: &MonicForm) -> RationalFunction {
    let (b2, b3, b4) = (m.coeff(2), m.coeff(3), m.coeff(4));
    let rhs = b3
        .mul(b4)
        .scale(&ratio(3, 5))
        .sub(&b4.pow(3).scale(&ratio(4, 25)))
        .add(&d(b3, 1).scale(&ratio(3, 2)))
        .sub(&b4.mul(&d(b4, 1)).scale(&ratio(6, 5)))
        .sub(&d(b4, 2));
    b2.sub(&rhs)
}

/// The `b0` relation for order five, as `b0 - rhs`.
pub fn cy5_b0_defect(m: &MonicForm) -> RationalFunction {
    let (b0, b1, b3, b4) = (m.coeff(0), m.coeff(1), m.coeff(3), m.coeff(4));
    let b4p = d(b4, 1);
    let b4pp = d(b4, 2);
    let b4ppp = d(b4, 3);
    let b3p = d(b3, 1);
    let b3pp = d(b3, 2);
    let b4_2 = b4.pow(2);
    let b4_3 = b4.pow(3);
    let terms: Vec<(Rational, RationalFunction)> = vec![
        (ratio(1, 2), d(b1, 1)),
        (ratio(-2, 125), b3.mul(&b4_3)),
        (ratio(1, 5), b1.mul(b4)),
        (ratio(-1, 10), b3.mul(&b4pp)),
        (ratio(2, 5), b4ppp.mul(b4)),
        (ratio(4, 5), b4pp.mul(&b4p)),
        (ratio(16, 125), b4p.mul(&b4_3)),
        (ratio(12, 25), b4p.pow(2).mul(b4)),
        (ratio(-3, 10), b3pp.mul(b4)),
        (ratio(8, 25), b4_2.mul(&b4pp)),
        (ratio(-3, 10), b3p.mul(&b4p)),
        (ratio(-3, 25), b4_2.mul(&b3p)),
        (ratio(-1, 4), d(b3, 3)),
        (ratio(16, 3125), b4.pow(5)),
        (ratio(1, 5), d(b4, 4)),
        (ratio(-3, 25), b3.mul(&b4p).mul(b4)),
    ];
    let rhs = terms
        .iter()
        .fold(RationalFunction::zero(), |acc, (c, t)| acc.add(&t.scale(c)));
    b0.sub(&rhs)
}

/// Exact test of both order-five self-duality relations.
pub fn check_cy5(m: &MonicForm) -> bool {
    m.order == 5 && cy5_b2_defect(m).is_zero() && cy5_b0_defect(m).is_zero()
}

/// Coefficient ring of a [`TruncatedSeries`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesModulus {
    Exact,
    Padic { prime: u64, cap: u32 },
}

/// Coefficients `c_0..c_N` of a power series solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub modulus: SeriesModulus,
    /// Exact integers, or residues in `[0, p^cap)`.
    pub coeffs: Vec<BigInt>,
    /// Certified p-adic digits of every coefficient (`cap` for residues
    /// reduced from exact values; unused in exact mode).
    pub guaranteed: u32,
    pub source: String,
}

impl TruncatedSeries {
    /// Degree of truncation `N` (the series has `N + 1` coefficients).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Reduces an exact series modulo `p^cap`.
    pub fn reduce(&self, prime: u64, cap: u32) -> TruncatedSeries {
        let m = prime_power(prime, cap);
        TruncatedSeries {
            modulus: SeriesModulus::Padic { prime, cap },
            coeffs: self.coeffs.iter().map(|c| BigInt::from(reduce_mod(c, &m))).collect(),
            guaranteed: match self.modulus {
                SeriesModulus::Exact => cap,
                SeriesModulus::Padic { .. } => self.guaranteed.min(cap),
            },
            source: self.source.clone(),
        }
    }

    /// Keeps coefficients of degree `<= n`.
    pub fn truncate(&self, n: usize) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs[..=n.min(self.degree())].to_vec(),
            ..self.clone()
        }
    }

    /// Evaluates the truncation of degree `<= n` at a p-adic point (Horner).
    pub fn eval_truncated(&self, n: usize, x: &PadicNumber) -> PadicNumber {
        let m = x.modulus();
        let xm = x.residue();
        let mut acc = num_bigint::BigUint::zero();
        for c in self.coeffs[..=n].iter().rev() {
            acc = (acc * xm + reduce_mod(c, &m)) % &m;
        }
        let g = match self.modulus {
            SeriesModulus::Exact => x.guaranteed(),
            SeriesModulus::Padic { .. } => self.guaranteed.min(x.guaranteed()),
        };
        PadicNumber::with_precision(x.prime(), x.cap(), BigInt::from(acc), g.max(1)).expect("prime already validated")
    }
}

/// How [`solve_series`] computes coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Exact,
    Modular { prime: u64, cap: u32 },
}

/// Exact recurrence step: `c_n = -(Σ_{i>=1} P_i(n-i) c_{n-i}) / P_0(n)`.
fn recurrence_step(op: &ThetaOperator, n: usize, window: &[BigInt]) -> Result<BigInt> {
    // window[k] = c_{n-1-k}
    let mut acc = BigInt::zero();
    for i in 1..=op.z_degree().min(n) {
        let c = &window[i - 1];
        if c.is_zero() {
            continue;
        }
        acc += op.eval_row(i, &BigInt::from(n - i)) * c;
    }
    let den = op.eval_row(0, &BigInt::from(n));
    if den.is_zero() {
        return Err(Error::NonIntegralSolution(n));
    }
    let (q, r) = (-acc).div_rem(&den);
    if !r.is_zero() {
        return Err(Error::NonIntegralSolution(n));
    }
    Ok(q)
}

/// Holomorphic solution normalized by `c_0 = 1`, to degree `n`.
///
/// `Exact` keeps every coefficient as an integer. `Modular` runs the same
/// exact recurrence keeping only the last `z_degree` coefficients exact and
/// storing residues mod `p^cap`; if an exact division fails it falls back to
/// a p-adic recurrence with guard digits.
pub fn solve_series(op: &ThetaOperator, n: usize, mode: SolveMode) -> Result<TruncatedSeries> {
    if !op.check_mum() {
        return Err(Error::NotMum);
    }
    match mode {
        SolveMode::Exact => {
            let mut c = vec![BigInt::one()];
            let d = op.z_degree();
            for k in 1..=n {
                let window: Vec<BigInt> = (1..=d.min(k)).map(|i| c[k - i].clone()).collect();
                c.push(recurrence_step(op, k, &window)?);
            }
            Ok(TruncatedSeries {
                modulus: SeriesModulus::Exact,
                coeffs: c,
                guaranteed: 0,
                source: op.name().to_string(),
            })
        }
        SolveMode::Modular { prime, cap } => {
            match solve_series_residues(op, &[ResidueTarget { prime, cap, degree: n }]) {
                Ok(mut v) => Ok(v.pop().expect("one target")),
                Err(Error::NonIntegralSolution(_)) => solve_series_padic_checked(op, n, prime, cap),
                Err(e) => Err(e),
            }
        }
    }
}

/// One requested reduction of the holomorphic solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueTarget {
    pub prime: u64,
    pub cap: u32,
    pub degree: usize,
}

/// Runs the exact recurrence once, up to the largest requested degree, and
/// returns the residues for every target. Memory stays bounded by the
/// residues plus `z_degree` exact coefficients.
pub fn solve_series_residues(op: &ThetaOperator, targets: &[ResidueTarget]) -> Result<Vec<TruncatedSeries>> {
    if !op.check_mum() {
        return Err(Error::NotMum);
    }
    for t in targets {
        crate::padic::check_odd_prime(t.prime)?;
    }
    let max_n = targets.iter().map(|t| t.degree).max().unwrap_or(0);
    let moduli: Vec<BigInt> = targets
        .iter()
        .map(|t| BigInt::from(prime_power(t.prime, t.cap)))
        .collect();
    let mut out: Vec<Vec<BigInt>> = targets.iter().map(|t| Vec::with_capacity(t.degree + 1)).collect();
    let d = op.z_degree();
    // window[k] = c_{n-1-k}
    let mut window: std::collections::VecDeque<BigInt> = std::collections::VecDeque::with_capacity(d + 1);
    window.push_front(BigInt::one());
    let push = |n: usize, c: &BigInt, out: &mut Vec<Vec<BigInt>>| {
        for ((t, m), o) in targets.iter().zip(&moduli).zip(out.iter_mut()) {
            if n <= t.degree {
                o.push(c.mod_floor(m));
            }
        }
    };
    push(0, &BigInt::one(), &mut out);
    let rows: Vec<Vec<BigInt>> = op.rows().to_vec();
    for n in 1..=max_n {
        let mut acc = BigInt::zero();
        for i in 1..=d.min(n) {
            let c = &window[i - 1];
            if c.is_zero() {
                continue;
            }
            let m = BigInt::from(n - i);
            let pi = rows[i].iter().rev().fold(BigInt::zero(), |a, x| a * &m + x);
            acc += pi * c;
        }
        let den = op.eval_row(0, &BigInt::from(n));
        let (q, r) = (-acc).div_rem(&den);
        if !r.is_zero() {
            return Err(Error::NonIntegralSolution(n));
        }
        push(n, &q, &mut out);
        window.push_front(q);
        window.truncate(d);
    }
    Ok(targets
        .iter()
        .zip(out)
        .map(|(t, coeffs)| TruncatedSeries {
            modulus: SeriesModulus::Padic {
                prime: t.prime,
                cap: t.cap,
            },
            coeffs,
            guaranteed: t.cap,
            source: op.name().to_string(),
        })
        .collect())
}

/// Default guard digits for the p-adic fallback.
pub const PADIC_GUARD: u32 = 32;

/// Recurrence carried out in `Z/p^work_cap` with pessimistic precision
/// tracking: each division by `P_0(n)` costs `v_p(P_0(n))` digits, and
/// losses propagate through the sums. Fails with `PrecisionExhausted` once a
/// coefficient has fewer than `target` certified digits.
pub fn solve_series_padic(
    op: &ThetaOperator,
    n: usize,
    prime: u64,
    work_cap: u32,
    target: u32,
) -> Result<TruncatedSeries> {
    if !op.check_mum() {
        return Err(Error::NotMum);
    }
    let d = op.z_degree();
    let mut c: Vec<PadicNumber> = vec![PadicNumber::new(prime, work_cap, 1)?];
    for k in 1..=n {
        let mut acc = PadicNumber::new(prime, work_cap, 0)?;
        for i in 1..=d.min(k) {
            let coef = PadicNumber::new(prime, work_cap, op.eval_row(i, &BigInt::from(k - i)))?;
            acc = acc.add(&coef.mul(&c[k - i]));
        }
        let den = op.eval_row(0, &BigInt::from(k));
        let next = acc.neg().div_int(&den).map_err(|e| match e {
            Error::NotAUnit(_) => Error::NonIntegralSolution(k),
            other => other,
        })?;
        if next.guaranteed() < target {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient {k} keeps {} of {target} digits at working precision {work_cap}",
                next.guaranteed()
            )));
        }
        c.push(next);
    }
    let m = BigInt::from(prime_power(prime, target));
    Ok(TruncatedSeries {
        modulus: SeriesModulus::Padic { prime, cap: target },
        coeffs: c
            .iter()
            .map(|x| BigInt::from(x.residue().clone()).mod_floor(&m))
            .collect(),
        guaranteed: target,
        source: op.name().to_string(),
    })
}

/// p-adic fallback with `PADIC_GUARD` guard digits and a stability re-check
/// of a 1% sample at 16 further digits.
fn solve_series_padic_checked(op: &ThetaOperator, n: usize, prime: u64, cap: u32) -> Result<TruncatedSeries> {
    let first = solve_series_padic(op, n, prime, cap + PADIC_GUARD, cap)?;
    let second = solve_series_padic(op, n, prime, cap + PADIC_GUARD + 16, cap)?;
    let step = (n / 100).max(1);
    for k in (0..=n).step_by(step) {
        if first.coeffs[k] != second.coeffs[k] {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient {k} unstable under increased precision"
            )));
        }
    }
    Ok(first)
}

/// Rational helper: exact `BigRational` from a `BigInt`.
pub fn big_rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Small-integer evaluation of `P_i(m)` for tests and tools.
pub fn eval_row_i64(op: &ThetaOperator, i: usize, m: i64) -> Option<i64> {
    op.eval_row(i, &BigInt::from(m)).to_i64()
}

/// Integer polynomial helper: `Σ c_j θ^j` from its roots scaled, for building
/// catalog operators: returns the coefficients of `scale * Π (a θ + b)`.
pub fn linear_product(scale: i64, factors: &[(i64, i64)]) -> RatPoly {
    factors.iter().fold(RatPoly::constant(rat(scale)), |acc, &(a, b)| {
        acc.mul(&RatPoly::from_ints([b, a]))
    })
}
