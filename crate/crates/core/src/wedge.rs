//! Exterior square of a fourth-order operator and horizontal sections.
//!
//! `wedge_square` realizes the operator as a rank-4 differential module with
//! basis `e_k = θ^k ω`, passes to the rank-6 exterior square and finds the
//! monic relation satisfied by `η = e_0 ∧ e_1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diffop::{solve_series, MonicForm, SeriesModulus, SolveMode, ThetaOperator, TruncatedSeries};
use crate::error::{Error, Result};
use crate::polyrat::{rat, ratio, solve_linear_system, RatPoly, Rational, RationalFunction};

/// A free `Q(z)`-module with a θ-connection. Column `j` of `matrix` holds the
/// coordinates of `θ e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialModule {
    matrix: Vec<Vec<RationalFunction>>,
}

impl DifferentialModule {
    pub fn new(matrix: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("connection matrix must be square".into()));
        }
        Ok(DifferentialModule { matrix })
    }

    /// Companion module of `Σ z^i P_i(θ)`: `θ e_k = e_{k+1}` and
    /// `θ e_{n-1} = -Σ_k (coef_k / coef_n) e_k` with `coef_k = Σ_i z^i [θ^k] P_i`.
    pub fn from_operator(op: &ThetaOperator) -> Result<Self> {
        let n = op.order();
        let coef = |k: usize| {
            RatPoly::new(
                op.rows()
                    .iter()
                    .map(|r| Rational::from_integer(r.get(k).cloned().unwrap_or_default()))
                    .collect(),
            )
        };
        let lead = RationalFunction::from(coef(n));
        if lead.is_zero() {
            return Err(Error::ZeroSymbol);
        }
        let mut m = vec![vec![RationalFunction::zero(); n]; n];
        for k in 0..n.saturating_sub(1) {
            m[k + 1][k] = RationalFunction::one();
        }
        for (k, row) in m.iter_mut().enumerate() {
            row[n - 1] = RationalFunction::from(coef(k)).div(&lead)?.neg();
        }
        Self::new(m)
    }

    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<RationalFunction>] {
        &self.matrix
    }

    /// `θ v` for `v = Σ v_j e_j`.
    pub fn apply_theta(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        (0..self.dimension())
            .map(|i| {
                v.iter()
                    .enumerate()
                    .fold(v[i].theta(), |acc, (j, vj)| acc.add(&self.matrix[i][j].mul(vj)))
            })
            .collect()
    }

    /// Exterior square with basis `e_i ∧ e_j`, `i < j`, in lexicographic order.
    pub fn wedge_square(&self) -> Result<DifferentialModule> {
        let n = self.dimension();
        let pairs = wedge_pairs(n);
        let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j));
        let mut m = vec![vec![RationalFunction::zero(); pairs.len()]; pairs.len()];
        for (col, &(i, j)) in pairs.iter().enumerate() {
            // θ(e_i ∧ e_j) = Σ_k M[k][i] e_k ∧ e_j + Σ_k M[k][j] e_i ∧ e_k
            for k in 0..n {
                for (a, b, c) in [(k, j, &self.matrix[k][i]), (i, k, &self.matrix[k][j])] {
                    if c.is_zero() || a == b {
                        continue;
                    }
                    let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                    let row = index(lo, hi).expect("pair present");
                    let term = if sign > 0 { c.clone() } else { c.neg() };
                    m[row][col] = m[row][col].add(&term);
                }
            }
        }
        Self::new(m)
    }

    /// Smallest `m <= dimension` with `θ^m v = -Σ_{k<m} q_k θ^k v`, returned as
    /// `(q_0, ..., q_{m-1})`.
    pub fn minimal_relation(&self, v: &[RationalFunction]) -> Result<Vec<RationalFunction>> {
        let mut iterates = vec![v.to_vec()];
        for m in 1..=self.dimension() {
            let next = self.apply_theta(&iterates[m - 1]);
            let rows: Vec<Vec<RationalFunction>> = (0..self.dimension())
                .map(|i| iterates.iter().map(|it| it[i].clone()).collect())
                .collect();
            let rhs: Vec<RationalFunction> = next.iter().map(RationalFunction::neg).collect();
            if let Some(sol) = solve_linear_system(&rows, &rhs)? {
                if sol.kernel_dim == 0 {
                    return Ok(sol.solution);
                }
            }
            iterates.push(next);
        }
        Err(Error::UnexpectedOrder(self.dimension() + 1))
    }
}

fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Clears denominators of `θ^m + Σ q_k θ^k` and returns the canonical integer
/// θ-form: content 1 and positive constant term of the top θ-symbol.
fn relation_to_operator(name: String, q: &[RationalFunction]) -> Result<ThetaOperator> {
    let mut den = RatPoly::one();
    for c in q {
        let g = den.gcd(c.den());
        den = den.mul(c.den()).div_exact(&g);
    }
    let mut theta_polys: Vec<RatPoly> = q.iter().map(|c| c.num().mul(&den.div_exact(c.den()))).collect();
    theta_polys.push(den);
    let zdeg = theta_polys.iter().filter_map(RatPoly::degree).max().unwrap_or(0);
    let shift = (0..=zdeg)
        .find(|&i| theta_polys.iter().any(|p| !p.coeff(i).is_zero()))
        .unwrap_or(0);
    let lcm_den = theta_polys
        .iter()
        .flat_map(|p| p.coeffs())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = Rational::from_integer(lcm_den);
    let mut rows: Vec<Vec<BigInt>> = (shift..=zdeg)
        .map(|i| theta_polys.iter().map(|p| (p.coeff(i) * &scale).to_integer()).collect())
        .collect();
    let top = q.len();
    let sign_ref = rows
        .iter()
        .map(|r| &r[top])
        .find(|c| !c.is_zero())
        .cloned()
        .unwrap_or_else(BigInt::one);
    if sign_ref.is_negative() {
        for r in rows.iter_mut() {
            for c in r.iter_mut() {
                *c = -&*c;
            }
        }
    }
    ThetaOperator::new(name, None, rows)
}

/// Operator annihilating `e_0 ∧ e_1` in the exterior square of the
/// companion module of `op`, of whatever order it has.
pub fn exterior_square_operator(op: &ThetaOperator) -> Result<ThetaOperator> {
    let module = DifferentialModule::from_operator(op)?;
    let sq = module.wedge_square()?;
    let mut eta = vec![RationalFunction::zero(); sq.dimension()];
    eta[0] = RationalFunction::one();
    let q = sq.minimal_relation(&eta)?;
    relation_to_operator(format!("Q({})", op.name()), &q)
}

/// Fifth-order operator `Q` of a fourth-order MUM operator.
pub fn wedge_square(p_op: &ThetaOperator) -> Result<ThetaOperator> {
    if !p_op.check_mum() {
        return Err(Error::NotMum);
    }
    if p_op.order() != 4 {
        return Err(Error::UnexpectedOrder(p_op.order()));
    }
    let q = exterior_square_operator(p_op)?;
    if q.order() != 5 {
        return Err(Error::UnexpectedOrder(q.order()));
    }
    Ok(q)
}

/// Coefficients `c_0..c_n` and `g_0..g_n` of `y_1 = f_0` and
/// `y_2 = f_0 log z + g` at a MUM point (`g_0 = 0`).
pub fn log_solution(op: &ThetaOperator, n: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if !op.check_mum() {
        return Err(Error::NotMum);
    }
    let d = op.z_degree();
    let polys: Vec<RatPoly> = (0..=d).map(|i| op.theta_poly(i)).collect();
    let dpolys: Vec<RatPoly> = polys.iter().map(RatPoly::derivative).collect();
    let mut c = vec![Rational::one()];
    let mut g = vec![Rational::zero()];
    for k in 1..=n {
        let p0 = polys[0].eval(&rat(k as i64));
        let mut acc_c = Rational::zero();
        let mut acc_g = Rational::zero();
        for i in 1..=d.min(k) {
            let m = rat((k - i) as i64);
            acc_c += polys[i].eval(&m) * &c[k - i];
            acc_g += polys[i].eval(&m) * &g[k - i] + dpolys[i].eval(&m) * &c[k - i];
        }
        let ck = -acc_c / &p0;
        // log^0 terms: P_0(k) g_k + P_0'(k) c_k + Σ_{i>=1} (...) = 0
        let gk = -(acc_g + dpolys[0].eval(&rat(k as i64)) * &ck) / &p0;
        c.push(ck);
        g.push(gk);
    }
    Ok((c, g))
}

/// `F_0 = z (y_1 y_2' - y_1' y_2) = f_0^2 + f_0 θg - g θf_0` to degree `n`.
pub fn f0_wedge_via_wronskian(p_op: &ThetaOperator, n: usize) -> Result<TruncatedSeries> {
    if p_op.order() != 4 {
        return Err(Error::UnexpectedOrder(p_op.order()));
    }
    let (c, g) = log_solution(p_op, n)?;
    let tg: Vec<Rational> = g.iter().enumerate().map(|(k, x)| x * rat(k as i64)).collect();
    let tc: Vec<Rational> = c.iter().enumerate().map(|(k, x)| x * rat(k as i64)).collect();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut w = Rational::zero();
        for i in 0..=k {
            w += &c[i] * &c[k - i] + &c[i] * &tg[k - i] - &g[i] * &tc[k - i];
        }
        if !w.is_integer() {
            return Err(Error::NonIntegralSolution(k));
        }
        out.push(w.to_integer());
    }
    Ok(TruncatedSeries {
        modulus: SeriesModulus::Exact,
        coeffs: out,
        guaranteed: 0,
        source: format!("Q({})", p_op.name()),
    })
}

/// Truncated Laurent series `Σ_i c[i] z^{val+i}`, known below `val + len`.
#[derive(Clone, Debug, PartialEq)]
struct Laurent {
    val: i64,
    c: Vec<Rational>,
}

impl Laurent {
    fn prec(&self) -> i64 {
        self.val + self.c.len() as i64
    }

    fn get(&self, e: i64) -> Rational {
        if e < self.val {
            return Rational::zero();
        }
        self.c.get((e - self.val) as usize).cloned().unwrap_or_default()
    }

    fn from_fn(lo: i64, hi: i64, f: impl Fn(i64) -> Rational) -> Laurent {
        Laurent {
            val: lo,
            c: (lo..hi.max(lo)).map(f).collect(),
        }
    }

    fn from_coeffs(c: &[Rational]) -> Laurent {
        Laurent { val: 0, c: c.to_vec() }
    }

    /// Expansion of `f` at 0 known below exponent `prec`.
    fn from_rational_function(f: &RationalFunction, prec: i64) -> Laurent {
        let v = |p: &RatPoly| (0..).find(|&i| !p.coeff(i).is_zero()).unwrap_or(0) as i64;
        let (vn, vd) = (v(f.num()), v(f.den()));
        let val = vn - vd;
        let len = (prec - val).max(0) as usize;
        let num: Vec<Rational> = (0..len).map(|i| f.num().coeff(i + vn as usize)).collect();
        let den: Vec<Rational> = (0..len).map(|i| f.den().coeff(i + vd as usize)).collect();
        let mut q: Vec<Rational> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = num[k].clone();
            for j in 1..=k {
                acc -= &den[j] * &q[k - j];
            }
            q.push(acc / &den[0]);
        }
        Laurent { val, c: q }
    }

    fn add(&self, o: &Laurent) -> Laurent {
        Laurent::from_fn(self.val.min(o.val), self.prec().min(o.prec()), |e| {
            self.get(e) + o.get(e)
        })
    }

    fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.scale(&rat(-1)))
    }

    fn scale(&self, s: &Rational) -> Laurent {
        Laurent {
            val: self.val,
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        let lo = self.val + o.val;
        let hi = (self.val + o.prec()).min(o.val + self.prec());
        Laurent::from_fn(lo, hi, |e| {
            (self.val..=e - o.val)
                .map(|i| self.get(i) * o.get(e - i))
                .fold(Rational::zero(), |a, b| a + b)
        })
    }

    fn d(&self) -> Laurent {
        Laurent {
            val: self.val - 1,
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(i, x)| x * rat(self.val + i as i64))
                .collect(),
        }
    }

    fn dn(&self, k: usize) -> Laurent {
        (0..k).fold(self.clone(), |acc, _| acc.d())
    }
}

/// Rational `Y` with `Y'/Y = c·a`, if one exists: `a` must be proper with
/// square-free denominator and `c·a` must have integer residues. `Y` is
/// normalized to have leading coefficient 1 at each factor.
pub fn rational_exp_integral(a: &RationalFunction, c: &Rational) -> Result<RationalFunction> {
    let f = a.scale(c);
    if f.is_zero() {
        return Ok(RationalFunction::one());
    }
    let (num, den) = (f.num(), f.den());
    if num.degree() >= den.degree() {
        return Err(Error::NotRationalY);
    }
    let dd = den.derivative();
    if den.gcd(&dd).degree() != Some(0) {
        return Err(Error::NotRationalY);
    }
    let total = den.degree().unwrap_or(0);
    let mut found = 0;
    let mut y = RationalFunction::one();
    // residue at a root r is num(r)/den'(r); roots with residue k divide gcd(den, num - k den')
    let bound = 4 * (total as i64 + 1) * 16;
    for k in -bound..=bound {
        if k == 0 {
            continue;
        }
        let g = den.gcd(&num.sub(&dd.scale(&rat(k))));
        let gd = g.degree().unwrap_or(0);
        if gd == 0 {
            continue;
        }
        found += gd;
        let gf = RationalFunction::from(g.monic());
        y = if k > 0 {
            y.mul(&gf.pow(k as u32))
        } else {
            y.div(&gf.pow((-k) as u32))?
        };
        if found == total {
            break;
        }
    }
    // roots with residue 0 contribute nothing but must be accounted for
    let g0 = den.gcd(num);
    found += g0.degree().unwrap_or(0);
    if found != total {
        return Err(Error::NotRationalY);
    }
    Ok(y)
}

/// Formula variants for the order-four horizontal section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum U4Formula {
    Standard,
    /// Sign of the `f_0'' ∇ω` term flipped.
    SignFlipped,
}

/// Formula variants for the order-five horizontal section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum U5Formula {
    /// `Y b_3 F_0' ∇η` and `½((Y b_3)'' - 4/3((Y b_4)''' - Y''''))` in the last term.
    Corrected,
    /// `α b_3 F_0' ∇η` with `α = 1` and `½((Y b_3)' - 4/3((Y b_4)' - Y''''))`.
    AsPrinted,
    /// Corrected formula with `b_1` replaced by 0.
    WithoutB1,
}

/// `∇u` components `c_j' + c_{j-1} - c_{n-1} a_j` for `u = Σ c_j ∇^j`.
fn connection_defect(c: &[Laurent], a: &[Laurent]) -> Vec<Laurent> {
    let n = c.len();
    (0..n)
        .map(|j| {
            let mut t = c[j].d().sub(&c[n - 1].mul(&a[j]));
            if j > 0 {
                t = t.add(&c[j - 1]);
            }
            t
        })
        .collect()
}

fn all_zero_below(v: &[Laurent], upto: i64) -> bool {
    v.iter().all(|s| {
        debug_assert!(s.prec() > upto, "precision {} too low for {}", s.prec(), upto);
        (s.val..=upto.min(s.prec() - 1)).all(|e| s.get(e).is_zero())
    })
}

const EXTRA: usize = 16;

fn monic_series(m: &MonicForm, prec: i64) -> Vec<Laurent> {
    m.coeffs
        .iter()
        .map(|a| Laurent::from_rational_function(a, prec))
        .collect()
}

/// Checks that the order-four section `u_4` is horizontal through `z^{n-4}`.
pub fn verify_horizontal_u4(p_op: &ThetaOperator, n: usize) -> Result<bool> {
    verify_horizontal_u4_with(p_op, n, U4Formula::Standard)
}

pub fn verify_horizontal_u4_with(p_op: &ThetaOperator, n: usize, formula: U4Formula) -> Result<bool> {
    if p_op.order() != 4 {
        return Err(Error::UnexpectedOrder(p_op.order()));
    }
    let m = p_op.to_monic()?;
    let yrf = rational_exp_integral(m.coeff(3), &ratio(1, 2))?;
    let prec = (n + EXTRA) as i64;
    let a = monic_series(&m, prec);
    let y = Laurent::from_rational_function(&yrf, prec);
    let f0 = solve_series(p_op, n + EXTRA, SolveMode::Exact)?;
    let f: Vec<Rational> = f0.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect();
    let f = Laurent::from_coeffs(&f);
    let (f1, f2, f3) = (f.d(), f.dn(2), f.dn(3));
    let ya3 = y.mul(&a[3]);
    let k1 = ya3.sub(&y.d());
    let k2 = y.mul(&a[2]).sub(&ya3.d()).add(&y.dn(2));
    let s = match formula {
        U4Formula::Standard => rat(1),
        U4Formula::SignFlipped => rat(-1),
    };
    let c3 = y.mul(&f);
    let c2 = y.mul(&f1).scale(&rat(-1)).add(&k1.mul(&f));
    let c1 = y.mul(&f2).scale(&s).add(&k2.mul(&f));
    let c0 = y.mul(&f3).add(&k1.mul(&f2)).add(&k2.mul(&f1)).scale(&rat(-1));
    let defect = connection_defect(&[c0, c1, c2, c3], &a);
    Ok(all_zero_below(&defect, n as i64 - 4))
}

/// Checks that the order-five section `u_5` is horizontal through `z^{n-4}`.
pub fn verify_horizontal_u5(q_op: &ThetaOperator, n: usize) -> Result<bool> {
    verify_horizontal_u5_with(q_op, n, U5Formula::Corrected)
}

pub fn verify_horizontal_u5_with(q_op: &ThetaOperator, n: usize, formula: U5Formula) -> Result<bool> {
    if q_op.order() != 5 {
        return Err(Error::UnexpectedOrder(q_op.order()));
    }
    let m = q_op.to_monic()?;
    let yrf = rational_exp_integral(m.coeff(4), &ratio(2, 5))?;
    let prec = (n + EXTRA) as i64;
    let mut b = monic_series(&m, prec);
    let y = Laurent::from_rational_function(&yrf, prec);
    let big_f = solve_series(q_op, n + EXTRA, SolveMode::Exact)?;
    let f: Vec<Rational> = big_f.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect();
    let f = Laurent::from_coeffs(&f);
    let fd: Vec<Laurent> = (0..=4).map(|k| f.dn(k)).collect();
    let b1_used = if formula == U5Formula::WithoutB1 {
        Laurent::from_fn(b[1].val, b[1].prec(), |_| Rational::zero())
    } else {
        b[1].clone()
    };
    let yb4 = y.mul(&b[4]);
    let yb3 = y.mul(&b[3]);
    let k1 = yb4.sub(&y.d());
    let k2 = yb3.sub(&yb4.d()).add(&y.dn(2));
    let k3 = yb4.d().sub(&y.dn(2)).scale(&ratio(4, 3)).sub(&yb3);
    let k4 = yb3
        .d()
        .sub(&yb4.dn(2).sub(&y.dn(3)).scale(&ratio(4, 3)))
        .scale(&ratio(1, 2));
    let k5 = match formula {
        U5Formula::AsPrinted => yb3.d().sub(&yb4.d().sub(&y.dn(4)).scale(&ratio(4, 3))),
        _ => yb3.dn(2).sub(&yb4.dn(3).sub(&y.dn(4)).scale(&ratio(4, 3))),
    }
    .scale(&ratio(1, 2));
    let k5 = y.mul(&b1_used).sub(&k5);
    let c4 = y.mul(&fd[0]);
    let c3 = y.mul(&fd[1]).scale(&rat(-1)).add(&k1.mul(&fd[0]));
    let c2 = y
        .mul(&fd[2])
        .sub(&k1.mul(&fd[1]).scale(&ratio(1, 3)))
        .add(&k2.mul(&fd[0]));
    let c1 = y
        .mul(&fd[3])
        .scale(&rat(-1))
        .sub(&k1.mul(&fd[2]).scale(&ratio(1, 3)))
        .add(&k3.mul(&fd[1]))
        .add(&k4.mul(&fd[0]));
    let c0 = y
        .mul(&fd[4])
        .add(&k1.mul(&fd[3]))
        .add(&k2.mul(&fd[2]))
        .add(&k4.mul(&fd[1]))
        .add(&k5.mul(&fd[0]));
    if formula == U5Formula::WithoutB1 {
        b[1] = b1_used;
    }
    let defect = connection_defect(&[c0, c1, c2, c3, c4], &b);
    Ok(all_zero_below(&defect, n as i64 - 4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::{check_cy5, linear_product};

    fn a_star_a() -> ThetaOperator {
        ThetaOperator::from_i64_rows(
            "A*a",
            Some(45),
            &[
                &[0, 0, 0, 0, 1],
                &[-8, -60, -172, -224, -112],
                &[-1152, -6144, -11264, -8192, -2048],
            ],
        )
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn q_of_a_star_a_matches_printed_operator() {
        let q = wedge_square(&a_star_a()).unwrap();
        let expected: Vec<Vec<BigInt>> = [
            [0i64, 0, 0, 0, 0, 1],
            [-44, -260, -628, -792, -560, -224],
            [-6512, 400, 44160, 71040, 42240, 8448],
            [4177920, 13180928, 16588800, 10567680, 3440640, 458752],
            [100663296, 285212672, 310378496, 163577856, 41943040, 4194304],
        ]
        .iter()
        .map(|r| ints(r))
        .collect();
        assert_eq!(q.rows(), expected.as_slice());
        assert!(q.check_mum());
        assert!(check_cy5(&q.to_monic().unwrap()));
        // θ^5 symbol of Q is the square of the θ^4 symbol of P
        assert_eq!(q.leading_symbol(), a_star_a().leading_symbol().pow(2));
    }

    #[test]
    fn scaling_does_not_change_q() {
        let p = a_star_a();
        let scaled = ThetaOperator::new(
            "A*a",
            None,
            p.rows().iter().map(|r| r.iter().map(|c| c * 7).collect()).collect(),
        )
        .unwrap();
        assert_eq!(wedge_square(&scaled).unwrap().rows(), wedge_square(&p).unwrap().rows());
    }

    #[test]
    fn order_two_analogue_is_abel() {
        // θ^2 - z(θ+1)^2: Wronskian of the rank-2 module satisfies θW = -a W
        let p = ThetaOperator::from_theta_polys(
            "two",
            None,
            &[RatPoly::from_ints([0, 0, 1]), linear_product(-1, &[(1, 1), (1, 1)])],
        )
        .unwrap();
        let q = exterior_square_operator(&p).unwrap();
        assert_eq!(q.order(), 1);
        // coefficient of e_1 in θ e_1 is -(θ-coef_1)/(coef_2) = 2z/(1-z); relation θη - 2z/(1-z) η = 0
        // cleared: (1 - z) θ - 2z
        assert_eq!(q.rows(), &[ints(&[0, 1]), ints(&[-2, -1])][..]);
        // W = f0 θf1 - f1 θf0 for f0 = 1/(1-z): solution of q is 1/(1-z)^2
        let s = solve_series(&q, 6, SolveMode::Exact).unwrap();
        assert_eq!(s.coeffs, ints(&[1, 2, 3, 4, 5, 6, 7]));
    }

    #[test]
    fn relation_orders() {
        // θ^4: η, θη, ..., θ^4 η independent and θ^5 η = 0
        let p = ThetaOperator::from_i64_rows("t4", None, &[&[0, 0, 0, 0, 1]]).unwrap();
        assert_eq!(wedge_square(&p).unwrap().rows(), &[ints(&[0, 0, 0, 0, 0, 1])][..]);
        // without self-duality η generates the whole rank-6 module
        let generic = ThetaOperator::from_theta_polys(
            "g",
            None,
            &[
                RatPoly::from_ints([0, 0, 0, 0, 1]),
                linear_product(-1, &[(1, 0), (1, 1), (1, 1), (1, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(wedge_square(&generic).unwrap_err(), Error::UnexpectedOrder(6));
        let two = ThetaOperator::from_i64_rows("t2", None, &[&[0, 0, 1]]).unwrap();
        assert_eq!(wedge_square(&two).unwrap_err(), Error::UnexpectedOrder(2));
    }

    #[test]
    fn wronskian_examples() {
        let w = f0_wedge_via_wronskian(&a_star_a(), 5).unwrap();
        assert_eq!(w.coeffs, ints(&[1, 44, 3652, 337712, 33909700, 3567877424]));
        let trivial = ThetaOperator::from_theta_polys(
            "geo",
            None,
            &[RatPoly::from_ints([0, 0, 0, 0, 1]), linear_product(-1, &[(1, 1); 4])],
        )
        .unwrap();
        let wt = f0_wedge_via_wronskian(&trivial, 10).unwrap();
        assert!(wt.coeffs[0].is_one());
        let qt = wedge_square(&trivial).unwrap();
        assert_eq!(wt.coeffs, solve_series(&qt, 10, SolveMode::Exact).unwrap().coeffs);
    }

    #[test]
    fn wronskian_matches_q_recurrence() {
        let p = a_star_a();
        let q = wedge_square(&p).unwrap();
        let a = f0_wedge_via_wronskian(&p, 200).unwrap();
        let b = solve_series(&q, 200, SolveMode::Exact).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
    }

    #[test]
    fn log_solution_examples() {
        // θ^2 - z(θ+1)^2 = θ^2 (1 - z): solutions (1 - z)^-1 and (1 - z)^-1 log z
        let p = ThetaOperator::from_theta_polys(
            "two",
            None,
            &[RatPoly::from_ints([0, 0, 1]), linear_product(-1, &[(1, 1), (1, 1)])],
        )
        .unwrap();
        let (c, g) = log_solution(&p, 4).unwrap();
        assert!(c.iter().all(|x| x.is_one()));
        assert!(g.iter().all(|x| x.is_zero()));
        // θ^2 - z(θ+1)(θ+2)... use θ^2 - 4z(θ+1/2)^2 scaled: f0 = Σ binom(2n,n)^2 (z/16)^n,
        // g_n = 4 c_n (H_{2n} - H_n) from the known Frobenius expansion
        let leg = ThetaOperator::from_i64_rows("leg", None, &[&[0, 0, 4], &[-1, -4, -4]]).unwrap();
        let (c, g) = log_solution(&leg, 6).unwrap();
        let h = |n: i64| (1..=n).map(|k| ratio(1, k)).fold(rat(0), |a, b| a + b);
        for n in 0..=6i64 {
            assert_eq!(g[n as usize], &c[n as usize] * rat(4) * (h(2 * n) - h(n)));
        }
    }

    #[test]
    fn y_for_a_star_a() {
        let m = a_star_a().to_monic().unwrap();
        let y = rational_exp_integral(m.coeff(3), &ratio(1, 2)).unwrap();
        // independent: logarithmic derivative equals a3 / 2
        let lhs = y.derivative().div(&y).unwrap();
        assert_eq!(lhs, m.coeff(3).scale(&ratio(1, 2)));
        let not_rational = RationalFunction::new(RatPoly::one(), RatPoly::from_ints([0, 1])).unwrap();
        assert_eq!(
            rational_exp_integral(&not_rational, &ratio(1, 2)).unwrap_err(),
            Error::NotRationalY
        );
        let poly_part = RationalFunction::from(RatPoly::from_ints([1]));
        assert_eq!(
            rational_exp_integral(&poly_part, &rat(1)).unwrap_err(),
            Error::NotRationalY
        );
    }

    #[test]
    fn horizontal_u4_and_controls() {
        let p = a_star_a();
        assert!(verify_horizontal_u4(&p, 30).unwrap());
        assert!(!verify_horizontal_u4_with(&p, 30, U4Formula::SignFlipped).unwrap());
    }

    #[test]
    fn horizontal_u5_and_controls() {
        let q = wedge_square(&a_star_a()).unwrap();
        assert!(verify_horizontal_u5(&q, 30).unwrap());
        assert!(!verify_horizontal_u5_with(&q, 30, U5Formula::WithoutB1).unwrap());
        assert!(!verify_horizontal_u5_with(&q, 30, U5Formula::AsPrinted).unwrap());
    }

    #[test]
    fn laurent_expansion() {
        // 1/(z (1 - z)) = z^-1 + 1 + z + ...
        let f = RationalFunction::new(RatPoly::one(), RatPoly::from_ints([0, 1, -1])).unwrap();
        let l = Laurent::from_rational_function(&f, 4);
        assert_eq!(l.val, -1);
        assert!(l.c.iter().all(|x| x.is_one()));
        assert_eq!(l.prec(), 4);
        let sq = l.mul(&l);
        assert_eq!(sq.val, -2);
        assert_eq!(sq.get(-2), rat(1));
        assert_eq!(sq.get(1), rat(4));
        assert_eq!(l.d().get(-2), rat(-1));
    }
}
