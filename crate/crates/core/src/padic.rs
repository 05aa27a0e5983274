//! Fixed-precision arithmetic in `Z_p` (prime field case) with tracked precision.
//!
//! A [`PadicNumber`] is a residue modulo `p^cap` together with the exponent
//! `guaranteed <= cap` below which its digits are certified. Operations never
//! report more certified digits than their inputs justify.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `p^k` as a big integer.
pub fn prime_power(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

/// Returns `Ok(())` for odd primes, `InvalidPrime` otherwise.
pub fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::InvalidPrime(p));
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Err(Error::InvalidPrime(p));
        }
        d += 2;
    }
    Ok(())
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation_of(p: u64, n: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// Reduces an arbitrary integer into `[0, m)`.
pub fn reduce_mod(n: &BigInt, m: &BigUint) -> BigUint {
    let mi = BigInt::from(m.clone());
    n.mod_floor(&mi).to_biguint().expect("mod_floor is nonnegative")
}

/// An element of `Z/p^cap` with `guaranteed` certified digits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    prime: u64,
    cap: u32,
    residue: BigUint,
    guaranteed: u32,
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + O({}^{}) [cap {}]",
            self.residue, self.prime, self.guaranteed, self.cap
        )
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.prime, self.guaranteed)
    }
}

impl PadicNumber {
    /// Builds `value mod p^cap` with full precision.
    pub fn new(prime: u64, cap: u32, value: impl Into<BigInt>) -> Result<Self> {
        check_odd_prime(prime)?;
        if cap == 0 {
            return Err(Error::PrecisionExhausted("cap must be at least 1".into()));
        }
        let modulus = prime_power(prime, cap);
        Ok(PadicNumber {
            prime,
            cap,
            residue: reduce_mod(&value.into(), &modulus),
            guaranteed: cap,
        })
    }

    /// Builds a value whose digits are only certified below `guaranteed`.
    pub fn with_precision(prime: u64, cap: u32, value: impl Into<BigInt>, guaranteed: u32) -> Result<Self> {
        let mut x = Self::new(prime, cap, value)?;
        if guaranteed == 0 {
            return Err(Error::PrecisionExhausted("no certified digits".into()));
        }
        x.guaranteed = guaranteed.min(cap);
        Ok(x)
    }

    fn raw(prime: u64, cap: u32, residue: BigUint, guaranteed: u32) -> Self {
        PadicNumber {
            prime,
            cap,
            residue,
            guaranteed,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn guaranteed(&self) -> u32 {
        self.guaranteed
    }

    pub fn modulus(&self) -> BigUint {
        prime_power(self.prime, self.cap)
    }

    /// The same element viewed with a different working exponent. Raising the
    /// cap keeps the residue and does not add certified digits.
    pub fn with_cap(&self, cap: u32) -> Self {
        let residue = &self.residue % prime_power(self.prime, cap);
        Self::raw(self.prime, cap, residue, self.guaranteed.min(cap))
    }

    /// Valuation of the certified part, `guaranteed` if it is zero there.
    pub fn valuation(&self) -> u32 {
        let certified = &self.residue % prime_power(self.prime, self.guaranteed);
        valuation_of(self.prime, &BigInt::from(certified))
            .unwrap_or(self.guaranteed)
            .min(self.guaranteed)
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.prime).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.valuation() >= self.guaranteed
    }

    fn same_ring(&self, other: &Self) -> u32 {
        assert_eq!(self.prime, other.prime, "mixed primes in p-adic arithmetic");
        self.cap.min(other.cap)
    }

    pub fn add(&self, other: &Self) -> Self {
        let cap = self.same_ring(other);
        let m = prime_power(self.prime, cap);
        let residue = (&self.residue + &other.residue) % &m;
        Self::raw(self.prime, cap, residue, self.guaranteed.min(other.guaranteed).min(cap))
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        let residue = if self.residue.is_zero() {
            BigUint::zero()
        } else {
            &m - &self.residue
        };
        Self::raw(self.prime, self.cap, residue, self.guaranteed)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cap = self.same_ring(other);
        let m = prime_power(self.prime, cap);
        let residue = (&self.residue * &other.residue) % &m;
        let g = (self.guaranteed + other.valuation())
            .min(other.guaranteed + self.valuation())
            .min(cap);
        Self::raw(self.prime, cap, residue, g)
    }

    /// Multiplies by `p^k`, gaining `k` certified digits up to the cap.
    pub fn mul_p_pow(&self, k: u32) -> Self {
        let m = self.modulus();
        let residue = (&self.residue * prime_power(self.prime, k)) % &m;
        Self::raw(self.prime, self.cap, residue, (self.guaranteed + k).min(self.cap))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::raw(self.prime, self.cap, BigUint::one(), self.cap);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.prime));
        }
        let m = BigInt::from(self.modulus());
        let inv = mod_inverse(&BigInt::from(self.residue.clone()), &m).ok_or(Error::NotAUnit(self.prime))?;
        Ok(Self::raw(
            self.prime,
            self.cap,
            inv.to_biguint().expect("inverse reduced"),
            self.guaranteed,
        ))
    }

    /// Division in `Z_p`. Dividing by a value of valuation `v` costs exactly `v`
    /// certified digits.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let cap = self.same_ring(other);
        let v = other.valuation();
        if v >= other.guaranteed {
            return Err(Error::PrecisionExhausted("divisor indistinguishable from zero".into()));
        }
        let g_in = self.guaranteed.min(other.guaranteed).min(cap);
        if g_in <= v {
            return Err(Error::PrecisionExhausted(format!(
                "dividing by p^{v} leaves no certified digits"
            )));
        }
        let pv = prime_power(self.prime, v);
        if !(&self.residue % &pv).is_zero() {
            return Err(Error::NotAUnit(self.prime));
        }
        let m = prime_power(self.prime, cap);
        let num = &self.residue / &pv;
        let unit = Self::raw(self.prime, cap, (&other.residue / &pv) % &m, cap);
        let unit_inv = unit.inv()?;
        let residue = (num * &unit_inv.residue) % &m;
        Ok(Self::raw(self.prime, cap, residue, g_in - v))
    }

    /// Divides by an integer, tracking its valuation.
    pub fn div_int(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = PadicNumber::new(self.prime, self.cap, d.clone())?;
        if dd.residue.is_zero() {
            return Err(Error::PrecisionExhausted(format!(
                "divisor {d} vanishes mod p^{}",
                self.cap
            )));
        }
        self.div(&dd)
    }

    /// The representative `m` with `m = residue mod p^guaranteed` and
    /// `|m| <= p^guaranteed / 2`.
    pub fn balanced_lift(&self) -> BigInt {
        let m = prime_power(self.prime, self.guaranteed);
        let r = &self.residue % &m;
        let half = &m >> 1;
        if r > half {
            BigInt::from(r) - BigInt::from(m)
        } else {
            BigInt::from(r)
        }
    }

    /// Residue reduced to the certified digits.
    pub fn certified(&self) -> BigUint {
        &self.residue % prime_power(self.prime, self.guaranteed)
    }

    /// Residue as a `u64` when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.residue.to_u64()
    }
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Teichmüller lift of `a0 mod p` to `Z/p^cap`: the fixed point of `x -> x^p`.
pub fn teichmueller(a0: i64, p: u64, cap: u32) -> Result<PadicNumber> {
    let start = PadicNumber::new(p, cap, BigInt::from(a0).mod_floor(&BigInt::from(p)))?;
    if start.residue.is_zero() {
        return Ok(start);
    }
    let m = start.modulus();
    let pe = BigUint::from(p);
    let mut x = start.residue.clone();
    for _ in 0..=cap {
        let y = x.modpow(&pe, &m);
        if y == x {
            break;
        }
        x = y;
    }
    Ok(PadicNumber::raw(p, cap, x, cap))
}

/// Residue of an integer as a `PadicNumber`, convenience for tests and tables.
pub fn from_i64(p: u64, cap: u32, v: i64) -> Result<PadicNumber> {
    PadicNumber::new(p, cap, BigInt::from(v))
}
