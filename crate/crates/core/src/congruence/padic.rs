use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::families::{cosecant, cotangent};
use crate::rational::Rational;
use crate::sequences::bernoulli;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("the p-adic order of zero is undefined")]
    ZeroValuation,
    #[error("{value} is not p-integral for p = {p}")]
    NotPIntegral { value: String, p: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
}

/// A class `value mod modulus` with `0 <= value < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    pub value: BigInt,
    pub modulus: BigInt,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Primes up to `bound` by trial division.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&q| is_prime(q)).collect()
}

fn int_ord(mut x: BigInt, p: &BigInt) -> i64 {
    let mut e = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        x = q;
        e += 1;
    }
}

/// `ord_p(q) = ord_p(num) - ord_p(den)`.
pub fn ord_p(q: &Rational, p: u64) -> Result<i64, PadicError> {
    if q.is_zero() {
        return Err(PadicError::ZeroValuation);
    }
    let pb = BigInt::from(p);
    Ok(int_ord(q.numer().abs(), &pb) - int_ord(q.denom().clone(), &pb))
}

/// `a b^{-1} mod p^exp` for `a/b` in `Z_(p)`.
pub fn reduce_mod(q: &Rational, p: u64, exp: u32) -> Result<Residue, PadicError> {
    let modulus = num_traits::pow(BigInt::from(p), exp as usize);
    if q.is_zero() {
        return Ok(Residue { value: BigInt::zero(), modulus });
    }
    if ord_p(q, p)? < 0 {
        return Err(PadicError::NotPIntegral { value: crate::rational::format_rational(q), p });
    }
    if modulus.is_one() {
        return Ok(Residue { value: BigInt::zero(), modulus });
    }
    let den = q.denom().mod_floor(&modulus);
    let inv = den.modinv(&modulus).expect("denominator is prime to p");
    let value = (q.numer() * inv).mod_floor(&modulus);
    Ok(Residue { value, modulus })
}

/// `2n mod (p-1)`.
pub fn alpha(p: u64, two_n: u64) -> u64 {
    two_n % (p - 1)
}

/// `min(2n, 2p-3)`.
pub fn gamma(p: u64, two_n: u64) -> u64 {
    two_n.min(2 * p - 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CvsBranch {
    /// `(p-1) | 2n`
    Divisible,
    /// `(p-1) ∤ 2n`
    NotDivisible,
}

/// Denominators of `B_{2n}`, `D_{2n}^{(1)}`, `β_{2n}^{(1)}` and their `p`-adic orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    pub p: u64,
    /// Half index; the order is `2n`.
    pub n: u64,
    pub two_n: u64,
    pub b: String,
    pub d: String,
    pub beta_hat: String,
    pub ord_b: i64,
    pub ord_d: i64,
    pub ord_beta_hat: i64,
    pub alpha: u64,
    pub gamma: u64,
    pub branch: CvsBranch,
}

pub fn valuation(p: u64, n: u64) -> Result<ValuationReport, PadicError> {
    if !is_prime(p) || p == 2 {
        return Err(PadicError::NotPrime(p));
    }
    let two_n = 2 * n;
    let idx = two_n as usize;
    let b = bernoulli(idx).denom().clone();
    let d = cosecant(idx, 1).denom().clone();
    let beta_hat = cotangent(idx, 1).denom().clone();
    let pb = BigInt::from(p);
    Ok(ValuationReport {
        p,
        n,
        two_n,
        ord_b: int_ord(b.clone(), &pb),
        ord_d: int_ord(d.clone(), &pb),
        ord_beta_hat: int_ord(beta_hat.clone(), &pb),
        b: b.to_string(),
        d: d.to_string(),
        beta_hat: beta_hat.to_string(),
        alpha: alpha(p, two_n),
        gamma: gamma(p, two_n),
        branch: if two_n % (p - 1) == 0 { CvsBranch::Divisible } else { CvsBranch::NotDivisible },
    })
}
