//! Exact scalar arithmetic shared by every module.
//!
//! [`Rational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator after each operation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

/// Builds `num / den` in canonical form. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Lifts an integer into [`Rational`].
pub fn int<T: Into<BigInt>>(value: T) -> Rational {
    Rational::from_integer(value.into())
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `base^exp` for a signed exponent. Panics on `0^negative`.
pub fn pow_signed(base: &Rational, exp: i64) -> Rational {
    let magnitude = u32::try_from(exp.unsigned_abs()).expect("exponent out of range");
    let positive = num_traits::pow(base.clone(), magnitude as usize);
    if exp >= 0 {
        positive
    } else {
        positive.recip()
    }
}

/// `(-1)^exp` as a rational sign.
pub fn sign_pow(exp: i64) -> Rational {
    if exp.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Renders a value as `a/b` in lowest terms, or `a` when the denominator is 1.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `a`, `-a`, `a/b` or `-a/b`. The result is normalized.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// True if `value` is a nonnegative integer.
pub fn is_nonnegative_integer(value: &Rational) -> bool {
    value.is_integer() && !value.is_negative()
}
