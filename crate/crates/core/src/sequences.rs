//! Classical sequences: Stirling numbers of both kinds, Bernoulli, Euler and
//! tangent numbers, Euler polynomials, and Euler's totient.
//!
//! Stirling triangles and the Bernoulli/Euler tables are memoized in a
//! [`SequenceCache`]. Rows are only ever appended, so a value read once is the
//! value read forever.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{binomial, factorial, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("index {index} has the wrong parity for {what}")]
    IndexParity { what: &'static str, index: usize },
    #[error("totient is undefined at 0")]
    TotientZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangentKind {
    /// `tan t = Σ T_{2n+1} t^{2n+1}/(2n+1)!`
    Plain,
    /// `1 + tanh² t = Σ T̃_{2n} t^{2n}/(2n)!`
    Tilde,
}

/// Grow-only memo tables.
#[derive(Default)]
pub struct SequenceCache {
    stirling1: RwLock<Vec<Vec<BigInt>>>,
    stirling2: RwLock<Vec<Vec<BigInt>>>,
    bernoulli: RwLock<Vec<Rational>>,
    euler: RwLock<Vec<BigInt>>,
}

/// Extends a triangle `rows[n][m]`, `0 <= m <= n`, through row `n`.
fn extend_triangle(
    table: &RwLock<Vec<Vec<BigInt>>>,
    n: usize,
    next_row: impl Fn(&[BigInt], usize) -> Vec<BigInt>,
) {
    if table.read().unwrap().len() > n {
        return;
    }
    let mut rows = table.write().unwrap();
    if rows.is_empty() {
        rows.push(vec![BigInt::one()]);
    }
    while rows.len() <= n {
        let i = rows.len();
        let row = next_row(&rows[i - 1], i);
        rows.push(row);
    }
}

fn triangle_entry(table: &RwLock<Vec<Vec<BigInt>>>, n: usize, m: usize) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    table.read().unwrap()[n][m].clone()
}

impl SequenceCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide cache used by the free functions of this module.
    pub fn global() -> &'static SequenceCache {
        static CACHE: OnceLock<SequenceCache> = OnceLock::new();
        CACHE.get_or_init(SequenceCache::new)
    }

    /// `S(n, m)`, via `S(n,m) = S(n-1,m-1) + m S(n-1,m)`.
    pub fn stirling2(&self, n: usize, m: usize) -> BigInt {
        extend_triangle(&self.stirling2, n, |prev, i| {
            (0..=i)
                .map(|m| {
                    let left = if m >= 1 { prev[m - 1].clone() } else { BigInt::zero() };
                    let up = prev.get(m).cloned().unwrap_or_default();
                    left + BigInt::from(m) * up
                })
                .collect()
        });
        triangle_entry(&self.stirling2, n, m)
    }

    /// Unsigned `s(n, m)`: coefficients of `x(x+1)...(x+n-1)`, via
    /// `s(n,m) = s(n-1,m-1) + (n-1) s(n-1,m)`.
    pub fn stirling1(&self, n: usize, m: usize) -> BigInt {
        extend_triangle(&self.stirling1, n, |prev, i| {
            (0..=i)
                .map(|m| {
                    let left = if m >= 1 { prev[m - 1].clone() } else { BigInt::zero() };
                    let up = prev.get(m).cloned().unwrap_or_default();
                    left + BigInt::from(i - 1) * up
                })
                .collect()
        });
        triangle_entry(&self.stirling1, n, m)
    }

    /// `B_n` with `B_1 = -1/2`, via `Σ_{j=0}^{n} C(n+1, j) B_j = 0`.
    pub fn bernoulli(&self, n: usize) -> Rational {
        if let Some(b) = self.bernoulli.read().unwrap().get(n) {
            return b.clone();
        }
        let mut table = self.bernoulli.write().unwrap();
        while table.len() <= n {
            let m = table.len();
            let value = if m == 0 {
                Rational::one()
            } else {
                let acc: Rational = table
                    .iter()
                    .enumerate()
                    .map(|(j, b)| b * int(binomial(m + 1, j)))
                    .sum();
                -acc / int(m as u64 + 1)
            };
            table.push(value);
        }
        table[n].clone()
    }

    /// `E_n` from `1/cosh t`, via `Σ_i C(n, 2i) E_{n-2i} = 0` for `n > 0`.
    pub fn euler_number(&self, n: usize) -> BigInt {
        if let Some(e) = self.euler.read().unwrap().get(n) {
            return e.clone();
        }
        let mut table = self.euler.write().unwrap();
        while table.len() <= n {
            let m = table.len();
            let value = if m == 0 {
                BigInt::one()
            } else if m % 2 == 1 {
                BigInt::zero()
            } else {
                -(1..=m / 2)
                    .map(|i| binomial(m, 2 * i) * &table[m - 2 * i])
                    .sum::<BigInt>()
            };
            table.push(value);
        }
        table[n].clone()
    }
}

pub fn stirling2(n: usize, m: usize) -> BigInt {
    SequenceCache::global().stirling2(n, m)
}

pub fn stirling1(n: usize, m: usize) -> BigInt {
    SequenceCache::global().stirling1(n, m)
}

pub fn bernoulli(n: usize) -> Rational {
    SequenceCache::global().bernoulli(n)
}

pub fn euler_number(n: usize) -> BigInt {
    SequenceCache::global().euler_number(n)
}

/// Values `E_m(0)` of the Euler polynomials, from `(e^t + 1) g(t) = 2`.
fn euler_polynomial_at_zero(m: usize) -> Vec<Rational> {
    let mut g: Vec<Rational> = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let rhs = if k == 0 { int(2) } else { Rational::zero() };
        let acc: Rational = (0..k).map(|j| &g[j] * int(binomial(k, j))).sum();
        g.push((rhs - acc) / int(2));
    }
    g
}

/// `E_m(x)` from `2 e^{xt} / (e^t + 1)`.
pub fn euler_polynomial(m: usize, x: &Rational) -> Rational {
    let at_zero = euler_polynomial_at_zero(m);
    (0..=m)
        .map(|k| &at_zero[k] * int(binomial(m, k)) * num_traits::pow(x.clone(), m - k))
        .sum()
}

/// `T_{2n+1}` for odd `index = 2n+1`, or `T̃_{2n}` for even `index = 2n`.
///
/// `T_{2n+1}` comes from the Stirling expansion of `tanh`,
/// `(-1)^n T_{2n+1} = Σ_j (-1)^j 2^{2n-j} (j+1)! S(2n+1, j+1)`.
pub fn tangent(kind: TangentKind, index: usize) -> Result<BigInt, SequenceError> {
    match kind {
        TangentKind::Plain => {
            if index % 2 == 0 {
                return Err(SequenceError::IndexParity { what: "T", index });
            }
            let n = index / 2;
            let signed: BigInt = (0..=2 * n)
                .map(|j| {
                    let term = (BigInt::one() << (2 * n - j)) * factorial(j + 1) * stirling2(2 * n + 1, j + 1);
                    if j % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum();
            Ok(if n % 2 == 0 { signed } else { -signed })
        }
        TangentKind::Tilde => {
            if index % 2 == 1 {
                return Err(SequenceError::IndexParity { what: "tilde T", index });
            }
            let n = index / 2;
            if n == 0 {
                return Ok(BigInt::one());
            }
            let t = tangent(TangentKind::Plain, 2 * n + 1)?;
            Ok(if (n - 1) % 2 == 0 { t } else { -t })
        }
    }
}

/// Euler's totient by trial division.
pub fn totient(m: u64) -> Result<u64, SequenceError> {
    if m == 0 {
        return Err(SequenceError::TotientZero);
    }
    let mut result = m;
    let mut rest = m;
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            while rest % d == 0 {
                rest /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    Ok(result)
}
