//! Poly-Bernoulli numbers `B_n^{(k)}`, `C_n^{(k)}`, polycosecant numbers
//! `D_n^{(k)}`, polycotangent numbers `β_n^{(k)}` and the level-one variant
//! `D̃_m^{(-k)}`.
//!
//! Every family has at least one closed form and a series route. The series
//! route expands the defining generating function with exact rationals and is
//! kept independent of the closed forms so the two can check each other.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{binomial, factorial, int, pow_signed, sign_pow, Rational};
use crate::sequences::{euler_number, stirling2};
use crate::series::{make_elementary, polylog_apply, BiSeries, Elementary, PolylogLevel, Series, SeriesError};

/// Default truncation order of the series oracle.
pub const DEFAULT_TRUNCATION: usize = 24;

/// Truncation order of the series oracle, `POLYSEQ_TRUNCATION` or 24.
pub fn oracle_truncation() -> usize {
    static ORDER: OnceLock<usize> = OnceLock::new();
    *ORDER.get_or_init(|| {
        std::env::var("POLYSEQ_TRUNCATION")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_TRUNCATION)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("method {method} does not apply to n={n}, k={k}")]
    MethodDomain { method: &'static str, n: usize, k: i64 },
    #[error("index {0} must be even")]
    IndexParity(usize),
    #[error("weight {0} must be non-positive for this family")]
    WeightDomain(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, FamilyError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `B_n^{(k)}`
    PolyB,
    /// `C_n^{(k)}`
    PolyC,
    /// `D_n^{(k)}`
    Cosecant,
    /// `β_n^{(k)}`
    Cotangent,
    /// `D̃_n^{(k)}`, `k <= 0`
    TildeD,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::PolyB, Family::PolyC, Family::Cosecant, Family::Cotangent, Family::TildeD];

    pub fn id(self) -> &'static str {
        match self {
            Family::PolyB => "polyb-b",
            Family::PolyC => "polyb-c",
            Family::Cosecant => "cosecant",
            Family::Cotangent => "cotangent",
            Family::TildeD => "tilde-d",
        }
    }

    /// Values with odd order vanish identically.
    pub fn is_even(self) -> bool {
        matches!(self, Family::Cosecant | Family::Cotangent)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "polyb-b" | "b" | "polyb" => Ok(Family::PolyB),
            "polyb-c" | "c" => Ok(Family::PolyC),
            "cosecant" | "d" => Ok(Family::Cosecant),
            "cotangent" | "beta" => Ok(Family::Cotangent),
            "tilde-d" | "tilded" => Ok(Family::TildeD),
            other => Err(format!("unknown family '{other}'")),
        }
    }
}

/// Addresses one number of one family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyIndex {
    pub family: Family,
    pub n: usize,
    pub k: i64,
}

impl FamilyIndex {
    pub fn new(family: Family, n: usize, k: i64) -> Self {
        FamilyIndex { family, n, k }
    }

    /// Value by the canonical method for this family and weight.
    pub fn value(&self) -> Result<Rational> {
        let FamilyIndex { family, n, k } = *self;
        match family {
            Family::PolyB => Ok(poly_bernoulli(PolyBernoulliVariant::B, n, k)),
            Family::PolyC => Ok(poly_bernoulli(PolyBernoulliVariant::C, n, k)),
            Family::Cosecant => Ok(cosecant(n, k)),
            Family::Cotangent => Ok(cotangent(n, k)),
            Family::TildeD => {
                let weight = u32::try_from(-k).map_err(|_| FamilyError::WeightDomain(k))?;
                tilde_cosecant(n, weight)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyBernoulliVariant {
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyBernoulliMethod {
    /// `Σ_m (-1)^{m+n} m! S(n,m) / (m+1)^k` and its `C` analogue.
    Explicit,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosecantMethod {
    /// Double Stirling sum valid for every integer weight.
    Explicit,
    /// Product-of-Stirling formula for `D_{2n}^{(-k)}`, `k >= 1`.
    StirlingNegK,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CotangentMethod {
    /// Double Stirling sum valid for every integer weight.
    Explicit,
    /// Four-sum Stirling formula for `β_{2n}^{(-k)}`, `k >= 1`.
    StirlingNegK,
    /// `β_{2n} = Σ_i C(2n, 2i) D_{2i}`.
    FromCosecant,
    Series,
}

// ---------------------------------------------------------------------------
// Series oracle

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Generating {
    PolyB,
    PolyC,
    Cosecant,
    Cotangent,
    TildeD,
}

type GfCache = Mutex<HashMap<(Generating, i64, usize), Arc<Series>>>;

fn gf_cache() -> &'static GfCache {
    static CACHE: OnceLock<GfCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn one_minus_exp_neg(order: usize) -> Series {
    Series::one(order).sub(&make_elementary(&Elementary::ExpScaled(int(-1)), order))
}

fn build_generating(kind: Generating, k: i64, order: usize) -> Result<Series> {
    // every quotient below divides by a series of valuation 1
    let inner_order = order + 1;
    let series = match kind {
        Generating::PolyB | Generating::PolyC => {
            let x = one_minus_exp_neg(inner_order);
            let li = polylog_apply(PolylogLevel::One, k, &x)?;
            let den = match kind {
                Generating::PolyB => x,
                _ => make_elementary(&Elementary::ExpScaled(int(1)), inner_order)
                    .sub(&Series::one(inner_order)),
            };
            li.div(&den)?
        }
        Generating::Cosecant | Generating::Cotangent => {
            let th = make_elementary(&Elementary::TanhHalf, inner_order);
            let a = polylog_apply(PolylogLevel::Two, k, &th)?;
            let sinh = make_elementary(&Elementary::Sinh, inner_order);
            match kind {
                Generating::Cosecant => a.div(&sinh)?,
                _ => a.mul(&make_elementary(&Elementary::Cosh, inner_order)).div(&sinh)?,
            }
        }
        Generating::TildeD => {
            let th = make_elementary(&Elementary::TanhHalf, inner_order);
            let li = polylog_apply(PolylogLevel::One, k, &th)?;
            li.div(&make_elementary(&Elementary::Sinh, inner_order))?
        }
    };
    Ok(series)
}

/// Expansion of a defining generating function through at least order `n`.
fn generating_series(kind: Generating, k: i64, n: usize) -> Result<Arc<Series>> {
    let order = oracle_truncation().max(n);
    let key = (kind, k, order);
    if let Some(s) = gf_cache().lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let series = Arc::new(build_generating(kind, k, order)?);
    gf_cache().lock().unwrap().insert(key, series.clone());
    Ok(series)
}

fn series_value(kind: Generating, n: usize, k: i64) -> Result<Rational> {
    Ok(generating_series(kind, k, n)?.egf_coefficient(n)?)
}

// ---------------------------------------------------------------------------
// Poly-Bernoulli numbers

/// `B_n^{(k)}` or `C_n^{(k)}` by the explicit Stirling formula.
pub fn poly_bernoulli(variant: PolyBernoulliVariant, n: usize, k: i64) -> Rational {
    poly_bernoulli_with(variant, n, k, PolyBernoulliMethod::Explicit)
        .expect("explicit formula is total")
}

pub fn poly_bernoulli_with(
    variant: PolyBernoulliVariant,
    n: usize,
    k: i64,
    method: PolyBernoulliMethod,
) -> Result<Rational> {
    match method {
        PolyBernoulliMethod::Explicit => Ok((0..=n)
            .map(|m| {
                let stirling = match variant {
                    PolyBernoulliVariant::B => stirling2(n, m),
                    PolyBernoulliVariant::C => stirling2(n + 1, m + 1),
                };
                sign_pow((m + n) as i64)
                    * int(factorial(m) * stirling)
                    * pow_signed(&int(m as u64 + 1), -k)
            })
            .sum()),
        PolyBernoulliMethod::Series => {
            let kind = match variant {
                PolyBernoulliVariant::B => Generating::PolyB,
                PolyBernoulliVariant::C => Generating::PolyC,
            };
            series_value(kind, n, k)
        }
    }
}

/// `B_n^{(k)}(x)` from `e^{-xt} Li_k(1-e^{-t}) / (1-e^{-t})`.
pub fn poly_bernoulli_polynomial(n: usize, k: i64, x: &Rational) -> Result<Rational> {
    let base = generating_series(Generating::PolyB, k, n)?;
    let shift = make_elementary(&Elementary::ExpScaled(-x.clone()), base.truncation_order());
    Ok(base.mul(&shift).egf_coefficient(n)?)
}

// ---------------------------------------------------------------------------
// Polycosecant numbers

fn cosecant_explicit(n: usize, k: i64) -> Rational {
    let mut total = Rational::zero();
    for i in 0..=n / 2 {
        let mut inner = BigInt::zero();
        let mut denom_pow = 0usize;
        // Σ_j (-1)^{j+1} j!/2^{j-1} C(j-1,2i) S(n+1,j), over the common denominator 2^n
        for j in (2 * i + 1)..=(n + 1) {
            let term = factorial(j) * binomial(j - 1, 2 * i) * stirling2(n + 1, j) << (n + 1 - j);
            if j % 2 == 1 {
                inner += term;
            } else {
                inner -= term;
            }
            denom_pow = n;
        }
        if inner.is_zero() {
            continue;
        }
        let inner = Rational::new(inner, BigInt::one() << denom_pow);
        total += inner * pow_signed(&int(2 * i as u64 + 1), -(k + 1));
    }
    total
}

fn cosecant_stirling_negk(n: usize, neg_k: usize) -> Rational {
    let half = n / 2;
    let upper = (2 * half + 1).min(neg_k);
    (1..=upper)
        .map(|i| {
            Rational::new(
                factorial(i) * factorial(i - 1) * stirling2(neg_k, i) * stirling2(2 * half + 1, i),
                BigInt::one() << (i - 1),
            )
        })
        .sum()
}

/// `D_n^{(k)}` by the requested method. Odd `n` gives 0 except for
/// [`CosecantMethod::StirlingNegK`], which only addresses even orders.
pub fn polycosecant(n: usize, k: i64, method: CosecantMethod) -> Result<Rational> {
    match method {
        CosecantMethod::Explicit => Ok(cosecant_explicit(n, k)),
        CosecantMethod::StirlingNegK => {
            if k >= 0 || n % 2 == 1 {
                return Err(FamilyError::MethodDomain { method: "stirling_negk", n, k });
            }
            Ok(cosecant_stirling_negk(n, k.unsigned_abs() as usize))
        }
        CosecantMethod::Series => series_value(Generating::Cosecant, n, k),
    }
}

/// `D_n^{(k)}`: the Stirling form for negative weights, the explicit sum otherwise.
pub fn cosecant(n: usize, k: i64) -> Rational {
    if n % 2 == 1 {
        return Rational::zero();
    }
    let method = if k < 0 { CosecantMethod::StirlingNegK } else { CosecantMethod::Explicit };
    polycosecant(n, k, method).expect("canonical method is in domain")
}

/// Right-hand side of `D_n^{(k-1)} = Σ_m C(n+1, 2m+1) D_{n-2m}^{(k)}`.
pub fn k_shift_recurrence(n: usize, k: i64) -> Rational {
    (0..=n / 2)
        .map(|m| int(binomial(n + 1, 2 * m + 1)) * cosecant(n - 2 * m, k))
        .sum()
}

/// `D_n^{(k)} = Σ_i C(n, 2i) E_{n-2i} β_{2i}^{(k)}` for even `n`.
pub fn cosecant_from_cotangent(n: usize, k: i64) -> Result<Rational> {
    if n % 2 == 1 {
        return Err(FamilyError::IndexParity(n));
    }
    Ok((0..=n / 2)
        .map(|i| int(binomial(n, 2 * i) * euler_number(n - 2 * i)) * cotangent(2 * i, k))
        .sum())
}

// ---------------------------------------------------------------------------
// Polycotangent numbers

fn cotangent_explicit(n: usize, k: i64) -> Rational {
    let mut total = Rational::zero();
    for j in 0..=n {
        let bracket = BigInt::from((j + 1) * (j + 2) / 2) * stirling2(n, j + 2) + stirling2(n + 1, j + 1);
        if bracket.is_zero() {
            continue;
        }
        let outer = Rational::new(factorial(j) * bracket, BigInt::one() << j) * sign_pow(j as i64);
        let inner: Rational = (0..=j / 2)
            .map(|i| int(binomial(j + 1, 2 * i + 1)) * pow_signed(&int(2 * i as u64 + 1), -k))
            .sum();
        total += outer * inner;
    }
    total
}

fn cotangent_stirling_negk(n: usize, neg_k: usize) -> Rational {
    let s2 = |a: usize, b: usize| stirling2(a, b);
    let term = |num: BigInt, j: usize| Rational::new(num, BigInt::one() << (j + 1));
    let mut total = Rational::zero();
    let top_a = n.min(neg_k - 1);
    let top_b = if n == 0 { None } else { Some((n - 1).min(neg_k - 1)) };
    for j in 0..=top_a {
        total += term(factorial(j) * factorial(j + 1) * s2(n, j) * s2(neg_k, j + 1), j);
        total += term(factorial(j) * factorial(j + 1) * s2(n + 1, j + 1) * s2(neg_k, j + 1), j);
    }
    if let Some(top_b) = top_b {
        for j in 0..=top_b {
            let f1 = factorial(j + 1);
            total += term(&f1 * &f1 * s2(n, j + 1) * s2(neg_k, j + 1), j);
            total += term(f1 * factorial(j + 2) * s2(n, j + 2) * s2(neg_k, j + 1), j);
        }
    }
    total
}

/// `β_n^{(k)}` by the requested method. Odd `n` gives 0 except for
/// [`CotangentMethod::StirlingNegK`], which only addresses even orders.
pub fn polycotangent(n: usize, k: i64, method: CotangentMethod) -> Result<Rational> {
    match method {
        CotangentMethod::StirlingNegK => {
            if k >= 0 || n % 2 == 1 {
                return Err(FamilyError::MethodDomain { method: "stirling_negk", n, k });
            }
            Ok(cotangent_stirling_negk(n, k.unsigned_abs() as usize))
        }
        CotangentMethod::Series => series_value(Generating::Cotangent, n, k),
        _ if n % 2 == 1 => Ok(Rational::zero()),
        CotangentMethod::Explicit => Ok(cotangent_explicit(n, k)),
        CotangentMethod::FromCosecant => Ok((0..=n / 2)
            .map(|i| int(binomial(n, 2 * i)) * cosecant(2 * i, k))
            .sum()),
    }
}

/// `β_n^{(k)}`: the Stirling formula for negative weights, the explicit sum otherwise.
pub fn cotangent(n: usize, k: i64) -> Rational {
    if n % 2 == 1 {
        return Rational::zero();
    }
    let method = if k < 0 { CotangentMethod::StirlingNegK } else { CotangentMethod::Explicit };
    polycotangent(n, k, method).expect("canonical method is in domain")
}

// ---------------------------------------------------------------------------
// Level-one variant

/// `D̃_m^{(-k)}` from `Li_{-k}(tanh(t/2)) / sinh t`.
pub fn tilde_cosecant(m: usize, k: u32) -> Result<Rational> {
    series_value(Generating::TildeD, m, -i64::from(k))
}

// ---------------------------------------------------------------------------
// Method enumeration

/// Values of `family` at `(n, k)` by every applicable method, series last.
pub fn method_values(family: Family, n: usize, k: i64) -> Vec<(&'static str, Result<Rational>)> {
    let mut out: Vec<(&'static str, Result<Rational>)> = Vec::new();
    match family {
        Family::PolyB | Family::PolyC => {
            let variant = if family == Family::PolyB { PolyBernoulliVariant::B } else { PolyBernoulliVariant::C };
            out.push(("explicit", poly_bernoulli_with(variant, n, k, PolyBernoulliMethod::Explicit)));
            out.push(("series", poly_bernoulli_with(variant, n, k, PolyBernoulliMethod::Series)));
        }
        Family::Cosecant => {
            out.push(("explicit", polycosecant(n, k, CosecantMethod::Explicit)));
            if k < 0 && n % 2 == 0 {
                out.push(("stirling_negk", polycosecant(n, k, CosecantMethod::StirlingNegK)));
            }
            if n % 2 == 0 {
                out.push(("from_cotangent", cosecant_from_cotangent(n, k)));
            }
            out.push(("k_shift", Ok(k_shift_recurrence(n, k + 1))));
            out.push(("series", polycosecant(n, k, CosecantMethod::Series)));
        }
        Family::Cotangent => {
            out.push(("explicit", polycotangent(n, k, CotangentMethod::Explicit)));
            if k < 0 && n % 2 == 0 {
                out.push(("stirling_negk", polycotangent(n, k, CotangentMethod::StirlingNegK)));
            }
            out.push(("from_cosecant", polycotangent(n, k, CotangentMethod::FromCosecant)));
            out.push(("series", polycotangent(n, k, CotangentMethod::Series)));
        }
        Family::TildeD => {
            let value = u32::try_from(-k)
                .map_err(|_| FamilyError::WeightDomain(k))
                .and_then(|w| tilde_cosecant(n, w));
            out.push(("series", value));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Bivariate generating function

/// `f(t, y) = Σ D_n^{(-k)} t^n/n! y^k/k!`, built from
/// `1 + e^t(e^y-1)/(1+e^t+e^y-e^{t+y}) + e^{-t}(e^y-1)/(1+e^{-t}+e^y-e^{-t+y})`.
pub fn cosecant_bivariate(order_t: usize, order_y: usize) -> BiSeries {
    let one = BiSeries::constant(Rational::one(), order_t, order_y);
    let ey_minus_one = BiSeries::exp(0, 1, order_t, order_y).sub(&one);
    let half = |sign: i64| {
        let et = BiSeries::exp(sign, 0, order_t, order_y);
        let den = one
            .add(&et)
            .add(&BiSeries::exp(0, 1, order_t, order_y))
            .sub(&BiSeries::exp(sign, 1, order_t, order_y));
        et.mul(&ey_minus_one).div(&den).expect("constant term 2")
    };
    one.add(&half(1)).add(&half(-1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::sequences::stirling1;

    #[test]
    fn golden_cosecant_row() {
        let expected = [(2, rat(176, 225)), (1, rat(7, 15)), (0, int(0)), (-1, int(1)), (-2, int(16)), (-3, int(121))];
        for (k, v) in expected {
            assert_eq!(polycosecant(4, k, CosecantMethod::Explicit).unwrap(), v, "explicit k={k}");
            assert_eq!(polycosecant(4, k, CosecantMethod::Series).unwrap(), v, "series k={k}");
            if k < 0 {
                assert_eq!(polycosecant(4, k, CosecantMethod::StirlingNegK).unwrap(), v, "stirling_negk k={k}");
            }
        }
    }

    #[test]
    fn golden_cotangent_row() {
        let expected = [(2, rat(-199, 225)), (1, rat(-8, 15)), (0, int(1)), (-1, int(8)), (-2, int(41)), (-3, int(200))];
        for (k, v) in expected {
            assert_eq!(polycotangent(4, k, CotangentMethod::Explicit).unwrap(), v);
            assert_eq!(polycotangent(4, k, CotangentMethod::FromCosecant).unwrap(), v);
            assert_eq!(polycotangent(4, k, CotangentMethod::Series).unwrap(), v);
            if k < 0 {
                assert_eq!(polycotangent(4, k, CotangentMethod::StirlingNegK).unwrap(), v);
            }
        }
    }

    #[test]
    fn order_zero_is_one() {
        for k in -6..=6 {
            assert_eq!(cosecant(0, k), int(1), "D_0^({k})");
            assert_eq!(polycosecant(0, k, CosecantMethod::Series).unwrap(), int(1));
            assert_eq!(cotangent(0, k), int(1), "β_0^({k})");
        }
    }

    #[test]
    fn weight_minus_two_is_power_of_four() {
        for n in 0..=6usize {
            assert_eq!(cosecant(2 * n, -2), int(BigInt::one() << (2 * n)));
        }
    }

    #[test]
    fn odd_orders_vanish() {
        for n in [1usize, 3, 5, 7] {
            for k in -4..=3 {
                assert!(polycosecant(n, k, CosecantMethod::Explicit).unwrap().is_zero());
                assert!(polycosecant(n, k, CosecantMethod::Series).unwrap().is_zero());
                assert!(polycotangent(n, k, CotangentMethod::Series).unwrap().is_zero());
                assert!(cotangent(n, k).is_zero());
            }
        }
    }

    #[test]
    fn method_domains() {
        assert_eq!(
            polycosecant(4, 1, CosecantMethod::StirlingNegK),
            Err(FamilyError::MethodDomain { method: "stirling_negk", n: 4, k: 1 })
        );
        assert!(polycosecant(3, -2, CosecantMethod::StirlingNegK).is_err());
        // the product formula has no term for D_0^{(0)} = 1
        assert!(polycosecant(0, 0, CosecantMethod::StirlingNegK).is_err());
        assert!(polycotangent(4, 0, CotangentMethod::StirlingNegK).is_err());
        assert!(polycotangent(5, -1, CotangentMethod::StirlingNegK).is_err());
        assert_eq!(cosecant_from_cotangent(3, 1), Err(FamilyError::IndexParity(3)));
        assert_eq!(FamilyIndex::new(Family::TildeD, 2, 1).value(), Err(FamilyError::WeightDomain(1)));
    }

    #[test]
    fn cosecant_from_cotangent_examples() {
        assert_eq!(cosecant_from_cotangent(4, -3).unwrap(), int(121));
        assert_eq!(cosecant_from_cotangent(6, -3).unwrap(), int(1093));
        for k in -4..=4 {
            assert_eq!(cosecant_from_cotangent(0, k).unwrap(), int(1));
        }
    }

    #[test]
    fn k_shift_examples() {
        assert_eq!(k_shift_recurrence(4, 0), int(1));
        assert_eq!(k_shift_recurrence(6, -2), int(1093));
        for k in -3..=3 {
            assert_eq!(k_shift_recurrence(0, k), int(1));
        }
        for n in 0..=10 {
            for k in -5..=4 {
                assert_eq!(k_shift_recurrence(n, k), polycosecant(n, k - 1, CosecantMethod::Explicit).unwrap());
            }
        }
    }

    #[test]
    fn poly_bernoulli_basics() {
        for n in 0..=10 {
            assert_eq!(poly_bernoulli(PolyBernoulliVariant::B, n, 0), int(1));
            let c1 = poly_bernoulli(PolyBernoulliVariant::C, n, 1);
            assert_eq!(c1, crate::sequences::bernoulli(n));
            assert_eq!(c1, sign_pow(n as i64) * poly_bernoulli(PolyBernoulliVariant::B, n, 1));
        }
        assert_eq!(poly_bernoulli(PolyBernoulliVariant::C, 2, 1), rat(1, 6));
        assert_eq!(
            poly_bernoulli(PolyBernoulliVariant::B, 3, -2),
            poly_bernoulli(PolyBernoulliVariant::B, 2, -3)
        );
    }

    #[test]
    fn poly_bernoulli_explicit_matches_series() {
        for variant in [PolyBernoulliVariant::B, PolyBernoulliVariant::C] {
            for n in 0..=12 {
                for k in -6..=4 {
                    assert_eq!(
                        poly_bernoulli_with(variant, n, k, PolyBernoulliMethod::Explicit).unwrap(),
                        poly_bernoulli_with(variant, n, k, PolyBernoulliMethod::Series).unwrap(),
                        "{variant:?} n={n} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn poly_bernoulli_polynomial_values() {
        for n in 0..=8 {
            for k in -4..=4 {
                assert_eq!(
                    poly_bernoulli_polynomial(n, k, &int(0)).unwrap(),
                    poly_bernoulli(PolyBernoulliVariant::B, n, k)
                );
                // binomial expansion in x as an independent check
                let x = rat(3, 2);
                let expanded: Rational = (0..=n)
                    .map(|i| int(binomial(n, i)) * num_traits::pow(-x.clone(), n - i) * poly_bernoulli(PolyBernoulliVariant::B, i, k))
                    .sum();
                assert_eq!(poly_bernoulli_polynomial(n, k, &x).unwrap(), expanded);
            }
        }
        for k in -3..=3 {
            assert_eq!(poly_bernoulli_polynomial(0, k, &rat(7, 3)).unwrap(), int(1));
        }
        // at x = 1 the polynomial is C with the same weight
        for n in 0..=6 {
            for k in -4..=2 {
                assert_eq!(
                    poly_bernoulli_polynomial(n, k, &int(1)).unwrap(),
                    poly_bernoulli(PolyBernoulliVariant::C, n, k)
                );
            }
        }
        assert_eq!(poly_bernoulli_polynomial(2, -1, &int(1)).unwrap(), int(1));
    }

    #[test]
    fn special_weight_one_values() {
        for n in 0..=8usize {
            let b = crate::sequences::bernoulli(2 * n);
            let four_n = int(BigInt::one() << (2 * n));
            assert_eq!(cosecant(2 * n, 1), (int(2) - &four_n) * &b);
            assert_eq!(cotangent(2 * n, 1), four_n * b);
        }
    }

    #[test]
    fn tilde_values() {
        assert_eq!(tilde_cosecant(0, 0).unwrap(), rat(1, 2));
        // A_{-k}(z) = Li_{-k}(z) - Li_{-k}(-z), so D_{2m} = 2 D̃_{2m}
        for k in 0..=4u32 {
            for m in 0..=6usize {
                let d = cosecant(m, -i64::from(k));
                let t = tilde_cosecant(m, k).unwrap();
                if m % 2 == 0 {
                    assert_eq!(d, t * int(2), "m={m} k={k}");
                } else {
                    assert!(d.is_zero());
                }
            }
        }
    }

    #[test]
    fn stirling_second_kind_generating_function() {
        let order = 10;
        let e1 = make_elementary(&Elementary::ExpScaled(int(1)), order).sub(&Series::one(order));
        for m in 0..=order {
            let s = e1.pow(m).scale(&int(factorial(m)).recip());
            for n in m..=order {
                assert_eq!(s.egf_coefficient(n).unwrap(), int(stirling2(n, m)), "S({n},{m})");
            }
        }
    }

    #[test]
    fn tanh_half_powers() {
        let order = 10;
        let th = make_elementary(&Elementary::TanhHalf, order);
        for m in 1..=order {
            let p = th.pow(m);
            for n in m..=order {
                let mut acc = Rational::zero();
                for j in m..=n {
                    acc += sign_pow(j as i64)
                        * Rational::new(factorial(j), BigInt::one() << j)
                        * int(binomial(j - 1, m - 1) * stirling2(n, j));
                }
                acc *= sign_pow(m as i64);
                assert_eq!(p.egf_coefficient(n).unwrap(), acc, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn generating_functions_are_even() {
        for k in -4..=4 {
            for n in (1..=12).step_by(2) {
                assert!(polycosecant(n, k, CosecantMethod::Series).unwrap().is_zero());
                assert!(polycotangent(n, k, CotangentMethod::Series).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn bivariate_reproduces_negative_weights() {
        let f = cosecant_bivariate(8, 8);
        assert_eq!(f.egf_coefficient(4, 3).unwrap(), int(121));
        for n in 0..=8 {
            for k in 0..=8 {
                assert_eq!(f.egf_coefficient(n, k).unwrap(), cosecant(n, -(k as i64)), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn stirling_first_kind_vanishing_example() {
        let terms: Vec<Rational> = (0..=5usize)
            .map(|j| sign_pow(j as i64) * int(stirling1(6, j + 1)) * cosecant(4, 2 - j as i64))
            .collect();
        assert_eq!(terms, vec![rat(1408, 15), rat(-1918, 15), int(0), int(-85), int(240), int(-121)]);
        let terms: Vec<Rational> = (0..=5usize)
            .map(|j| sign_pow(j as i64) * int(stirling1(6, j + 1)) * cotangent(4, 2 - j as i64))
            .collect();
        assert_eq!(terms, vec![rat(-1592, 15), rat(2192, 15), int(225), int(-680), int(615), int(-200)]);
    }
}
