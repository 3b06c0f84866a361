//! Truncated formal power series over [`Rational`], in one and two variables.
//!
//! Coefficients are stored as ordinary power-series coefficients; the
//! exponential convention `a_n = n! c_n` is applied only when extracting
//! values with [`Series::egf_coefficient`]. A series of truncation order `T`
//! carries exactly the `T + 1` coefficients `c_0..=c_T`, and every result is
//! exact up to and including its own truncation order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{factorial, int, pow_signed, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("numerator valuation {numerator} is below denominator valuation {denominator}")]
    DivisionValuation { numerator: usize, denominator: usize },
    #[error("division by the zero series")]
    DivisionByZero,
    #[error("inner series must have zero constant term")]
    ComposeNonzeroConstant,
    #[error("index {index} beyond truncation order {order}")]
    IndexBeyondTruncation { index: usize, order: usize },
    #[error("bivariate divisor has zero constant coefficient")]
    DivisionZeroConstant,
    #[error("division leaves no retained coefficients")]
    TruncationExhausted,
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// `Σ c_n t^n + O(t^{T+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

/// Elementary building blocks of the generating functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elementary {
    /// `e^{c t}`
    ExpScaled(Rational),
    Sinh,
    Cosh,
    /// `tanh(t/2)`, obtained as `sinh(t/2) / cosh(t/2)` by series division.
    TanhHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Div,
    Compose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolylogLevel {
    /// `Li_k(z) = Σ_{m≥1} z^m / m^k`
    One,
    /// `A_k(z) = 2 Σ_{n≥0} z^{2n+1} / (2n+1)^k`
    Two,
}

impl Series {
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least c_0");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(value: Rational, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Rational::one(), order)
    }

    /// The series `t`.
    pub fn variable(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Builds a series from an exponential generating sequence `a_n`.
    pub fn from_egf(values: &[Rational]) -> Self {
        Series::new(
            values
                .iter()
                .enumerate()
                .map(|(n, a)| a / int(factorial(n)))
                .collect(),
        )
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Ordinary coefficient `c_n`.
    pub fn coeff(&self, n: usize) -> Result<&Rational> {
        self.coeffs.get(n).ok_or(SeriesError::IndexBeyondTruncation {
            index: n,
            order: self.truncation_order(),
        })
    }

    /// `a_n = n! c_n`.
    pub fn egf_coefficient(&self, n: usize) -> Result<Rational> {
        Ok(self.coeff(n)? * int(factorial(n)))
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Series {
        let keep = order.min(self.truncation_order());
        Series { coeffs: self.coeffs[..=keep].to_vec() }
    }

    pub fn scale(&self, factor: &Rational) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.truncation_order().min(other.truncation_order());
        Series {
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.truncation_order().min(other.truncation_order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, exp: usize) -> Series {
        let mut acc = Series::one(self.truncation_order());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self / divisor`, cancelling a common power of `t` first.
    ///
    /// With `v = valuation(divisor)` the result has truncation order
    /// `min(T_self, T_divisor) - v`.
    pub fn div(&self, divisor: &Series) -> Result<Series> {
        let v = divisor.valuation().ok_or(SeriesError::DivisionByZero)?;
        if let Some(va) = self.valuation() {
            if va < v {
                return Err(SeriesError::DivisionValuation { numerator: va, denominator: v });
            }
        }
        let order = self.truncation_order().min(divisor.truncation_order());
        if order < v {
            return Err(SeriesError::TruncationExhausted);
        }
        let order = order - v;
        let num = &self.coeffs[v..=v + order];
        let den = &divisor.coeffs[v..=v + order];
        let lead_inv = den[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = num[n].clone();
            for j in 1..=n {
                if !den[j].is_zero() {
                    acc -= &den[j] * &out[n - j];
                }
            }
            out.push(acc * &lead_inv);
        }
        Ok(Series { coeffs: out })
    }

    /// `self(inner(t))`; `inner` must vanish at zero.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::ComposeNonzeroConstant);
        }
        let order = self.truncation_order().min(inner.truncation_order());
        let inner = inner.truncate(order);
        let mut acc = Series::constant(self.coeffs[order].clone(), order);
        for c in self.coeffs[..order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `s(t) -> s(-t)`.
    pub fn reflect(&self) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Formal derivative; the truncation order drops by one.
    pub fn derivative(&self) -> Result<Series> {
        if self.truncation_order() == 0 {
            return Err(SeriesError::TruncationExhausted);
        }
        Ok(Series {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * int(i as u64 + 1))
                .collect(),
        })
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(crate::rational::format_rational).collect();
        write!(f, "Series[{}]", parts.join(", "))
    }
}

/// Truncated Maclaurin expansion of an elementary function.
pub fn make_elementary(kind: &Elementary, order: usize) -> Series {
    match kind {
        Elementary::ExpScaled(c) => {
            let mut coeffs = Vec::with_capacity(order + 1);
            let mut term = Rational::one();
            for n in 0..=order {
                if n > 0 {
                    term = term * c / int(n as u64);
                }
                coeffs.push(term.clone());
            }
            Series::new(coeffs)
        }
        Elementary::Sinh | Elementary::Cosh => {
            let parity = usize::from(*kind == Elementary::Sinh);
            Series::new(
                (0..=order)
                    .map(|n| {
                        if n % 2 == parity {
                            int(factorial(n)).recip()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect(),
            )
        }
        Elementary::TanhHalf => {
            let half = Rational::new(BigInt::one(), BigInt::from(2));
            let up = make_elementary(&Elementary::ExpScaled(half.clone()), order);
            let down = make_elementary(&Elementary::ExpScaled(-half), order);
            let two = int(2);
            let sinh_half = up.sub(&down).scale(&two.recip());
            let cosh_half = up.add(&down).scale(&two.recip());
            sinh_half
                .div(&cosh_half)
                .expect("cosh(t/2) has unit constant term")
        }
    }
}

pub fn series_arith(op: SeriesOp, a: &Series, b: &Series) -> Result<Series> {
    match op {
        SeriesOp::Add => Ok(a.add(b)),
        SeriesOp::Mul => Ok(a.mul(b)),
        SeriesOp::Div => a.div(b),
        SeriesOp::Compose => a.compose(b),
    }
}

/// Applies `Li_k` or `A_k` to `inner` for any integer weight `k`.
///
/// Only powers `inner^m` with `m <= T` can contribute below the truncation
/// order, so the power sum is finite.
pub fn polylog_apply(level: PolylogLevel, k: i64, inner: &Series) -> Result<Series> {
    if !inner.coeffs[0].is_zero() {
        return Err(SeriesError::ComposeNonzeroConstant);
    }
    let order = inner.truncation_order();
    let mut acc = Series::zero(order);
    let mut power = inner.clone();
    for m in 1..=order {
        let weight = match level {
            PolylogLevel::One => Some(Rational::one()),
            PolylogLevel::Two if m % 2 == 1 => Some(int(2)),
            PolylogLevel::Two => None,
        };
        if let Some(w) = weight {
            let factor = w * pow_signed(&int(m as u64), -k);
            acc = acc.add(&power.scale(&factor));
        }
        if m < order {
            power = power.mul(inner);
        }
    }
    Ok(acc)
}

/// `Σ c_{m,l} t^m y^l` truncated at `(T_t, T_y)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    /// Row `m` holds the coefficients of `t^m`.
    grid: Vec<Vec<Rational>>,
}

impl BiSeries {
    pub fn zero(order_t: usize, order_y: usize) -> Self {
        BiSeries { grid: vec![vec![Rational::zero(); order_y + 1]; order_t + 1] }
    }

    pub fn constant(value: Rational, order_t: usize, order_y: usize) -> Self {
        let mut s = BiSeries::zero(order_t, order_y);
        s.grid[0][0] = value;
        s
    }

    /// Lifts a series in `t` (constant in `y`).
    pub fn from_t(series: &Series, order_y: usize) -> Self {
        let mut s = BiSeries::zero(series.truncation_order(), order_y);
        for (m, c) in series.coeffs().iter().enumerate() {
            s.grid[m][0] = c.clone();
        }
        s
    }

    /// Lifts a series in `y` (constant in `t`).
    pub fn from_y(series: &Series, order_t: usize) -> Self {
        let mut s = BiSeries::zero(order_t, series.truncation_order());
        for (l, c) in series.coeffs().iter().enumerate() {
            s.grid[0][l] = c.clone();
        }
        s
    }

    /// `e^{a t + b y}`.
    pub fn exp(a: i64, b: i64, order_t: usize, order_y: usize) -> Self {
        let et = make_elementary(&Elementary::ExpScaled(int(a)), order_t);
        let ey = make_elementary(&Elementary::ExpScaled(int(b)), order_y);
        let mut s = BiSeries::zero(order_t, order_y);
        for m in 0..=order_t {
            for l in 0..=order_y {
                s.grid[m][l] = &et.coeffs()[m] * &ey.coeffs()[l];
            }
        }
        s
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.grid.len() - 1, self.grid[0].len() - 1)
    }

    pub fn coeff(&self, m: usize, l: usize) -> Result<&Rational> {
        let (tt, ty) = self.orders();
        if m > tt || l > ty {
            return Err(SeriesError::IndexBeyondTruncation { index: m.max(l), order: tt.min(ty) });
        }
        Ok(&self.grid[m][l])
    }

    /// `m! l! c_{m,l}`.
    pub fn egf_coefficient(&self, m: usize, l: usize) -> Result<Rational> {
        Ok(self.coeff(m, l)? * int(factorial(m) * factorial(l)))
    }

    pub fn truncate(&self, order_t: usize, order_y: usize) -> BiSeries {
        let (tt, ty) = self.orders();
        let (tt, ty) = (tt.min(order_t), ty.min(order_y));
        BiSeries { grid: self.grid[..=tt].iter().map(|row| row[..=ty].to_vec()).collect() }
    }

    fn common_orders(&self, other: &BiSeries) -> (usize, usize) {
        let (a, b) = self.orders();
        let (c, d) = other.orders();
        (a.min(c), b.min(d))
    }

    pub fn scale(&self, factor: &Rational) -> BiSeries {
        BiSeries {
            grid: self.grid.iter().map(|row| row.iter().map(|c| c * factor).collect()).collect(),
        }
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let (tt, ty) = self.common_orders(other);
        let mut out = BiSeries::zero(tt, ty);
        for m in 0..=tt {
            for l in 0..=ty {
                out.grid[m][l] = &self.grid[m][l] + &other.grid[m][l];
            }
        }
        out
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let (tt, ty) = self.common_orders(other);
        let mut out = BiSeries::zero(tt, ty);
        for i in 0..=tt {
            for j in 0..=ty {
                let a = &self.grid[i][j];
                if a.is_zero() {
                    continue;
                }
                for m in 0..=tt - i {
                    for l in 0..=ty - j {
                        let b = &other.grid[m][l];
                        if !b.is_zero() {
                            out.grid[i + m][j + l] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: usize) -> BiSeries {
        let (tt, ty) = self.orders();
        let mut acc = BiSeries::constant(Rational::one(), tt, ty);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Requires a nonzero constant coefficient in `divisor`.
    pub fn div(&self, divisor: &BiSeries) -> Result<BiSeries> {
        if divisor.grid[0][0].is_zero() {
            return Err(SeriesError::DivisionZeroConstant);
        }
        let (tt, ty) = self.common_orders(divisor);
        let lead_inv = divisor.grid[0][0].recip();
        let mut q = BiSeries::zero(tt, ty);
        for m in 0..=tt {
            for l in 0..=ty {
                let mut acc = self.grid[m][l].clone();
                for i in 0..=m {
                    for j in 0..=l {
                        if (i, j) == (0, 0) {
                            continue;
                        }
                        let d = &divisor.grid[i][j];
                        if !d.is_zero() {
                            acc -= d * &q.grid[m - i][l - j];
                        }
                    }
                }
                q.grid[m][l] = acc * &lead_inv;
            }
        }
        Ok(q)
    }

    /// `∂/∂y` as an index shift; the `y` order drops by one.
    pub fn partial_y(&self) -> Result<BiSeries> {
        let (tt, ty) = self.orders();
        if ty == 0 {
            return Err(SeriesError::TruncationExhausted);
        }
        let mut out = BiSeries::zero(tt, ty - 1);
        for m in 0..=tt {
            for l in 0..ty {
                out.grid[m][l] = &self.grid[m][l + 1] * int(l as u64 + 1);
            }
        }
        Ok(out)
    }

    /// `(t, y) -> (±t, ±y)`.
    pub fn reflect(&self, flip_t: bool, flip_y: bool) -> BiSeries {
        let mut out = self.clone();
        for (m, row) in out.grid.iter_mut().enumerate() {
            for (l, c) in row.iter_mut().enumerate() {
                let odd = (flip_t && m % 2 == 1) ^ (flip_y && l % 2 == 1);
                if odd {
                    *c = -c.clone();
                }
            }
        }
        out
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tt, ty) = self.orders();
        write!(f, "BiSeries(order {tt}x{ty})")
    }
}

pub fn biseries_exp(a: i64, b: i64, order: usize) -> BiSeries {
    BiSeries::exp(a, b, order, order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiSeriesOp {
    Add,
    Mul,
    Div,
}

pub fn biseries_arith(op: BiSeriesOp, a: &BiSeries, b: &BiSeries) -> Result<BiSeries> {
    match op {
        BiSeriesOp::Add => Ok(a.add(b)),
        BiSeriesOp::Mul => Ok(a.mul(b)),
        BiSeriesOp::Div => a.div(b),
    }
}
