//! Symmetrized poly-Bernoulli numbers `ℬ_m^{(-l)}(n)` and symmetrized
//! polycosecant numbers `𝒟_m^{(-l)}(n)`.
//!
//! Both are sums over the level `n` weighted by unsigned Stirling numbers of
//! the first kind, and both are symmetric in `(m, l)` at every level.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::families::{oracle_truncation, poly_bernoulli_polynomial, Result};
use crate::rational::{binomial, factorial, int, Rational};
use crate::sequences::{stirling1, stirling2};
use crate::series::{make_elementary, polylog_apply, BiSeries, Elementary, PolylogLevel, Series};

/// `(m, l, n)` for `ℬ_m^{(-l)}(n)` and `𝒟_m^{(-l)}(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetrizedIndex {
    pub m: usize,
    pub l: usize,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymBernoulliMethod {
    /// `Σ_j s(n,j) B_m^{(-l-j)}(n)`
    Definition,
    /// `Σ_j n! (j!)^2 C(j+n,n) S(l+1,j+1) S(m+1,j+1)`
    ClosedForm,
    /// Coefficient of `n! e^{x+y} / (e^x+e^y-e^{x+y})^{n+1}`.
    BiSeries,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymCosecantMethod {
    /// `Σ_j s(n,j) D̂_m^{(-l-j)}(n)`
    Definition,
    /// Stirling sum for even `m`; odd `m` gives 0.
    ClosedForm,
}

pub fn sym_poly_bernoulli(m: usize, l: usize, n: usize, method: SymBernoulliMethod) -> Result<Rational> {
    match method {
        SymBernoulliMethod::Definition => {
            let x = int(n as u64);
            let mut total = Rational::zero();
            for j in 0..=n {
                let s = stirling1(n, j);
                if s.is_zero() {
                    continue;
                }
                let weight = -((l + j) as i64);
                total += int(s) * poly_bernoulli_polynomial(m, weight, &x)?;
            }
            Ok(total)
        }
        SymBernoulliMethod::ClosedForm => {
            let nf = factorial(n);
            let total: BigInt = (0..=m.min(l))
                .map(|j| {
                    let fj = factorial(j);
                    &nf * &fj * &fj * binomial(j + n, n) * stirling2(l + 1, j + 1) * stirling2(m + 1, j + 1)
                })
                .sum();
            Ok(int(total))
        }
        SymBernoulliMethod::BiSeries => {
            let order = m.max(l).max(1);
            Ok(sym_bernoulli_generating(n, order).egf_coefficient(l, m)?)
        }
    }
}

/// `n! e^{x+y} / (e^x + e^y - e^{x+y})^{n+1}`, the generating function of
/// `ℬ_m^{(-l)}(n)` with `x^l y^m`.
pub fn sym_bernoulli_generating(n: usize, order: usize) -> BiSeries {
    let num = BiSeries::exp(1, 1, order, order).scale(&int(factorial(n)));
    let den = BiSeries::exp(1, 0, order, order)
        .add(&BiSeries::exp(0, 1, order, order))
        .sub(&BiSeries::exp(1, 1, order, order));
    num.div(&den.pow(n + 1)).expect("denominator has constant term 1")
}

type HatCache = Mutex<HashMap<(usize, usize, usize), Arc<Series>>>;

fn hat_cache() -> &'static HatCache {
    static CACHE: OnceLock<HatCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `½ (e^t+1)^{1-n} Li_{-l}(tanh(t/2)) / sinh t`, without the mirror term.
fn hat_half(l: usize, n: usize, order: usize) -> Result<Arc<Series>> {
    let key = (l, n, order);
    if let Some(s) = hat_cache().lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let inner = order + 1;
    let th = make_elementary(&Elementary::TanhHalf, inner);
    let li = polylog_apply(PolylogLevel::One, -(l as i64), &th)?;
    let mut g = li.div(&make_elementary(&Elementary::Sinh, inner))?;
    let et_plus_one = make_elementary(&Elementary::ExpScaled(int(1)), order).add(&Series::one(order));
    if n == 0 {
        g = g.mul(&et_plus_one);
    } else if n >= 2 {
        g = g.div(&et_plus_one.pow(n - 1))?;
    }
    let g = Arc::new(g.scale(&Rational::new(BigInt::one(), BigInt::from(2))));
    hat_cache().lock().unwrap().insert(key, g.clone());
    Ok(g)
}

/// `D̂_m^{(-l)}(n)`: the generating function above plus its `t -> -t` mirror.
pub fn copoly_hat(m: usize, l: usize, n: usize) -> Result<Rational> {
    let g = hat_half(l, n, oracle_truncation().max(m))?;
    let full = g.add(&g.reflect());
    Ok(full.egf_coefficient(m)?)
}

pub fn sym_polycosecant(m: usize, l: usize, n: usize, method: SymCosecantMethod) -> Result<Rational> {
    match method {
        SymCosecantMethod::Definition => {
            let mut total = Rational::zero();
            for j in 0..=n {
                let s = stirling1(n, j);
                if !s.is_zero() {
                    total += int(s) * copoly_hat(m, l + j, n)?;
                }
            }
            Ok(total)
        }
        SymCosecantMethod::ClosedForm => Ok(sym_polycosecant_closed(m, l, n)),
    }
}

fn sym_polycosecant_closed(m: usize, l: usize, n: usize) -> Rational {
    if m % 2 == 1 {
        return Rational::zero();
    }
    // (j!)^2 / 2^{j-1} over the common denominator 2^{min(m,l)}
    let top = m.min(l);
    let inner: BigInt = (0..=top)
        .map(|j| {
            let fj = factorial(j);
            (&fj * &fj * binomial(j + n, n) * stirling2(m + 1, j + 1) * stirling2(l + 1, j + 1)) << (top + 1 - j)
        })
        .sum();
    Rational::new(factorial(n) * inner, BigInt::one() << (n + 1 + top))
}

/// `n! e^{±t+y} / (1 + e^{±t} + e^y - e^{±t+y})^{n+1}`.
fn f_branch(sign: i64, n: usize, order_t: usize, order_y: usize) -> BiSeries {
    let one = BiSeries::constant(Rational::one(), order_t, order_y);
    let den = one
        .add(&BiSeries::exp(sign, 0, order_t, order_y))
        .add(&BiSeries::exp(0, 1, order_t, order_y))
        .sub(&BiSeries::exp(sign, 1, order_t, order_y));
    BiSeries::exp(sign, 1, order_t, order_y)
        .scale(&int(factorial(n)))
        .div(&den.pow(n + 1))
        .expect("denominator has constant term 2")
}

/// `f_{1,n}(t, y) = n! e^{t+y} / (1 + e^t + e^y - e^{t+y})^{n+1}`.
pub fn f_one(n: usize, order_t: usize, order_y: usize) -> BiSeries {
    f_branch(1, n, order_t, order_y)
}

/// `f_{2,n}(t, y) = n! e^{-t+y} / (1 + e^{-t} + e^y - e^{-t+y})^{n+1}`.
pub fn f_two(n: usize, order_t: usize, order_y: usize) -> BiSeries {
    f_branch(-1, n, order_t, order_y)
}

/// Generating function of `𝒟_m^{(-l)}(n)` in `t^m y^l`.
pub fn sym_cosecant_generating(n: usize, order_t: usize, order_y: usize) -> BiSeries {
    f_one(n, order_t, order_y).add(&f_two(n, order_t, order_y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cosecant, cotangent, poly_bernoulli, tilde_cosecant, PolyBernoulliVariant};
    use crate::rational::is_nonnegative_integer;
    use crate::sequences::euler_polynomial;
    use proptest::prelude::*;

    const METHODS: [SymBernoulliMethod; 3] =
        [SymBernoulliMethod::Definition, SymBernoulliMethod::ClosedForm, SymBernoulliMethod::BiSeries];

    #[test]
    fn sym_bernoulli_methods_agree() {
        for n in 0..=4 {
            for m in 0..=5 {
                for l in 0..=5 {
                    let values: Vec<_> = METHODS.iter().map(|&md| sym_poly_bernoulli(m, l, n, md).unwrap()).collect();
                    assert!(values.windows(2).all(|w| w[0] == w[1]), "m={m} l={l} n={n}: {values:?}");
                    assert!(values[0] >= int(1));
                    assert!(values[0].is_integer());
                }
            }
        }
    }

    #[test]
    fn sym_bernoulli_low_levels() {
        for m in 0..=5 {
            for l in 0..=5usize {
                let li = l as i64;
                assert_eq!(
                    sym_poly_bernoulli(m, l, 0, SymBernoulliMethod::Definition).unwrap(),
                    poly_bernoulli(PolyBernoulliVariant::B, m, -li)
                );
                assert_eq!(
                    sym_poly_bernoulli(m, l, 1, SymBernoulliMethod::Definition).unwrap(),
                    poly_bernoulli(PolyBernoulliVariant::C, m, -li - 1)
                );
            }
        }
        for n in 0..=6 {
            assert_eq!(sym_poly_bernoulli(0, 0, n, SymBernoulliMethod::ClosedForm).unwrap(), int(factorial(n)));
        }
        assert_eq!(sym_poly_bernoulli(2, 2, 0, SymBernoulliMethod::BiSeries).unwrap(), int(14));
    }

    #[test]
    fn sym_bernoulli_duality() {
        for n in 0..=4 {
            for m in 0..=5 {
                for l in 0..=5 {
                    assert_eq!(
                        sym_poly_bernoulli(m, l, n, SymBernoulliMethod::Definition).unwrap(),
                        sym_poly_bernoulli(l, m, n, SymBernoulliMethod::Definition).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sym_cosecant_methods_agree() {
        for n in 0..=4 {
            for m in 0..=8 {
                for l in 0..=6 {
                    let d = sym_polycosecant(m, l, n, SymCosecantMethod::Definition).unwrap();
                    let c = sym_polycosecant(m, l, n, SymCosecantMethod::ClosedForm).unwrap();
                    assert_eq!(d, c, "m={m} l={l} n={n}");
                    let scaled = &c * int(BigInt::one() << (n + 1)) / int(factorial(n));
                    assert!(is_nonnegative_integer(&scaled));
                }
            }
        }
    }

    #[test]
    fn sym_cosecant_odd_first_index_vanishes() {
        for n in 0..=3 {
            for m in [1, 3, 5] {
                for l in 0..=4 {
                    assert!(copoly_hat(m, l, n).unwrap().is_zero());
                    assert!(sym_polycosecant(m, l, n, SymCosecantMethod::Definition).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn sym_cosecant_level_one() {
        for m in 0..=8 {
            for l in 0..=8usize {
                assert_eq!(
                    sym_polycosecant(m, l, 1, SymCosecantMethod::Definition).unwrap(),
                    cosecant(m, -(l as i64) - 1) / int(2),
                    "m={m} l={l}"
                );
            }
        }
        assert_eq!(sym_polycosecant(4, 3, 1, SymCosecantMethod::ClosedForm).unwrap(), cosecant(4, -4) / int(2));
        assert_eq!(sym_polycosecant(0, 0, 0, SymCosecantMethod::ClosedForm).unwrap(), int(1));
        assert_eq!(sym_polycosecant(0, 0, 0, SymCosecantMethod::Definition).unwrap(), int(1));
    }

    #[test]
    fn sym_cosecant_duality() {
        for n in 0..=4 {
            for m in 0..=4 {
                for l in 0..=4 {
                    assert_eq!(
                        sym_polycosecant(2 * m, 2 * l, n, SymCosecantMethod::Definition).unwrap(),
                        sym_polycosecant(2 * l, 2 * m, n, SymCosecantMethod::Definition).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn level_one_duality_is_odd_weight_cosecant_duality() {
        for m in 0..=5 {
            for l in 0..=5 {
                assert_eq!(cosecant(2 * m, -2 * l as i64 - 1), cosecant(2 * l, -2 * m as i64 - 1));
            }
        }
    }

    #[test]
    fn level_zero_four_term_identity() {
        let order = 8;
        let one = BiSeries::constant(int(1), order, order);
        let lhs = one
            .add(&f_one(0, order, order))
            .add(&f_two(0, order, order))
            .add(&f_one(0, order, order).reflect(false, true))
            .add(&f_two(0, order, order).reflect(false, true));
        for a in 0..=order {
            for b in 0..=order {
                let c = lhs.egf_coefficient(a, b).unwrap();
                if a % 2 == 1 || b % 2 == 1 {
                    assert!(c.is_zero());
                    continue;
                }
                let (m, l) = (a as i64, b as i64);
                let expected = cotangent(a, -l) + cosecant(a, -l) + cosecant(b, -m);
                assert_eq!(c, expected, "t^{a} y^{b}");
            }
        }
        for m in 0..=4usize {
            for l in 0..=4usize {
                assert_eq!(cotangent(2 * m, -2 * l as i64), cotangent(2 * l, -2 * m as i64));
            }
        }
    }

    #[test]
    fn level_two_tilde_identity() {
        let side = |m: usize, l: usize| -> Rational {
            (0..=2 * m)
                .map(|j| {
                    let a = tilde_cosecant(2 * m - j, 2 * l as u32 + 1).unwrap();
                    let b = tilde_cosecant(2 * m - j, 2 * l as u32 + 2).unwrap();
                    int(binomial(2 * m, j)) * euler_polynomial(j, &int(0)) * (a + b)
                })
                .sum()
        };
        for m in 0..=3 {
            for l in 0..=3 {
                assert_eq!(side(m, l), side(l, m), "m={m} l={l}");
            }
        }
    }

    #[test]
    fn f_level_derivative() {
        let order = 8;
        for n in 0..=3 {
            for (sign, f) in [(1i64, f_one as fn(usize, usize, usize) -> BiSeries), (-1, f_two)] {
                let base = f(0, order, order + n);
                let mut sum = BiSeries::zero(order, order);
                let mut derivative = base;
                for j in 0..=n {
                    let s = stirling1(n, j);
                    sum = sum.add(&derivative.truncate(order, order).scale(&int(s)));
                    derivative = derivative.partial_y().unwrap();
                }
                let et_plus_one = BiSeries::exp(sign, 0, order, order).add(&BiSeries::constant(int(1), order, order));
                let rhs = sum.div(&et_plus_one.pow(n)).unwrap();
                assert_eq!(f(n, order, order), rhs, "n={n} sign={sign}");
            }
        }
    }

    #[test]
    fn f_sum_generates_symmetrized_cosecant() {
        let order = 6;
        for n in 0..=3 {
            let g = sym_cosecant_generating(n, order, order);
            for m in 0..=order {
                for l in 0..=order {
                    assert_eq!(
                        g.egf_coefficient(m, l).unwrap(),
                        sym_polycosecant(m, l, n, SymCosecantMethod::Definition).unwrap(),
                        "m={m} l={l} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn f_sum_differs_from_hat_numbers_beyond_level_zero() {
        let g = sym_cosecant_generating(2, 4, 4);
        assert_ne!(g.egf_coefficient(2, 1).unwrap(), copoly_hat(2, 1, 2).unwrap());
        let g = sym_cosecant_generating(0, 4, 4);
        for m in 0..=4 {
            for l in 0..=4 {
                assert_eq!(g.egf_coefficient(m, l).unwrap(), copoly_hat(m, l, 0).unwrap());
            }
        }
    }

    #[test]
    fn hat_level_one_halves_cosecant() {
        for m in 0..=6 {
            for l in 0..=5usize {
                assert_eq!(copoly_hat(m, l, 1).unwrap(), cosecant(m, -(l as i64)) / int(2));
            }
        }
        assert_eq!(copoly_hat(0, 0, 0).unwrap(), int(1));
        assert_eq!(copoly_hat(0, 1, 0).unwrap(), int(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn sym_bernoulli_closed_form_is_symmetric(m in 0usize..12, l in 0usize..12, n in 0usize..8) {
            let a = sym_poly_bernoulli(m, l, n, SymBernoulliMethod::ClosedForm).unwrap();
            let b = sym_poly_bernoulli(l, m, n, SymBernoulliMethod::ClosedForm).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(a >= int(1));
        }

        #[test]
        fn sym_cosecant_closed_form_duality(m in 0usize..8, l in 0usize..8, n in 0usize..8) {
            prop_assert_eq!(
                sym_polycosecant(2 * m, 2 * l, n, SymCosecantMethod::ClosedForm).unwrap(),
                sym_polycosecant(2 * l, 2 * m, n, SymCosecantMethod::ClosedForm).unwrap()
            );
        }
    }
}
