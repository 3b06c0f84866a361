//! Identity registry. Each entry turns a parameter record into concrete
//! instances (two exact sides plus an optional modulus) after checking the
//! hypotheses of the statement it encodes.
//!
//! Index conventions: for cosecant and cotangent statements `n` and `m` are
//! half indices (the order is `2n`); for Bernoulli, poly-Bernoulli and
//! Stirling statements they are the actual indices. `k` is the symbol used by
//! the statement itself, so `KUMMER_COSE` with `k = 3` compares `D^{(-3)}`
//! while `CVS_COSE` with `k = 2` looks at `D^{(2)}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::padic::{ord_p, reduce_mod, is_prime, primes_up_to};
use super::report::{Report, Verdict, Witness};
use crate::families::{
    cosecant, cosecant_bivariate, cosecant_from_cotangent, cotangent, k_shift_recurrence, poly_bernoulli,
    polycosecant, polycotangent, CosecantMethod, CotangentMethod, FamilyError, PolyBernoulliVariant,
};
use crate::rational::{binomial, factorial, format_rational, int, pow_signed, sign_pow, Rational};
use crate::sequences::{bernoulli, stirling1, stirling2, tangent, totient, TangentKind};
use crate::symmetrized::{
    sym_bernoulli_generating, sym_cosecant_generating, sym_poly_bernoulli, sym_polycosecant, SymBernoulliMethod,
    SymCosecantMethod,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown identity '{0}'")]
    UnknownIdentity(String),
    #[error("{identity}: missing parameter '{name}'")]
    MissingParameter { identity: IdentityId, name: &'static str },
    #[error("{identity}: hypothesis violated: {reason}")]
    HypothesisViolation { identity: IdentityId, reason: String },
    #[error("{identity}: {source}")]
    Compute { identity: IdentityId, source: FamilyError },
    #[error("{identity}: perturbation index {index} out of range ({count} instances)")]
    PerturbationOutOfRange { identity: IdentityId, index: usize, count: usize },
}

macro_rules! identities {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId { $($variant),* }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(IdentityId::$variant => $name),* }
            }
        }
    };
}

identities! {
    KummerBernoulli => "KUMMER_BERNOULLI",
    KummerPolyB => "KUMMER_POLYB_B",
    KummerPolyC => "KUMMER_POLYB_C",
    SumPolyB => "SUM_POLYB",
    KummerCoseOdd => "KUMMER_COSE_ODD",
    KummerCose => "KUMMER_COSE",
    KummerCota => "KUMMER_COTA",
    KummerCoseRemark => "KUMMER_COSE_REMARK",
    TwoOrderCose => "TWO_ORDER_COSE",
    TwoOrderCota => "TWO_ORDER_COTA",
    PeriodB => "PERIOD_B",
    PeriodC => "PERIOD_C",
    PeriodCpk => "PERIOD_CPK",
    PeriodCoseOdd => "PERIOD_COSE_ODD",
    PeriodCoseP1 => "PERIOD_COSE_P1",
    PeriodCotaP1 => "PERIOD_COTA_P1",
    SumCose => "SUM_COSE",
    SumCota => "SUM_COTA",
    SumC => "SUM_C",
    CvsBernoulli => "CVS_BERNOULLI",
    CvsPolyB => "CVS_POLYB",
    CvsCose => "CVS_COSE",
    CvsCota => "CVS_COTA",
    DenomOrder => "DENOM_ORDER",
    DualityB => "DUALITY_B",
    DualityC => "DUALITY_C",
    DualityCose => "DUALITY_COSE",
    DualityCota => "DUALITY_COTA",
    DualitySymB => "DUALITY_SYM_B",
    DualitySymCose => "DUALITY_SYM_COSE",
    VanishS1B => "VANISH_S1_B",
    VanishS1BDouble => "VANISH_S1_B_DOUBLE",
    VanishS1C => "VANISH_S1_C",
    VanishS1Cose => "VANISH_S1_COSE",
    VanishS1Cota => "VANISH_S1_COTA",
    ConvEq5 => "CONV_EQ5",
    ConvEq6 => "CONV_EQ6",
    KShift => "KSHIFT",
    GfBivariate => "GF_BIVARIATE",
    GfSymB => "GF_SYM_B",
    GfSymCose => "GF_SYM_COSE",
    StirlingModP => "STIRLING_MOD_P",
    StirlingCong => "STIRLING_CONG",
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == wanted)
            .ok_or_else(|| VerifyError::UnknownIdentity(s.to_string()))
    }
}

/// Parameter record shared by every identity. Unused fields are ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub big_n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lmax: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nmax: Option<i64>,
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn p(mut self, v: u64) -> Self {
        self.p = Some(v);
        self
    }
    pub fn big_n(mut self, v: u32) -> Self {
        self.big_n = Some(v);
        self
    }
    pub fn n(mut self, v: i64) -> Self {
        self.n = Some(v);
        self
    }
    pub fn m(mut self, v: i64) -> Self {
        self.m = Some(v);
        self
    }
    pub fn k(mut self, v: i64) -> Self {
        self.k = Some(v);
        self
    }
    pub fn l(mut self, v: i64) -> Self {
        self.l = Some(v);
        self
    }
    pub fn j(mut self, v: i64) -> Self {
        self.j = Some(v);
        self
    }
    pub fn a(mut self, v: i64) -> Self {
        self.a = Some(v);
        self
    }
    pub fn lmax(mut self, v: i64) -> Self {
        self.lmax = Some(v);
        self
    }
    pub fn nmax(mut self, v: i64) -> Self {
        self.nmax = Some(v);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Check {
    Exact,
    /// Both sides in `Z_(p)` and congruent mod `p^exp`.
    Congruent { p: u64, exp: u32 },
}

#[derive(Debug, Clone)]
struct Instance {
    label: String,
    lhs: Rational,
    rhs: Rational,
    check: Check,
    terms: Option<Vec<Rational>>,
}

impl Instance {
    fn exact(label: String, lhs: Rational, rhs: Rational) -> Self {
        Instance { label, lhs, rhs, check: Check::Exact, terms: None }
    }

    fn congruent(label: String, lhs: Rational, rhs: Rational, p: u64, exp: u32) -> Self {
        debug_assert!(exp >= 1);
        Instance { label, lhs, rhs, check: Check::Congruent { p, exp }, terms: None }
    }

    fn with_terms(mut self, terms: Vec<Rational>) -> Self {
        self.terms = Some(terms);
        self
    }

    fn evaluate(&self) -> Witness {
        let (holds, modulus, lr, rr) = match self.check {
            Check::Exact => (self.lhs == self.rhs, None, None, None),
            Check::Congruent { p, exp } => {
                let l = reduce_mod(&self.lhs, p, exp).ok();
                let r = reduce_mod(&self.rhs, p, exp).ok();
                let holds = matches!((&l, &r), (Some(a), Some(b)) if a == b);
                let modulus = if exp == 1 { p.to_string() } else { format!("{p}^{exp}") };
                (holds, Some(modulus), l.map(|x| x.value.to_string()), r.map(|x| x.value.to_string()))
            }
        };
        Witness {
            instance: self.label.clone(),
            lhs: format_rational(&self.lhs),
            rhs: format_rational(&self.rhs),
            modulus,
            lhs_residue: lr,
            rhs_residue: rr,
            holds,
            terms: self.terms.as_ref().map(|t| t.iter().map(format_rational).collect()),
        }
    }
}

struct Ctx<'a> {
    id: IdentityId,
    params: &'a Params,
}

type VResult<T> = Result<T, VerifyError>;

impl Ctx<'_> {
    fn missing(&self, name: &'static str) -> VerifyError {
        VerifyError::MissingParameter { identity: self.id, name }
    }

    fn require(&self, cond: bool, reason: impl Into<String>) -> VResult<()> {
        if cond {
            Ok(())
        } else {
            Err(VerifyError::HypothesisViolation { identity: self.id, reason: reason.into() })
        }
    }

    fn int(&self, name: &'static str, value: Option<i64>) -> VResult<i64> {
        value.ok_or_else(|| self.missing(name))
    }

    fn nonneg(&self, name: &'static str, value: Option<i64>) -> VResult<usize> {
        let v = self.int(name, value)?;
        self.require(v >= 0, format!("{name} >= 0"))?;
        Ok(v as usize)
    }

    fn n(&self) -> VResult<usize> {
        self.nonneg("n", self.params.n)
    }
    fn m(&self) -> VResult<usize> {
        self.nonneg("m", self.params.m)
    }
    fn k(&self) -> VResult<i64> {
        self.int("k", self.params.k)
    }
    fn lmax(&self) -> VResult<usize> {
        self.nonneg("lmax", self.params.lmax)
    }

    fn big_n(&self) -> VResult<u32> {
        let v = self.params.big_n.ok_or_else(|| self.missing("N"))?;
        self.require(v >= 1, "N >= 1")?;
        Ok(v)
    }

    fn prime(&self) -> VResult<u64> {
        let p = self.params.p.ok_or_else(|| self.missing("p"))?;
        self.require(is_prime(p), format!("p = {p} must be prime"))?;
        Ok(p)
    }

    fn odd_prime(&self) -> VResult<u64> {
        let p = self.prime()?;
        self.require(p != 2, "p must be an odd prime")?;
        Ok(p)
    }

    fn phi(&self, p: u64, big_n: u32) -> u64 {
        totient(p.pow(big_n)).expect("p^N is positive")
    }
}

fn sub_exp(idx: usize, weight: i64) -> String {
    format!("{idx}^({weight})")
}

fn tangent_odd(n: usize) -> Rational {
    int(tangent(TangentKind::Plain, 2 * n + 1).expect("odd index"))
}

fn tangent_tilde(n: usize) -> Rational {
    int(tangent(TangentKind::Tilde, 2 * n).expect("even index"))
}

/// `1/p S(n, p-1)` style quotient kept exact.
fn over_p(x: BigInt, p: u64) -> Rational {
    Rational::new(x, BigInt::from(p))
}

/// Right-hand side of the `(p-1) ∤ 2n` branch for `D_{2n}^{(k)}`.
pub fn cvs_cose_rhs(p: u64, n: usize) -> Rational {
    let two_n = 2 * n;
    let pu = p as usize;
    let alpha = two_n % (pu - 1);
    let mut rhs = -over_p(stirling2(two_n, pu - 1), p);
    let inner: Rational = (0..alpha)
        .map(|j| sign_pow(j as i64) * Rational::new(factorial(j), BigInt::one() << (j + 1)) * int(stirling2(alpha, j + 1)))
        .sum();
    for l in pu..=two_n {
        if l % (pu - 1) == 1 % (pu - 1) {
            rhs += int(binomial(two_n + 1, l)) * &inner;
        }
    }
    rhs
}

/// Extra term for `β_{2n}^{(k)}` in the `(p-1) ∤ 2n` branch:
/// `Σ_{j=p-1}^{γ} (-1)^j (j+2)! / (2^{j+1} p) S(2n, j+2) C(j+1, p)`.
pub fn cvs_cota_extra(p: u64, n: usize) -> Rational {
    cota_extra(p, n, p as usize - 1, 1)
}

/// The extra term with the lower limit `j = p` and `2^j`, as printed in the
/// source statement. It does not match the computed values; kept for tests.
pub fn cvs_cota_extra_as_printed(p: u64, n: usize) -> Rational {
    cota_extra(p, n, p as usize, 0)
}

fn cota_extra(p: u64, n: usize, start: usize, extra_shift: usize) -> Rational {
    let gamma = (2 * n).min(2 * p as usize - 3);
    (start..=gamma)
        .map(|j| {
            sign_pow(j as i64)
                * Rational::new(factorial(j + 2), (BigInt::one() << (j + extra_shift)) * BigInt::from(p))
                * int(stirling2(2 * n, j + 2) * binomial(j + 1, p as usize))
        })
        .sum()
}

fn alternating_s1(m: usize, value: impl Fn(usize) -> Rational) -> Vec<Rational> {
    (0..=m).map(|j| sign_pow(j as i64) * int(stirling1(m + 1, j + 1)) * value(j)).collect()
}

fn vanishing(label: String, terms: Vec<Rational>) -> Instance {
    let lhs = terms.iter().sum();
    Instance::exact(label, lhs, Rational::zero()).with_terms(terms)
}

fn build(ctx: &Ctx) -> VResult<Vec<Instance>> {
    use IdentityId::*;
    let pb = |n: usize, k: i64| poly_bernoulli(PolyBernoulliVariant::B, n, k);
    let pc = |n: usize, k: i64| poly_bernoulli(PolyBernoulliVariant::C, n, k);
    let compute = |e: FamilyError| VerifyError::Compute { identity: ctx.id, source: e };
    let mut out = Vec::new();
    match ctx.id {
        KummerBernoulli => {
            let (p, big_n, m, n) = (ctx.odd_prime()?, ctx.big_n()?, ctx.m()?, ctx.n()?);
            let phi = ctx.phi(p, big_n) as usize;
            ctx.require(m >= 1 && n >= 1, "m, n >= 1")?;
            ctx.require(m.abs_diff(n) % phi == 0, format!("m ≡ n mod φ(p^N) = {phi}"))?;
            ctx.require(n % (p as usize - 1) != 0, "(p-1) ∤ n")?;
            let side = |i: usize| (int(1) - pow_signed(&int(p), i as i64 - 1)) * bernoulli(i) / int(i as u64);
            out.push(Instance::congruent(format!("B_{m} vs B_{n}"), side(m), side(n), p, big_n));
        }
        KummerPolyB | KummerPolyC => {
            let (p, big_n, m, n, k) = (ctx.odd_prime()?, ctx.big_n()?, ctx.m()?, ctx.n()?, ctx.k()?);
            let phi = ctx.phi(p, big_n) as usize;
            ctx.require(k >= 0, "k >= 0")?;
            ctx.require(m >= big_n as usize && n >= big_n as usize && m >= 1 && n >= 1, "m, n >= N")?;
            ctx.require(m.abs_diff(n) % phi == 0, format!("m ≡ n mod φ(p^N) = {phi}"))?;
            let (name, f): (&str, &dyn Fn(usize, i64) -> Rational) =
                if ctx.id == KummerPolyB { ("B", &pb) } else { ("C", &pc) };
            out.push(Instance::congruent(
                format!("{name}_{} vs {name}_{}", sub_exp(m, -k), sub_exp(n, -k)),
                f(m, -k),
                f(n, -k),
                p,
                big_n,
            ));
        }
        SumPolyB => {
            let (p, big_n, n, k) = (ctx.odd_prime()?, ctx.big_n()?, ctx.n()?, ctx.k()?);
            ctx.require(n >= big_n as usize, "n >= N")?;
            ctx.require(k >= 0, "k >= 0")?;
            // the statement is false for k < N, e.g. p=3, N=2, n=2, k=0
            ctx.require(k >= big_n as i64, "k >= N")?;
            let phi = ctx.phi(p, big_n) as i64;
            let terms: Vec<Rational> = (0..phi).map(|i| pb(n, -k - i)).collect();
            let lhs = terms.iter().sum();
            out.push(Instance::congruent(format!("Σ_i B_{}", sub_exp(n, -k)), lhs, int(0), p, big_n));
        }
        KummerCoseOdd => {
            let (p, big_n, m, n, k) = (ctx.prime()?, ctx.big_n()?, ctx.m()?, ctx.n()?, ctx.k()?);
            let phi = ctx.phi(p, big_n) as usize;
            ctx.require(k >= 1 && m >= 1 && n >= 1, "k, m, n >= 1")?;
            ctx.require((2 * m).abs_diff(2 * n) % phi == 0, format!("2m ≡ 2n mod φ(p^N) = {phi}"))?;
            ctx.require(2 * m >= big_n as usize && 2 * n >= big_n as usize, "2m, 2n >= N")?;
            let w = -2 * k + 1;
            out.push(Instance::congruent(
                format!("D_{} vs D_{}", sub_exp(2 * m, w), sub_exp(2 * n, w)),
                cosecant(2 * m, w),
                cosecant(2 * n, w),
                p,
                big_n,
            ));
        }
        KummerCose | KummerCota => {
            let (p, big_n, m, n, k) = (ctx.odd_prime()?, ctx.big_n()?, ctx.m()?, ctx.n()?, ctx.k()?);
            let phi = ctx.phi(p, big_n) as usize;
            ctx.require(k >= 1 && m >= 1 && n >= 1, "k, m, n >= 1")?;
            ctx.require((2 * m).abs_diff(2 * n) % phi == 0, format!("2m ≡ 2n mod φ(p^N) = {phi}"))?;
            ctx.require(2 * m >= big_n as usize && 2 * n >= big_n as usize, "2m, 2n >= N")?;
            let (name, f): (&str, fn(usize, i64) -> Rational) =
                if ctx.id == KummerCose { ("D", cosecant) } else { ("β", cotangent) };
            out.push(Instance::congruent(
                format!("{name}_{} vs {name}_{}", sub_exp(2 * m, -k), sub_exp(2 * n, -k)),
                f(2 * m, -k),
                f(2 * n, -k),
                p,
                big_n,
            ));
        }
        KummerCoseRemark => {
            let (p, big_n, m, n) = (ctx.odd_prime()?, ctx.big_n()?, ctx.m()?, ctx.n()?);
            let period = (p as usize - 1) * (p as usize).pow(big_n - 1);
            ctx.require((2 * m).abs_diff(2 * n) % period == 0, format!("2n ≡ 2m mod (p-1)p^(N-1) = {period}"))?;
            ctx.require((2 * n) % (p as usize - 1) != 0, "(p-1) ∤ 2n")?;
            for (name, f) in [("D", cosecant as fn(usize, i64) -> Rational), ("β", cotangent)] {
                let side = |i: usize| (int(1) - pow_signed(&int(p), 2 * i as i64 - 1)) * f(2 * i, 1) / int(2 * i as u64);
                out.push(Instance::congruent(
                    format!("{name}_{} vs {name}_{}", sub_exp(2 * n, 1), sub_exp(2 * m, 1)),
                    side(n),
                    side(m),
                    p,
                    big_n,
                ));
            }
        }
        TwoOrderCose => {
            let (n, k) = (ctx.n()?, ctx.k()?);
            ctx.require(n >= 1 && k >= 1, "n, k >= 1")?;
            out.push(Instance::congruent(format!("D_{}", sub_exp(2 * n, -2 * k)), cosecant(2 * n, -2 * k), int(0), 2, 2 * n as u32));
        }
        TwoOrderCota => {
            let (n, k) = (ctx.n()?, ctx.k()?);
            ctx.require(n >= 1 && k >= 0, "n >= 1, k >= 0")?;
            let w = -2 * k - 1;
            out.push(Instance::congruent(format!("β_{}", sub_exp(2 * n, w)), cotangent(2 * n, w), int(0), 2, 2 * n as u32 - 1));
        }
        PeriodB | PeriodC | PeriodCpk | PeriodCoseOdd => {
            let (p, k) = (ctx.odd_prime()?, ctx.k()?);
            ctx.require(k >= 0, "k >= 0")?;
            let pi = p as i64;
            let pu = p as usize;
            let ku = k as usize;
            let divides = k % (pi - 1) == 0;
            let mut push = |label: String, lhs: Rational, rhs: i64| {
                out.push(Instance::congruent(label, lhs, int(rhs), p, 1));
            };
            match ctx.id {
                PeriodB => {
                    let e = if k == 0 || !divides { 1 } else { 2 };
                    push(format!("B_{}", sub_exp(pu - 1, -k)), pb(pu - 1, -k), e);
                    push(format!("B_{}", sub_exp(ku, -pi + 1)), pb(ku, -pi + 1), e);
                }
                PeriodC => {
                    let e = if divides { 1 } else { 0 };
                    push(format!("C_{}", sub_exp(pu - 2, -k - 1)), pc(pu - 2, -k - 1), e);
                    push(format!("C_{}", sub_exp(ku, -pi + 1)), pc(ku, -pi + 1), e);
                }
                PeriodCpk => {
                    push(format!("C_{}", sub_exp(pu - 1, -k - 1)), pc(pu - 1, -k - 1), 1);
                    push(format!("C_{}", sub_exp(ku, -pi)), pc(ku, -pi), 1);
                }
                _ => {
                    push(format!("D_{}", sub_exp(pu - 1, -2 * k - 1)), cosecant(pu - 1, -2 * k - 1), 1);
                    push(format!("D_{}", sub_exp(2 * ku, -pi)), cosecant(2 * ku, -pi), 1);
                    if k >= 1 {
                        push(format!("D_{}", sub_exp(pu - 1, -k)), cosecant(pu - 1, -k), 1);
                    }
                }
            }
        }
        PeriodCoseP1 | PeriodCotaP1 => {
            let (p, n) = (ctx.odd_prime()?, ctx.n()?);
            let w = -(p as i64) + 1;
            let divides = (2 * n) % (p as usize - 1) == 0;
            if ctx.id == PeriodCoseP1 {
                let e = if divides { 1 } else { 0 };
                out.push(Instance::congruent(format!("D_{}", sub_exp(2 * n, w)), cosecant(2 * n, w), int(e), p, 1));
            } else {
                let e = if n == 0 || !divides { 1 } else { 2 };
                out.push(Instance::congruent(format!("β_{}", sub_exp(2 * n, w)), cotangent(2 * n, w), int(e), p, 1));
            }
        }
        SumCose | SumCota | SumC => {
            let (p, big_n, n, k) = (ctx.odd_prime()?, ctx.big_n()?, ctx.n()?, ctx.k()?);
            ctx.require(k >= big_n as i64, "k >= N")?;
            let phi = ctx.phi(p, big_n) as i64;
            let (name, idx, f, scale, rhs): (&str, usize, fn(usize, i64) -> Rational, Rational, Rational) = match ctx.id {
                SumCose => ("D", 2 * n, cosecant, int(BigInt::one() << (2 * n)), sign_pow(n as i64) * tangent_odd(n)),
                SumCota => ("β", 2 * n, cotangent, int(BigInt::one() << (2 * n)), tangent_tilde(n)),
                _ => ("C", n, |i, w| poly_bernoulli(PolyBernoulliVariant::C, i, w), int(1), sign_pow(n as i64)),
            };
            let terms: Vec<Rational> = (0..phi).map(|i| f(idx, -k - i)).collect();
            let sum: Rational = terms.iter().sum();
            let label = format!("Σ_(i<{phi}) {name}_{}", sub_exp(idx, -k));
            out.push(
                Instance::congruent(label.clone(), &scale * &sum, rhs * int(phi), p, big_n).with_terms(terms),
            );
            if ctx.id != SumC && big_n >= 2 {
                out.push(Instance::congruent(format!("{label} unweighted"), sum, int(0), p, big_n - 1));
            }
        }
        CvsBernoulli => {
            let n = ctx.n()?;
            ctx.require(n == 1 || (n >= 2 && n % 2 == 0), "n = 1 or n even and positive")?;
            let b = bernoulli(n);
            let total: Rational = b.clone()
                + primes_up_to(n as u64 + 1)
                    .into_iter()
                    .filter(|q| n % (*q as usize - 1) == 0)
                    .map(|q| Rational::new(BigInt::one(), BigInt::from(q)))
                    .sum::<Rational>();
            // local form at each small prime, then the global statement
            for q in primes_up_to(n as u64 + 1) {
                let expected = if n % (q as usize - 1) == 0 { -1 } else { 0 };
                out.push(Instance::congruent(format!("{q}·B_{n}"), int(q) * &b, int(expected), q, 1));
            }
            out.push(Instance::exact(format!("denominator of B_{n} + Σ 1/p"), int(total.denom().clone()), int(1)));
        }
        CvsPolyB => {
            let (p, n, k) = (ctx.prime()?, ctx.n()?, ctx.k()?);
            ctx.require(k >= 2 && n >= 1, "k >= 2, n >= 1")?;
            ctx.require(k as u64 + 2 <= p && p <= n as u64 + 1, "k + 2 <= p <= n + 1")?;
            let x = pb(n, k);
            let pu = p as usize;
            if n % (pu - 1) == 0 {
                out.push(Instance::congruent(format!("p^k B_{}", sub_exp(n, k)), pow_signed(&int(p), k) * x, int(-1), p, 1));
            } else {
                let s = over_p(stirling2(n, pu - 1), p);
                let rhs = if n % (pu - 1) == 1 % (pu - 1) {
                    s - Rational::new(BigInt::from(n), BigInt::one() << k as usize)
                } else {
                    sign_pow(n as i64 - 1) * s
                };
                out.push(Instance::congruent(format!("p^(k-1) B_{}", sub_exp(n, k)), pow_signed(&int(p), k - 1) * x, rhs, p, 1));
            }
        }
        CvsCose | CvsCota => {
            let (p, n, k) = (ctx.odd_prime()?, ctx.n()?, ctx.k()?);
            ctx.require(k >= 2 && n >= 1, "k >= 2, n >= 1")?;
            ctx.require(k as u64 + 2 <= p && p <= 2 * n as u64 + 1, "k + 2 <= p <= 2n + 1")?;
            let (name, x) = if ctx.id == CvsCose { ("D", cosecant(2 * n, k)) } else { ("β", cotangent(2 * n, k)) };
            if (2 * n) % (p as usize - 1) == 0 {
                out.push(Instance::congruent(format!("p^k {name}_{}", sub_exp(2 * n, k)), pow_signed(&int(p), k) * x, int(-1), p, 1));
            } else {
                let mut rhs = cvs_cose_rhs(p, n);
                if ctx.id == CvsCota {
                    rhs += cvs_cota_extra(p, n);
                }
                out.push(Instance::congruent(format!("p^(k-1) {name}_{}", sub_exp(2 * n, k)), pow_signed(&int(p), k - 1) * x, rhs, p, 1));
            }
        }
        DenomOrder => {
            let (p, n) = (ctx.odd_prime()?, ctx.n()?);
            ctx.require(n >= 1, "n >= 1")?;
            let ord = |q: Rational| int(ord_p(&int(q.denom().clone()), p).expect("denominator is nonzero"));
            let b = ord(bernoulli(2 * n));
            out.push(Instance::exact(format!("ord_p d({})", 2 * n), ord(cosecant(2 * n, 1)), b.clone()));
            out.push(Instance::exact(format!("ord_p β̂({})", 2 * n), ord(cotangent(2 * n, 1)), b));
        }
        DualityB | DualityC | DualityCose | DualityCota => {
            let lmax = ctx.lmax()?;
            for m in 0..=lmax {
                for l in (m + 1)..=lmax {
                    let (mi, li) = (m as i64, l as i64);
                    let (label, lhs, rhs) = match ctx.id {
                        DualityB => (format!("B_{} = B_{}", sub_exp(m, -li), sub_exp(l, -mi)), pb(m, -li), pb(l, -mi)),
                        DualityC => (format!("C_{} = C_{}", sub_exp(m, -li - 1), sub_exp(l, -mi - 1)), pc(m, -li - 1), pc(l, -mi - 1)),
                        DualityCose => (
                            format!("D_{} = D_{}", sub_exp(2 * m, -2 * li - 1), sub_exp(2 * l, -2 * mi - 1)),
                            cosecant(2 * m, -2 * li - 1),
                            cosecant(2 * l, -2 * mi - 1),
                        ),
                        _ => (
                            format!("β_{} = β_{}", sub_exp(2 * m, -2 * li), sub_exp(2 * l, -2 * mi)),
                            cotangent(2 * m, -2 * li),
                            cotangent(2 * l, -2 * mi),
                        ),
                    };
                    out.push(Instance::exact(label, lhs, rhs));
                }
            }
        }
        DualitySymB | DualitySymCose => {
            let lmax = ctx.lmax()?;
            let nmax = ctx.nonneg("nmax", ctx.params.nmax.or(ctx.params.n))?;
            for n in 0..=nmax {
                for m in 0..=lmax {
                    for l in (m + 1)..=lmax {
                        let inst = if ctx.id == DualitySymB {
                            let f = |a, b| sym_poly_bernoulli(a, b, n, SymBernoulliMethod::Definition).map_err(compute);
                            Instance::exact(format!("ℬ_{}({n}) = ℬ_{}({n})", sub_exp(m, -(l as i64)), sub_exp(l, -(m as i64))), f(m, l)?, f(l, m)?)
                        } else {
                            let f = |a, b| sym_polycosecant(a, b, n, SymCosecantMethod::Definition).map_err(compute);
                            Instance::exact(
                                format!("𝒟_{}({n}) = 𝒟_{}({n})", sub_exp(2 * m, -2 * l as i64), sub_exp(2 * l, -2 * m as i64)),
                                f(2 * m, 2 * l)?,
                                f(2 * l, 2 * m)?,
                            )
                        };
                        out.push(inst);
                    }
                }
            }
        }
        VanishS1B => {
            let (n, m, k) = (ctx.n()?, ctx.m()?, ctx.k()?);
            // the sum is nonzero when n = m, e.g. k = 0, n = m = 1
            ctx.require(n < m, "0 <= n < m")?;
            let terms = alternating_s1(m, |j| pb(n, -k - j as i64));
            out.push(vanishing(format!("Σ_j (-1)^j s({},j+1) B_{}", m + 1, sub_exp(n, -k)), terms));
        }
        VanishS1BDouble => {
            let (n, m, k) = (ctx.n()?, ctx.m()?, ctx.k()?);
            ctx.require(n >= 1 && m >= n, "m >= n >= 1")?;
            let terms: Vec<Rational> = (0..=m)
                .map(|j| {
                    let weight: BigInt = (0..=j)
                        .map(|i| {
                            let s = stirling1(m + 2, i + 1);
                            if i % 2 == 0 {
                                s
                            } else {
                                -s
                            }
                        })
                        .sum();
                    int(weight) * pb(n, -k - j as i64)
                })
                .collect();
            out.push(vanishing(format!("Σ_(m>=j>=i>=0) (-1)^i s({},i+1) B_{}", m + 2, sub_exp(n, -k)), terms));
        }
        VanishS1C => {
            let (n, m, k) = (ctx.n()?, ctx.m()?, ctx.k()?);
            ctx.require(n >= 1 && m >= n, "m >= n >= 1")?;
            let terms = alternating_s1(m, |j| pc(n - 1, -k - j as i64));
            out.push(vanishing(format!("Σ_j (-1)^j s({},j+1) C_{}", m + 1, sub_exp(n - 1, -k)), terms));
        }
        VanishS1Cose | VanishS1Cota => {
            let (n, m, k) = (ctx.n()?, ctx.m()?, ctx.k()?);
            ctx.require(n >= 1, "n >= 1")?;
            // the sum is nonzero when m = 2n, e.g. k = 0, n = 1, m = 2
            ctx.require(m >= 2 * n + 1, "m >= 2n + 1")?;
            let (name, f): (&str, fn(usize, i64) -> Rational) =
                if ctx.id == VanishS1Cose { ("D", cosecant) } else { ("β", cotangent) };
            let terms = alternating_s1(m, |j| f(2 * n, -k - j as i64));
            out.push(vanishing(format!("Σ_j (-1)^j s({},j+1) {name}_{}", m + 1, sub_exp(2 * n, -k)), terms));
        }
        ConvEq5 => {
            let (n, k) = (ctx.n()?, ctx.k()?);
            let lhs = polycotangent(2 * n, k, CotangentMethod::Explicit).map_err(compute)?;
            let rhs = (0..=n).map(|i| int(binomial(2 * n, 2 * i)) * cosecant(2 * i, k)).sum();
            out.push(Instance::exact(format!("β_{}", sub_exp(2 * n, k)), lhs, rhs));
        }
        ConvEq6 => {
            let (n, k) = (ctx.n()?, ctx.k()?);
            let lhs = polycosecant(2 * n, k, CosecantMethod::Explicit).map_err(compute)?;
            let rhs = cosecant_from_cotangent(2 * n, k).map_err(compute)?;
            out.push(Instance::exact(format!("D_{}", sub_exp(2 * n, k)), lhs, rhs));
        }
        KShift => {
            let (n, k) = (ctx.n()?, ctx.k()?);
            let lhs = polycosecant(n, k - 1, CosecantMethod::Explicit).map_err(compute)?;
            out.push(Instance::exact(format!("D_{}", sub_exp(n, k - 1)), lhs, k_shift_recurrence(n, k)));
        }
        GfBivariate => {
            let lmax = ctx.lmax()?;
            let f = cosecant_bivariate(lmax, lmax);
            for n in 0..=lmax {
                for k in 0..=lmax {
                    let c = f.egf_coefficient(n, k).map_err(|e| compute(e.into()))?;
                    out.push(Instance::exact(format!("[t^{n} y^{k}] f = D_{}", sub_exp(n, -(k as i64))), c, cosecant(n, -(k as i64))));
                }
            }
        }
        GfSymB | GfSymCose => {
            let (n, lmax) = (ctx.n()?, ctx.lmax()?);
            if ctx.id == GfSymB {
                let g = sym_bernoulli_generating(n, lmax);
                for l in 0..=lmax {
                    for m in 0..=lmax {
                        let c = g.egf_coefficient(l, m).map_err(|e| compute(e.into()))?;
                        let v = sym_poly_bernoulli(m, l, n, SymBernoulliMethod::ClosedForm).map_err(compute)?;
                        out.push(Instance::exact(format!("[x^{l} y^{m}] = ℬ_{}({n})", sub_exp(m, -(l as i64))), c, v));
                    }
                }
            } else {
                let g = sym_cosecant_generating(n, lmax, lmax);
                for m in 0..=lmax {
                    for l in 0..=lmax {
                        let c = g.egf_coefficient(m, l).map_err(|e| compute(e.into()))?;
                        let v = sym_polycosecant(m, l, n, SymCosecantMethod::Definition).map_err(compute)?;
                        out.push(Instance::exact(format!("[t^{m} y^{l}] = 𝒟_{}({n})", sub_exp(m, -(l as i64))), c, v));
                    }
                }
            }
        }
        StirlingModP => {
            let (p, n) = (ctx.prime()?, ctx.n()?);
            let a = ctx.nonneg("a", ctx.params.a)?;
            ctx.require(n >= 1 && a >= 1, "n, a >= 1")?;
            let pu = p as usize;
            let col = a * pu - 1;
            let c = (n + 1)
                .checked_sub(a)
                .filter(|d| d % (pu - 1) == 0)
                .map(|d| d / (pu - 1))
                .filter(|&c| c >= a);
            let rhs = c.map_or(BigInt::zero(), |c| binomial(c - 1, a - 1));
            out.push(Instance::congruent(format!("S({n},{col})"), int(stirling2(n, col)), int(rhs), p, 1));
        }
        StirlingCong => {
            let (p, big_n, n, m) = (ctx.prime()?, ctx.big_n()?, ctx.n()?, ctx.m()?);
            let j = ctx.nonneg("j", ctx.params.j)?;
            let phi = ctx.phi(p, big_n) as usize;
            ctx.require(n >= big_n as usize && m >= big_n as usize, "m, n >= N")?;
            ctx.require(n.abs_diff(m) % phi == 0, format!("n ≡ m mod φ(p^N) = {phi}"))?;
            let f = |i: usize| int(factorial(j) * stirling2(i, j));
            out.push(Instance::congruent(format!("{j}! S({n},{j}) vs {j}! S({m},{j})"), f(n), f(m), p, big_n));
        }
    }
    Ok(out)
}

fn run(id: IdentityId, params: &Params, perturb: Option<usize>) -> VResult<Report> {
    let ctx = Ctx { id, params };
    let mut instances = build(&ctx)?;
    if let Some(index) = perturb {
        let count = instances.len();
        let inst = instances
            .get_mut(index)
            .ok_or(VerifyError::PerturbationOutOfRange { identity: id, index, count })?;
        inst.lhs += int(1);
    }
    let witnesses: Vec<Witness> = instances.iter().map(Instance::evaluate).collect();
    let verdict = if witnesses.iter().all(|w| w.holds) { Verdict::Pass } else { Verdict::Fail };
    Ok(Report { identity: id.name().to_string(), params: params.clone(), verdict, witnesses })
}

/// Evaluates every instance of `id` at `params`.
pub fn verify(id: IdentityId, params: &Params) -> VResult<Report> {
    run(id, params, None)
}

/// Same as [`verify`] with `1` added to the left side of instance `index`.
/// A sound verifier must then report a failure.
pub fn verify_perturbed(id: IdentityId, params: &Params, index: usize) -> VResult<Report> {
    run(id, params, Some(index))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pass(id: IdentityId, params: Params) -> Report {
        let report = verify(id, &params).unwrap_or_else(|e| panic!("{e}"));
        assert!(report.passed(), "{}", report.to_json());
        report
    }

    fn hypothesis(id: IdentityId, params: Params) {
        assert!(
            matches!(verify(id, &params), Err(VerifyError::HypothesisViolation { .. })),
            "{id} {params:?}"
        );
    }

    #[test]
    fn names_round_trip() {
        for &id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!("kummer-cose".parse::<IdentityId>().unwrap(), IdentityId::KummerCose);
        assert!("NOPE".parse::<IdentityId>().is_err());
    }

    #[test]
    fn kummer_cose_example() {
        let r = pass(IdentityId::KummerCose, Params::new().p(3).big_n(2).k(3).m(2).n(5));
        assert_eq!(r.witnesses[0].lhs, "121");
        assert_eq!(r.witnesses[0].rhs, "88573");
        assert_eq!(r.witnesses[0].lhs_residue.as_deref(), Some("4"));
        let r = pass(IdentityId::KummerCota, Params::new().p(3).big_n(2).k(3).m(2).n(5));
        assert_eq!(r.witnesses[0].rhs_residue.as_deref(), Some("2"));
    }

    #[test]
    fn sum_examples() {
        let r = pass(IdentityId::SumCose, Params::new().p(3).big_n(2).n(3).k(3));
        assert_eq!(r.witnesses[0].lhs_residue.as_deref(), Some("6"));
        let terms = r.witnesses[0].terms.as_ref().unwrap();
        assert_eq!(terms[..5], ["1093", "12160", "111721", "927424", "7256173"]);
        assert_eq!(terms[5], "54726400");
        let r = pass(IdentityId::SumCota, Params::new().p(3).big_n(2).n(3).k(3));
        assert_eq!(r.witnesses[0].lhs_residue.as_deref(), Some("3"));
    }

    #[test]
    fn vanish_example_terms() {
        let r = pass(IdentityId::VanishS1Cose, Params::new().k(-2).n(2).m(5));
        let terms = r.witnesses[0].terms.clone().unwrap();
        assert_eq!(terms, ["1408/15", "-1918/15", "0", "-85", "240", "-121"]);
        let r = pass(IdentityId::VanishS1Cota, Params::new().k(-2).n(2).m(5));
        assert_eq!(r.witnesses[0].terms.clone().unwrap(), ["-1592/15", "2192/15", "225", "-680", "615", "-200"]);
    }

    #[test]
    fn vanish_boundary_cases_are_nonzero() {
        // m = 2n and n = m fall outside the hypotheses because the sums do not vanish
        let s: Rational = alternating_s1(2, |j| cosecant(2, -(j as i64))).iter().sum();
        assert_ne!(s, Rational::zero());
        let s: Rational = alternating_s1(1, |j| poly_bernoulli(PolyBernoulliVariant::B, 1, -(j as i64))).iter().sum();
        assert_ne!(s, Rational::zero());
        hypothesis(IdentityId::VanishS1Cose, Params::new().k(0).n(1).m(2));
        hypothesis(IdentityId::VanishS1B, Params::new().k(0).n(1).m(1));
    }

    #[test]
    fn sum_polyb_needs_weight_at_least_n() {
        let p = 3u64;
        let phi = 6;
        let s: Rational = (0..phi).map(|i| poly_bernoulli(PolyBernoulliVariant::B, 2, -i)).sum();
        assert!(reduce_mod(&s, p, 2).unwrap().value != BigInt::zero());
        hypothesis(IdentityId::SumPolyB, Params::new().p(3).big_n(2).n(2).k(0));
        pass(IdentityId::SumPolyB, Params::new().p(3).big_n(2).n(2).k(2));
    }

    #[test]
    fn cvs_cose_example() {
        let r = pass(IdentityId::CvsCose, Params::new().p(5).k(2).n(4));
        assert_eq!(r.witnesses[0].lhs_residue.as_deref(), Some("4"));
    }

    #[test]
    fn cvs_cota_printed_extra_term_fails() {
        let (p, k, n) = (5u64, 2i64, 3usize);
        let lhs = pow_signed(&int(p), k - 1) * cotangent(2 * n, k);
        let fixed = cvs_cose_rhs(p, n) + cvs_cota_extra(p, n);
        let printed = cvs_cose_rhs(p, n) + cvs_cota_extra_as_printed(p, n);
        let r = |q: &Rational| reduce_mod(q, p, 1).unwrap();
        assert_eq!(r(&lhs), r(&fixed));
        assert_ne!(r(&lhs), r(&printed));
    }

    #[test]
    fn hypothesis_gates() {
        hypothesis(IdentityId::KummerBernoulli, Params::new().p(3).big_n(1).m(2).n(4));
        hypothesis(IdentityId::KummerCose, Params::new().p(3).big_n(2).k(3).m(2).n(4));
        hypothesis(IdentityId::KummerCose, Params::new().p(9).big_n(1).k(3).m(2).n(4));
        hypothesis(IdentityId::CvsCose, Params::new().p(3).k(2).n(4));
        hypothesis(IdentityId::SumCose, Params::new().p(3).big_n(2).n(1).k(1));
        assert!(matches!(
            verify(IdentityId::KummerCose, &Params::new().p(3)),
            Err(VerifyError::MissingParameter { name: "N", .. })
        ));
    }

    #[test]
    fn perturbation_flips_verdict() {
        let params = Params::new().p(3).big_n(2).k(3).m(2).n(5);
        let r = verify_perturbed(IdentityId::KummerCose, &params, 0).unwrap();
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(verify_perturbed(IdentityId::KummerCose, &params, 3).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = pass(IdentityId::KummerCose, Params::new().p(3).big_n(2).k(3).m(2).n(5));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["identity"], "KUMMER_COSE");
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["params"]["N"], 2);
        assert_eq!(v["witnesses"][0]["modulus"], "3^2");
        let back: Report = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn params_parse_from_json() {
        let p: Params = serde_json::from_str(r#"{"p":3,"N":2,"k":3,"m":2,"n":5}"#).unwrap();
        assert_eq!(p, Params::new().p(3).big_n(2).k(3).m(2).n(5));
        assert!(serde_json::from_str::<Params>(r#"{"q":1}"#).is_err());
    }

    #[test]
    fn small_spot_checks() {
        pass(IdentityId::PeriodCoseP1, Params::new().p(5).n(2));
        pass(IdentityId::TwoOrderCose, Params::new().n(3).k(2));
        pass(IdentityId::CvsBernoulli, Params::new().n(12));
        pass(IdentityId::CvsBernoulli, Params::new().n(1));
        pass(IdentityId::DenomOrder, Params::new().p(5).n(2));
        pass(IdentityId::StirlingModP, Params::new().p(5).a(1).n(8));
        pass(IdentityId::StirlingCong, Params::new().p(3).big_n(2).n(8).m(2).j(3));
        pass(IdentityId::KShift, Params::new().n(6).k(-2));
        pass(IdentityId::ConvEq5, Params::new().n(3).k(2));
        pass(IdentityId::ConvEq6, Params::new().n(3).k(-4));
        pass(IdentityId::KummerCoseRemark, Params::new().p(5).big_n(1).n(1).m(3));
        pass(IdentityId::GfBivariate, Params::new().lmax(5));
        pass(IdentityId::GfSymB, Params::new().n(2).lmax(4));
        pass(IdentityId::GfSymCose, Params::new().n(2).lmax(4));
    }
}
