//! Exponential and logarithm on normal forms.
//!
//! For `x = x′ + x″` with `x′` purely infinite and `x″` infinitesimal,
//! `exp(x) = ω^{x′/ω} · e^{x″}`, where `x′/ω` lowers every exponent by one.
//! Conversely for `y = ω^{z₀} · (1 + δ)`, `ln(y) = ω·z₀ + ln(1 + δ)`. Real
//! parts other than zero (and leading coefficients other than one) would need
//! transcendental constants and are rejected.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::surreal::{power_series, Number, Rational, TruncatedNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpLogError {
    #[error("real part {0} is not zero; e^r is outside the exact fragment")]
    RealPartNotZero(Rational),
    #[error("leading coefficient {0} is not 1; ln r is outside the exact fragment")]
    LeadingCoefficientNotOne(Rational),
    #[error("logarithm of a non-positive number")]
    NonPositive,
    #[error("leading exponent has a normal-form exponent at or below -1")]
    NotInDomain,
    #[error("leader of zero")]
    ZeroInput,
}

/// `x = purely_infinite + real_part + infinitesimal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub purely_infinite: Number,
    pub real_part: Rational,
    pub infinitesimal: Number,
}

pub fn decompose(x: &Number) -> Decomposition {
    let zero = Number::zero();
    let mut inf = Vec::new();
    let mut small = Vec::new();
    let mut real = Rational::zero();
    for (e, r) in x.terms() {
        match e.value().cmp(&zero) {
            std::cmp::Ordering::Greater => inf.push((e.clone(), r.clone())),
            std::cmp::Ordering::Less => small.push((e.clone(), r.clone())),
            std::cmp::Ordering::Equal => real = r.clone(),
        }
    }
    Decomposition {
        purely_infinite: Number::from_terms(inf),
        real_part: real,
        infinitesimal: Number::from_terms(small),
    }
}

fn factorial_recip(n: usize) -> Rational {
    let f: BigInt = (1..=n).map(BigInt::from).product();
    Rational::new(BigInt::one(), f)
}

/// `exp(x)` on the zero-real-part domain. The infinitesimal part contributes
/// the first `max_terms` terms of its power series.
pub fn exp(x: &Number, max_terms: usize) -> Result<TruncatedNumber, ExpLogError> {
    let d = decompose(x);
    if !d.real_part.is_zero() {
        return Err(ExpLogError::RealPartNotZero(d.real_part));
    }
    let lowered = d.purely_infinite.shift(&Number::from_int(-1));
    let head = Number::omega_pow(lowered);
    if d.infinitesimal.is_zero() {
        return Ok(TruncatedNumber::exact(head));
    }
    let n = max_terms.max(1);
    let series = power_series(&d.infinitesimal, n, factorial_recip);
    Ok(TruncatedNumber {
        value: head.mul(&series),
        exact: false,
        dropped_terms_bound: n,
    })
}

/// `true` iff `y > 0` and every exponent in the normal form of its leading
/// exponent exceeds `-1`.
pub fn in_ln_domain(y: &Number) -> bool {
    if y.signum() <= 0 {
        return false;
    }
    let minus_one = Number::from_int(-1);
    y.leading_exponent()
        .terms()
        .iter()
        .all(|(e, _)| e.value() > minus_one)
}

/// `ln(y)` for positive `y` with leading coefficient 1.
pub fn ln(y: &Number, max_terms: usize) -> Result<TruncatedNumber, ExpLogError> {
    if y.signum() <= 0 {
        return Err(ExpLogError::NonPositive);
    }
    let (z0, r0, delta) = y.peel().expect("positive number has a leading term");
    if !r0.is_one() {
        return Err(ExpLogError::LeadingCoefficientNotOne(r0));
    }
    if !in_ln_domain(y) {
        return Err(ExpLogError::NotInDomain);
    }
    let head = z0.shift(&Number::one());
    if delta.is_zero() {
        return Ok(TruncatedNumber::exact(head));
    }
    // ln(1+δ) = Σ_{n≥1} (-1)^{n+1} δⁿ / n; shift the index so the helper's
    // n = 0 term is the first power of δ.
    let n = max_terms.max(1);
    let tail = power_series(&delta, n + 1, |k| {
        if k == 0 {
            Rational::zero()
        } else {
            let s = if k % 2 == 1 { 1 } else { -1 };
            Rational::new(BigInt::from(s), BigInt::from(k))
        }
    });
    Ok(TruncatedNumber {
        value: head.add(&tail),
        exact: false,
        dropped_terms_bound: n + 1,
    })
}

/// `ω^{z₀}` for the leading exponent `z₀` of `y`.
pub fn leader(y: &Number) -> Result<Number, ExpLogError> {
    match y.leading() {
        None => Err(ExpLogError::ZeroInput),
        Some((e, _)) => Ok(Number::from_terms([(e.clone(), Rational::one())])),
    }
}

/// Whether `a` and `b` are commensurate: each is below some integer
/// multiple of the other, in absolute value.
pub fn commensurate(a: &Number, b: &Number) -> bool {
    match (a.leading(), b.leading()) {
        (Some((ea, _)), Some((eb, _))) => ea == eb,
        (None, None) => true,
        _ => false,
    }
}

/// Every exponent positive: the exact domain of [`exp`] and its image
/// under [`ln`].
pub fn is_purely_infinite(x: &Number) -> bool {
    x.terms().iter().all(|(e, _)| e.value().signum() > 0)
}
