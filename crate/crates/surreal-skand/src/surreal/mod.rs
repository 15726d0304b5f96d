//! Surreal numbers in finite Conway normal form.
//!
//! A [`Number`] is a finite sum `Σ ω^{y_i} · r_i` with strictly decreasing
//! exponents `y_i` and nonzero rational coefficients `r_i`. Exponents are
//! themselves numbers, or ε-atoms `ε_a` standing for the fixed points of
//! `x ↦ ω^x`. The term `ω^{ε_a}` is stored as the atom itself, so `ε_a` has the
//! single normal-form term `(ε_a, 1)`.

mod dyadic;

pub(crate) use dyadic::simplest_between;
pub use dyadic::{birthday, real_limit_from_sequences, simplest_dyadic_game, Dyadic};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::ordinal::Ordinal;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurrealError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("ill-formed game: a left option is not below every right option")]
    IllFormedGame,
    #[error("no convergence detected within {0} iterations")]
    NoConvergenceDetected(usize),
    #[error("{0} is not a dyadic rational")]
    NotDyadic(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

/// An exponent slot: either an ordinary number or an ε-atom.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Exponent {
    Num(Number),
    /// `ε_a` for the contained index `a`.
    Eps(Number),
}

/// A surreal number in normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Number {
    terms: Vec<(Exponent, Rational)>,
}

/// Result of an operation that may only produce a prefix of an infinite
/// normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedNumber {
    pub value: Number,
    pub exact: bool,
    /// When inexact, the power `N` of the leading correction at which the
    /// series was cut: every omitted term lies strictly below the produced
    /// ones, at or under `N` times the leading correction exponent.
    pub dropped_terms_bound: usize,
}

impl TruncatedNumber {
    pub fn exact(value: Number) -> Self {
        TruncatedNumber {
            value,
            exact: true,
            dropped_terms_bound: 0,
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Exponent {
    /// Wraps a number as an exponent, folding `ω^{ε_a}` into `ε_a`.
    pub fn from_number(x: Number) -> Exponent {
        if x.terms.len() == 1 && x.terms[0].1.is_one() {
            if let Exponent::Eps(a) = &x.terms[0].0 {
                return Exponent::Eps(a.clone());
            }
        }
        Exponent::Num(x)
    }

    /// The number this exponent denotes.
    pub fn value(&self) -> Number {
        match self {
            Exponent::Num(x) => x.clone(),
            Exponent::Eps(a) => Number::epsilon(a.clone()),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Exponent::Num(x) if x.is_zero())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Num(a), Exponent::Num(b)) => a.cmp(b),
            (Exponent::Eps(a), Exponent::Eps(b)) => a.cmp(b),
            (Exponent::Eps(_), Exponent::Num(b)) => self.value().cmp(b),
            (Exponent::Num(a), Exponent::Eps(_)) => a.cmp(&other.value()),
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Number {
    pub fn zero() -> Self {
        Number { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Number::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Number::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            Number::zero()
        } else {
            Number {
                terms: vec![(Exponent::Num(Number::zero()), q)],
            }
        }
    }

    pub fn omega() -> Self {
        Number::omega_pow(Number::one())
    }

    /// `ω^x`, a single term with coefficient 1.
    pub fn omega_pow(x: Number) -> Self {
        Number {
            terms: vec![(Exponent::from_number(x), Rational::one())],
        }
    }

    /// `ω^x · r`.
    pub fn monomial(x: Number, r: Rational) -> Self {
        if r.is_zero() {
            Number::zero()
        } else {
            Number {
                terms: vec![(Exponent::from_number(x), r)],
            }
        }
    }

    /// `ε_a`.
    pub fn epsilon(a: Number) -> Self {
        Number {
            terms: vec![(Exponent::Eps(a), Rational::one())],
        }
    }

    /// Embeds an ordinal by copying its Cantor normal form.
    pub fn from_ordinal(a: &Ordinal) -> Self {
        Number {
            terms: a
                .terms()
                .iter()
                .map(|(e, c)| {
                    (
                        Exponent::Num(Number::from_ordinal(e)),
                        Rational::from_integer(BigInt::from(*c)),
                    )
                })
                .collect(),
        }
    }

    /// Builds a number from arbitrary terms: sorts, merges equal exponents
    /// and drops zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut v: Vec<(Exponent, Rational)> = terms
            .into_iter()
            .map(|(e, r)| {
                let e = match e {
                    Exponent::Num(x) => Exponent::from_number(x),
                    eps => eps,
                };
                (e, r)
            })
            .collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Exponent, Rational)> = Vec::with_capacity(v.len());
        for (e, r) in v {
            match out.last_mut() {
                Some((le, lr)) if *le == e => *lr += r,
                _ => out.push((e, r)),
            }
        }
        out.retain(|(_, r)| !r.is_zero());
        Number { terms: out }
    }

    pub fn terms(&self) -> &[(Exponent, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.terms.first() {
            None => 0,
            Some((_, r)) if r.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// The exponent-0 coefficient when the number is a plain rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(e, r)] if e.is_zero() => Some(r.clone()),
            _ => None,
        }
    }

    /// Back to an ordinal when the normal form is one.
    pub fn as_ordinal(&self) -> Option<Ordinal> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, r) in &self.terms {
            let Exponent::Num(x) = e else { return None };
            if !r.is_integer() || !r.is_positive() {
                return None;
            }
            terms.push((x.as_ordinal()?, r.to_integer().to_u64()?));
        }
        Ordinal::from_terms(terms).ok()
    }

    pub fn leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.first().map(|(e, r)| (e, r))
    }

    /// Leading exponent as a number (`0` for the zero number).
    pub fn leading_exponent(&self) -> Number {
        self.terms
            .first()
            .map(|(e, _)| e.value())
            .unwrap_or_default()
    }

    /// Exponent-0 coefficient.
    pub fn real_part(&self) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e.is_zero())
            .map(|(_, r)| r.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn neg(&self) -> Number {
        Number {
            terms: self.terms.iter().map(|(e, r)| (e.clone(), -r)).collect(),
        }
    }

    pub fn add(&self, other: &Number) -> Number {
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let r = &a[i].1 + &b[j].1;
                    if !r.is_zero() {
                        terms.push((a[i].0.clone(), r));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(a[i..].iter().cloned());
        terms.extend(b[j..].iter().cloned());
        Number { terms }
    }

    pub fn sub(&self, other: &Number) -> Number {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Number {
        if r.is_zero() {
            return Number::zero();
        }
        Number {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &Number) -> Number {
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e, r) in &self.terms {
            let ev = e.value();
            for (f, s) in &other.terms {
                products.push((Exponent::from_number(ev.add(&f.value())), r * s));
            }
        }
        Number::from_terms(products)
    }

    /// Multiplies by `ω^x`: adds `x` to every exponent.
    pub fn shift(&self, x: &Number) -> Number {
        Number {
            terms: self
                .terms
                .iter()
                .map(|(e, r)| (Exponent::from_number(e.value().add(x)), r.clone()))
                .collect(),
        }
    }

    /// Keeps only the terms with exponent strictly above `cut`.
    pub fn truncate_above(&self, cut: &Number) -> Number {
        Number {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.value() > *cut)
                .cloned()
                .collect(),
        }
    }

    /// Splits `x = ω^e · r · (1 + δ)`; returns `(e, r, δ)`.
    pub fn peel(&self) -> Option<(Number, Rational, Number)> {
        let (e, r) = self.terms.first()?;
        let ev = e.value();
        let neg = ev.neg();
        let inv_r = r.recip();
        let delta = Number {
            terms: self.terms[1..]
                .iter()
                .map(|(f, s)| (Exponent::from_number(f.value().add(&neg)), s * &inv_r))
                .collect(),
        };
        Some((ev, r.clone(), delta))
    }

    /// `1/x` as a normal-form prefix of at most `max_terms` series powers.
    pub fn invert(&self, max_terms: usize) -> Result<TruncatedNumber, SurrealError> {
        let (e, r, delta) = self.peel().ok_or(SurrealError::DivisionByZero)?;
        let scale = |x: Number| x.shift(&e.neg()).scale(&r.recip());
        if delta.is_zero() {
            return Ok(TruncatedNumber::exact(scale(Number::one())));
        }
        let n = max_terms.max(1);
        let series = power_series(&delta.neg(), n, |_| Rational::one());
        Ok(TruncatedNumber {
            value: scale(series),
            exact: false,
            dropped_terms_bound: n,
        })
    }

    pub fn divide(
        &self,
        other: &Number,
        max_terms: usize,
    ) -> Result<TruncatedNumber, SurrealError> {
        let inv = other.invert(max_terms)?;
        let value = self.mul(&inv.value);
        if inv.exact || self.is_zero() {
            return Ok(TruncatedNumber::exact(value));
        }
        // Product of a finite sum with a truncated series: only the terms
        // above the cut of the worst-aligned summand are reliable.
        let (_, _, delta) = other.peel().expect("nonzero divisor");
        let n = inv.dropped_terms_bound;
        let cut = self.leading_exponent().sub(&other.leading_exponent()).add(
            &delta
                .leading_exponent()
                .scale(&Rational::from_integer(BigInt::from(n))),
        );
        Ok(TruncatedNumber {
            value: value.truncate_above(&cut),
            exact: false,
            dropped_terms_bound: n,
        })
    }

    /// Whether the number is a plain integer.
    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_integer())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, r)| {
                    let ej = match e {
                        Exponent::Num(x) => x.to_json(),
                        Exponent::Eps(a) => json!({ "eps": a.to_json() }),
                    };
                    json!([ej, [r.numer().to_string(), r.denom().to_string()]])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Number, SurrealError> {
        let bad = |m: &str| SurrealError::Json(m.to_string());
        let arr = v
            .as_array()
            .ok_or_else(|| bad("expected an array of terms"))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let pair = t
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad("term must be a pair"))?;
            let e = match &pair[0] {
                Value::Object(m) => {
                    let idx = m.get("eps").ok_or_else(|| bad("unknown exponent object"))?;
                    Exponent::Eps(Number::from_json(idx)?)
                }
                other => Exponent::from_number(Number::from_json(other)?),
            };
            let nd = pair[1]
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad("coefficient must be [num, den]"))?;
            let int = |x: &Value| -> Result<BigInt, SurrealError> {
                match x {
                    Value::String(s) => s.parse().map_err(|_| bad("bad integer")),
                    Value::Number(n) => n.to_string().parse().map_err(|_| bad("bad integer")),
                    _ => Err(bad("bad integer")),
                }
            };
            let den = int(&nd[1])?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            let r = Rational::new(int(&nd[0])?, den);
            if r.is_zero() {
                return Err(bad("zero coefficient"));
            }
            terms.push((e, r));
        }
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(bad("exponents must strictly decrease"));
            }
        }
        Ok(Number { terms })
    }
}

/// `Σ_{n<N} c(n)·xⁿ` for an infinitesimal `x`, keeping only the terms with
/// exponent above `N·lead(x)` so that the result is an exact prefix of the
/// full series.
pub(crate) fn power_series(x: &Number, n_terms: usize, coef: impl Fn(usize) -> Rational) -> Number {
    let cut = x
        .leading_exponent()
        .scale(&Rational::from_integer(BigInt::from(n_terms)));
    let mut acc = Number::zero();
    let mut power = Number::one();
    for n in 0..n_terms {
        acc = acc.add(&power.scale(&coef(n)));
        power = power.mul(x).truncate_above(&cut);
        if power.is_zero() {
            break;
        }
    }
    acc.truncate_above(&cut)
}

impl Ord for Number {
    fn cmp(&self, other: &Self) -> Ordering {
        let sign = |r: &Rational| {
            if r.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        };
        for (a, b) in self.terms.iter().zip(&other.terms) {
            match a.0.cmp(&b.0) {
                Ordering::Greater => return sign(&a.1),
                Ordering::Less => return sign(&b.1).reverse(),
                Ordering::Equal => match a.1.cmp(&b.1) {
                    Ordering::Equal => {}
                    o => return o,
                },
            }
        }
        let n = self.terms.len().min(other.terms.len());
        match (self.terms.get(n), other.terms.get(n)) {
            (Some((_, r)), None) => sign(r),
            (None, Some((_, r))) => sign(r).reverse(),
            _ => Ordering::Equal,
        }
    }
}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `nf_cmp`: the total order on normal forms.
pub fn nf_cmp(a: &Number, b: &Number) -> Ordering {
    a.cmp(b)
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_exponent_base(x: &Number) -> String {
    match x.as_rational() {
        Some(q) if q.is_integer() && !q.is_negative() => fmt_rational(&q),
        _ => format!("({x})"),
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                Exponent::Num(x) if x.is_zero() => write!(f, "{}", fmt_rational(r))?,
                Exponent::Num(x) => {
                    if x.is_one() {
                        write!(f, "w*{}", fmt_rational(r))?;
                    } else {
                        write!(f, "w^{}*{}", fmt_exponent_base(x), fmt_rational(r))?;
                    }
                }
                Exponent::Eps(a) => {
                    write!(f, "eps[{a}]")?;
                    if !r.is_one() {
                        write!(f, "*{}", fmt_rational(r))?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Number {
    fn is_one(&self) -> bool {
        *self == Number::one()
    }
}

impl fmt::Debug for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Number({self})")
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Num(x) => write!(f, "{x}"),
            Exponent::Eps(a) => write!(f, "eps[{a}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Number {
        Number::omega()
    }
    fn n(k: i64) -> Number {
        Number::from_int(k)
    }
    fn q(a: i64, b: i64) -> Number {
        Number::from_rational(rat(a, b))
    }
    fn eps0() -> Number {
        Number::epsilon(Number::zero())
    }

    #[test]
    fn comparisons() {
        assert_eq!(nf_cmp(&w(), &w().sub(&n(1))), Ordering::Greater);
        let inv_w = Number::omega_pow(n(-1));
        assert_eq!(nf_cmp(&inv_w, &Number::zero()), Ordering::Greater);
        assert_eq!(
            nf_cmp(&Number::omega_pow(q(1, 2)), &w().scale(&rat(1, 2))),
            Ordering::Less
        );
        assert!(eps0() > Number::omega_pow(Number::omega_pow(w())));
        assert!(eps0().sub(&n(1)) < eps0());
        assert!(Number::epsilon(n(1)) > Number::omega_pow(eps0().add(&n(1))));
    }

    #[test]
    fn addition_and_products() {
        assert_eq!(q(1, 2).add(&q(1, 2)), n(1));
        assert_eq!(w().add(&n(1)).to_string(), "w*1 + 1");
        assert_eq!(eps0().add(&n(-1)).to_string(), "eps[0] + -1");
        assert_eq!(w().mul(&w()), Number::omega_pow(n(2)));
        let we = w().mul(&eps0());
        assert_eq!(we, Number::omega_pow(n(1).add(&eps0())));
        assert!(we > eps0());
        assert_eq!(q(1, 2).mul(&w()).to_string(), "w*1/2");
        let a = w().add(&n(1));
        let b = w().sub(&n(1));
        assert_eq!(a.mul(&b).to_string(), "w^2*1 + -1");
    }

    #[test]
    fn omega_powers_and_embeddings() {
        assert_eq!(Number::omega_pow(eps0()), eps0());
        assert_eq!(Number::omega_pow(Number::zero()), n(1));
        assert_eq!(Number::omega_pow(q(1, 2)).to_string(), "w^(1/2)*1");
        let o: Ordinal = "w*2+1".parse().unwrap();
        assert_eq!(Number::from_ordinal(&o).to_string(), "w*2 + 1");
        assert_eq!(Number::from_ordinal(&o).as_ordinal(), Some(o));
        assert_eq!(q(2, 3).to_string(), "2/3");
    }

    #[test]
    fn inversion() {
        let t = w().invert(1).unwrap();
        assert!(t.exact);
        assert_eq!(t.value, Number::omega_pow(n(-1)));
        let t = w().add(&n(1)).invert(4).unwrap();
        assert!(!t.exact);
        let expected = Number::from_terms((1..=4).map(|k| {
            (
                Exponent::Num(n(-k)),
                rat(if k % 2 == 1 { 1 } else { -1 }, 1),
            )
        }));
        assert_eq!(t.value, expected);
        assert_eq!(n(2).invert(1).unwrap().value, q(1, 2));
        assert_eq!(Number::zero().invert(3), Err(SurrealError::DivisionByZero));
    }

    #[test]
    fn json_round_trip() {
        let x = eps0()
            .scale(&rat(-3, 7))
            .add(&w())
            .add(&Number::omega_pow(q(-1, 2)));
        let j = x.to_json();
        assert_eq!(Number::from_json(&j).unwrap(), x);
        assert!(Number::from_json(&serde_json::json!([[[], ["1", "0"]]])).is_err());
    }
}
