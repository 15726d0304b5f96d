//! Symbols of infinity for catalogued transfinite sequences, the jump
//! calculus for limit ordinals, and the left-right nested-halving
//! construction.
//!
//! A [`GapLabel`] names a Dedekind gap of the number line by a sign and an
//! index number. It deliberately has no arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ordinal::Ordinal;
use crate::surreal::simplest_between;
use crate::surreal::{Dyadic, Number, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("sequence descriptor outside the supported catalogue: {0}")]
    UnsupportedDescriptor(String),
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
    #[error("{0} is not of the form w^mu with mu >= 1")]
    NotIndecomposable(Ordinal),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn of(x: &Number) -> Sign {
        if x.signum() < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// `±∞_c`. Index 0 is the degenerate label of the empty set's bounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GapLabel {
    pub sign: Sign,
    pub index: Number,
}

impl GapLabel {
    pub fn new(sign: Sign, index: Number) -> Self {
        GapLabel { sign, index }
    }

    /// Label whose sign follows its index.
    fn signed(index: Number) -> Self {
        GapLabel {
            sign: Sign::of(&index),
            index,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.index.is_zero()
    }
}

impl fmt::Display for GapLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}inf[{}]", self.sign.as_char(), self.index)
    }
}

/// Which way the varying part of a sequence is applied to its base `b`.
pub type Direction = Sign;

/// A finitely described monotone transfinite sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqDescriptor {
    /// `(α)_{α<λ}`.
    OrdinalRamp(Ordinal),
    /// `(b ± α)_{α<length}`.
    AddRamp {
        base: Number,
        direction: Direction,
        length: Ordinal,
    },
    /// `(b ± 1/2^α)_{α<ω}`.
    DyadicRamp { base: Number, direction: Direction },
    /// `(b ± 2^α/ω)_{α<ω}`.
    GeometricRamp { base: Number, direction: Direction },
    /// `(1/α)_{0<α<λ}`.
    HarmonicRamp(Ordinal),
    /// `(b ± 1/(2^α·ω))_{α<ω}`.
    ScaledHarmonic { base: Number, direction: Direction },
}

fn unsupported(s: &SeqDescriptor, why: &str) -> GapError {
    GapError::UnsupportedDescriptor(format!("{s:?}: {why}"))
}

fn all_exponents_above(b: &Number, bound: &Number, inclusive: bool) -> bool {
    b.terms().iter().all(|(e, _)| {
        let v = e.value();
        if inclusive {
            v >= *bound
        } else {
            v > *bound
        }
    })
}

/// Canonical left and right options of a dyadic: the nearest older numbers
/// on each side.
fn dyadic_parents(r: &Rational) -> (Option<Rational>, Option<Rational>) {
    if r.is_integer() {
        let one = Rational::one();
        let left = r.is_positive().then(|| r - &one);
        let right = r.is_negative().then(|| r + &one);
        (left, right)
    } else {
        let step = Rational::new(BigInt::one(), r.denom().clone());
        (Some(r - &step), Some(r + &step))
    }
}

/// The label of the gap determined by a catalogued sequence.
pub fn gap_of(s: &SeqDescriptor) -> Result<GapLabel, GapError> {
    let omega = Number::omega();
    match s {
        SeqDescriptor::OrdinalRamp(l) => {
            if !l.is_limit() {
                return Err(unsupported(s, "length must be a limit ordinal"));
            }
            Ok(GapLabel::new(Sign::Plus, Number::from_ordinal(l)))
        }
        SeqDescriptor::AddRamp {
            base,
            direction,
            length,
        } => {
            if *length != Ordinal::omega() {
                return Err(unsupported(s, "only omega-length ramps are catalogued"));
            }
            // b = r·ω with r dyadic, or b = 0.
            let r = if base.is_zero() {
                Rational::zero()
            } else {
                let (e, c) = base.leading().expect("nonzero");
                if base.terms().len() != 1 || e.value() != Number::one() {
                    return Err(unsupported(s, "base must be a dyadic multiple of w"));
                }
                c.clone()
            };
            if Dyadic::new(r.clone()).is_err() {
                return Err(unsupported(s, "base must be a dyadic multiple of w"));
            }
            let (lp, rp) = dyadic_parents(&r);
            let m = match direction {
                Sign::Plus => simplest_between(Some(&r), rp.as_ref()),
                Sign::Minus => simplest_between(lp.as_ref(), Some(&r)),
            };
            Ok(GapLabel::signed(omega.scale(&m)))
        }
        SeqDescriptor::DyadicRamp { base, direction } => {
            if !all_exponents_above(base, &Number::from_int(-1), false) {
                return Err(unsupported(s, "base exponents must exceed -1"));
            }
            let step = Number::omega_pow(Number::from_int(-1));
            Ok(GapLabel::signed(shifted(base, &step, *direction)))
        }
        SeqDescriptor::ScaledHarmonic { base, direction } => {
            if !all_exponents_above(base, &Number::from_int(-2), false) {
                return Err(unsupported(s, "base exponents must exceed -2"));
            }
            let step = Number::omega_pow(Number::from_int(-2));
            Ok(GapLabel::signed(shifted(base, &step, *direction)))
        }
        SeqDescriptor::GeometricRamp { base, direction } => {
            let half = Number::from_rational(Rational::new(BigInt::from(-1), BigInt::from(2)));
            if !all_exponents_above(base, &half, true) {
                return Err(unsupported(s, "base exponents must be at least -1/2"));
            }
            Ok(GapLabel::signed(shifted(
                base,
                &Number::omega_pow(half),
                *direction,
            )))
        }
        SeqDescriptor::HarmonicRamp(l) => {
            if !l.is_limit() || l.terms().len() != 1 {
                return Err(unsupported(s, "length must be a single-term limit ordinal"));
            }
            let inv = Number::from_ordinal(l).invert(1).expect("nonzero ordinal");
            debug_assert!(inv.exact);
            Ok(GapLabel::new(Sign::Plus, inv.value))
        }
    }
}

fn shifted(base: &Number, step: &Number, d: Direction) -> Number {
    match d {
        Sign::Plus => base.add(step),
        Sign::Minus => base.sub(step),
    }
}

/// Coarse magnitude class of a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Magnitude {
    Infinitesimal,
    Finite,
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Zero,
    Positive(Magnitude),
    Negative(Magnitude),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sign, m) = match self {
            Classification::Zero => return write!(f, "zero"),
            Classification::Positive(m) => ("positive", m),
            Classification::Negative(m) => ("negative", m),
        };
        let m = match m {
            Magnitude::Infinitesimal => "infinitesimal",
            Magnitude::Finite => "finite",
            Magnitude::Infinite => "infinite",
        };
        write!(f, "{sign} {m}")
    }
}

pub fn classify(x: &Number) -> Classification {
    let Some((_, r)) = x.leading() else {
        return Classification::Zero;
    };
    let m = match x.leading_exponent().signum() {
        1 => Magnitude::Infinite,
        0 => Magnitude::Finite,
        _ => Magnitude::Infinitesimal,
    };
    if r.is_positive() {
        Classification::Positive(m)
    } else {
        Classification::Negative(m)
    }
}

/// One line of a jump census: `count` limit ordinals up to λ end in a jump
/// of size `jump_size = ω^ν`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub jump_size: Ordinal,
    pub count: Ordinal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JumpReport {
    pub lambda: Ordinal,
    pub embeddable: bool,
    pub translation_invariant: bool,
    pub tails_same_type: bool,
    /// `None` when λ's leading exponent is infinite, where the census has
    /// infinitely many jump sizes.
    pub census: Option<Vec<CensusEntry>>,
}

/// Jump structure below a limit ordinal λ.
///
/// The limit ordinals `γ ≤ λ` whose last Cantor term is `ω^ν·c` are exactly
/// `ω^ν·ζ` for successor `ζ`, so their order type is the quotient of λ by
/// `ω^ν`.
pub fn jump_report(lambda: &Ordinal) -> Result<JumpReport, GapError> {
    if !lambda.is_limit() {
        return Err(GapError::NotLimit(lambda.clone()));
    }
    let indec = lambda.is_additively_indecomposable();
    let lead = lambda.leading_exponent().expect("nonzero").clone();
    let census = lead.as_finite().map(|e| {
        (1..=e)
            .map(|nu| {
                let nu = Ordinal::finite(nu);
                let (count, _) = lambda.div_omega_pow(&nu);
                CensusEntry {
                    jump_size: Ordinal::omega_pow(nu),
                    count,
                }
            })
            .collect()
    });
    Ok(JumpReport {
        lambda: lambda.clone(),
        embeddable: indec,
        translation_invariant: indec,
        tails_same_type: indec,
        census,
    })
}

/// `x > κ` for every ordinal `κ < μ`.
pub fn exceeds_all_ordinals_below(x: &Number, mu: &Ordinal) -> bool {
    let Some((last_e, last_c)) = mu.terms().last() else {
        return true;
    };
    if last_e.is_zero() {
        // μ = μ' + 1: the largest ordinal below is μ'.
        let prev = Ordinal::from_terms(
            mu.terms()[..mu.terms().len() - 1]
                .iter()
                .cloned()
                .chain((*last_c > 1).then(|| (Ordinal::zero(), last_c - 1)))
                .collect(),
        )
        .expect("prefix of a normal form");
        return *x > Number::from_ordinal(&prev);
    }
    // μ = μ' + ω^ε with ε ≥ 1: compare x - μ' against everything below ω^ε.
    let mut head = mu.terms().to_vec();
    let last = head.pop().expect("nonempty");
    if last.1 > 1 {
        head.push((last.0.clone(), last.1 - 1));
    }
    let mu_prime = Ordinal::from_terms(head).expect("prefix of a normal form");
    let z = x.sub(&Number::from_ordinal(&mu_prime));
    z.signum() > 0 && exceeds_all_ordinals_below(&z.leading_exponent(), &last.0)
}

fn indecomposable_exponent(lambda: &Ordinal) -> Result<Ordinal, GapError> {
    match lambda.terms() {
        [(mu, 1)] if !mu.is_zero() => Ok(mu.clone()),
        _ => Err(GapError::NotIndecomposable(lambda.clone())),
    }
}

fn in_band(y: &Number, mu: &Ordinal) -> bool {
    y < &Number::from_ordinal(mu) && exceeds_all_ordinals_below(y, mu)
}

/// Whether `b` lies in the interval `(+∞_λ, +∞_{λ/2})` for `λ = ω^μ`: `b` is
/// positive and its leading exponent lies in the band `(μ-1, μ)` (successor
/// μ) or above every ordinal below μ and under μ (limit μ). This interval is
/// closed under `b ± α` for all `α < λ`.
pub fn in_jump_interior(b: &Number, lambda: &Ordinal) -> Result<bool, GapError> {
    let mu = indecomposable_exponent(lambda)?;
    Ok(b.signum() > 0 && in_band(&b.leading_exponent(), &mu))
}

/// The stricter representative condition: every exponent of `b` lies in the
/// band. Such `b` index the disjoint subintervals `(+∞_{c-}, +∞_{c+})` that
/// tile the jump interior.
pub fn is_band_representative(b: &Number, lambda: &Ordinal) -> Result<bool, GapError> {
    let mu = indecomposable_exponent(lambda)?;
    Ok(b.signum() > 0 && b.terms().iter().all(|(e, _)| in_band(&e.value(), &mu)))
}

/// The nested halving `[0,1] ⊃ [½,1] ⊃ [½,¾] ⊃ [⅝,¾] ⊃ …` read off as left
/// endpoints `L_k = ((4^k-1)/3)/2^{2k-1}` and right endpoints
/// `R_k = ((2·4^k+1)/3)/2^{2k}`, `k < steps`.
pub fn left_right_construct(steps: usize) -> (Vec<Dyadic>, Vec<Dyadic>) {
    let mut left = Vec::with_capacity(steps);
    let mut right = Vec::with_capacity(steps);
    for k in 0..steps as u32 {
        let four_k = BigInt::from(4).pow(k);
        let yl = (&four_k - 1) / 3;
        let yr = (BigInt::from(2) * &four_k + 1) / 3;
        // 2^{2k-1} with k = 0 giving 1/2; yl = 0 there anyway.
        let l = if k == 0 {
            Rational::zero()
        } else {
            Rational::new(yl, BigInt::one() << (2 * k - 1))
        };
        let r = Rational::new(yr, BigInt::one() << (2 * k));
        left.push(Dyadic::new(l).expect("power-of-two denominator"));
        right.push(Dyadic::new(r).expect("power-of-two denominator"));
    }
    (left, right)
}
