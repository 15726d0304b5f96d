//! Skands and coskands: transfinite nested tuples over an ordinal interval.
//!
//! A skand over the clutch region `[α₀, α)` is the set
//! `X = X_{α₀} ∪ {X|[α₀+1, α)}`, nesting downward through every position; a
//! coskand nests the other way. Both are stored as a start ordinal plus a
//! [`TransfiniteMap`] giving the component at each offset. Two skands are
//! equal exactly when their intervals have the same order type and the
//! components agree under the unique order isomorphism, which on canonical
//! maps is plain structural equality.

mod brace;
mod coskand;
mod encode;
mod map;
mod mirimanoff;
mod setterm;

use serde::Serialize;
use thiserror::Error;

use crate::ordinal::Ordinal;

pub use brace::{brace_coordinates, brace_parse, brace_render, Braced};
pub use coskand::{coskand_equal, coskand_kind, coskand_to_setterm, Coskand, CoskandKind};
pub use encode::{decode_skand, encode_skand};
pub use map::{Pattern, TransfiniteMap};
pub use mirimanoff::{is_solution, solve_mirimanoff, unfold_once, MirimanoffEquation};
pub use setterm::SetTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkandError {
    #[error("position {pos} outside the clutch region [{start}, {end})")]
    OutOfClutchRegion {
        pos: Ordinal,
        start: Ordinal,
        end: Ordinal,
    },
    #[error("period must be positive")]
    InvalidPeriod,
    #[error("a cycle needs at least one value")]
    EmptyCycle,
    #[error("clutch region is empty")]
    EmptyClutchRegion,
    #[error("length {0} is infinite")]
    InfiniteLength(Ordinal),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not a skand encoding: {0}")]
    Decode(String),
}

/// A skand `X_{[start, start + length)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Skand {
    start: Ordinal,
    map: TransfiniteMap,
}

impl Skand {
    pub fn new(start: Ordinal, map: TransfiniteMap) -> Self {
        Skand { start, map }
    }

    /// Every component equal to `v`, over `[0, length)`.
    pub fn constant(v: SetTerm, length: Ordinal) -> Result<Self, SkandError> {
        Ok(Skand::new(
            Ordinal::zero(),
            TransfiniteMap::constant(v, length)?,
        ))
    }

    /// The empty skand `e`: every component is `∅`.
    pub fn trivial(length: Ordinal) -> Result<Self, SkandError> {
        Skand::constant(SetTerm::empty(), length)
    }

    /// `values` repeated from every limit position, over `[0, length)`.
    pub fn cycle(values: Vec<SetTerm>, length: Ordinal) -> Result<Self, SkandError> {
        let map = TransfiniteMap::new(vec![(length, Pattern::cycle(values)?)])?;
        Ok(Skand::new(Ordinal::zero(), map))
    }

    pub fn start(&self) -> &Ordinal {
        &self.start
    }

    pub fn length(&self) -> Ordinal {
        self.map.length()
    }

    pub fn end(&self) -> Ordinal {
        self.start.add(&self.length())
    }

    pub fn map(&self) -> &TransfiniteMap {
        &self.map
    }

    /// The same skand moved to `[0, length)`.
    pub fn normalized(&self) -> Skand {
        Skand::new(Ordinal::zero(), self.map.clone())
    }

    fn offset_of(&self, pos: &Ordinal) -> Result<Ordinal, SkandError> {
        let out = || SkandError::OutOfClutchRegion {
            pos: pos.clone(),
            start: self.start.clone(),
            end: self.end(),
        };
        let rho = pos.sub_left(&self.start).map_err(|_| out())?;
        if rho >= self.length() {
            return Err(out());
        }
        Ok(rho)
    }

    /// The component `X_pos`.
    pub fn value_at(&self, pos: &Ordinal) -> Result<&SetTerm, SkandError> {
        let rho = self.offset_of(pos)?;
        Ok(self.map.value_at(&rho).expect("offset checked"))
    }

    /// The remainder `X|[from, end)`.
    pub fn restrict(&self, from: &Ordinal) -> Result<Skand, SkandError> {
        let rho = self.offset_of(from)?;
        let map = self.map.drop_front(&rho).expect("offset checked");
        Ok(Skand::new(from.clone(), map))
    }

    /// The initial part `X|[start, start + len)`.
    pub fn take(&self, len: &Ordinal) -> Result<Skand, SkandError> {
        let map = self
            .map
            .take_front(len)
            .ok_or_else(|| SkandError::OutOfClutchRegion {
                pos: self.start.add(len),
                start: self.start.clone(),
                end: self.end(),
            })?;
        Ok(Skand::new(self.start.clone(), map))
    }
}

/// Equality of skands: same order type and matching components.
pub fn skand_equal(x: &Skand, y: &Skand) -> bool {
    x.map == y.map
}

/// `X|[α₀+1, α) = X`: at least ω long and constant on the first ω positions.
pub fn is_reflexive(s: &Skand) -> bool {
    let bf = s.map.blocks();
    bf.runs
        .first()
        .is_some_and(|(_, b)| b.pure() && b.cycle.len() == 1)
}

/// Equal to every tail: the length is `ω^κ` with `κ ≥ 1` and the map is a
/// single constant.
pub fn is_self_similar(s: &Skand) -> bool {
    let len = s.length();
    let indecomposable = matches!(len.terms(), [(k, 1)] if !k.is_zero());
    indecomposable && matches!(s.map.segments(), [(_, Pattern::Constant(_))])
}

fn check_period(tau: &Ordinal) -> Result<(), SkandError> {
    if tau.is_zero() {
        Err(SkandError::InvalidPeriod)
    } else {
        Ok(())
    }
}

/// `X|[α′, α) = X|[α′ ⊕ τ, α)` for every `α′` in `[α₀, α₀ + ω^{ξ₁+1})`,
/// where `ω^{ξ₁}` is the leading power of `τ`. Minimality of `τ` is not
/// required; see [`min_finite_period`].
///
/// Finite periods are decided exactly on the block form. Transfinite periods
/// are checked literally on a finite grid of positions.
pub fn is_weakly_periodic(s: &Skand, tau: &Ordinal) -> Result<bool, SkandError> {
    check_period(tau)?;
    match tau.as_finite() {
        Some(n) => {
            let bf = s.map.blocks();
            Ok(bf
                .runs
                .first()
                .is_some_and(|(_, b)| b.pure() && n % b.cycle.len() as u64 == 0))
        }
        None => Ok(grid::weakly(s, tau)),
    }
}

/// Weakly periodic with the same `τ` from every position.
pub fn is_periodic(s: &Skand, tau: &Ordinal) -> Result<bool, SkandError> {
    check_period(tau)?;
    match tau.as_finite() {
        Some(n) => {
            let bf = s.map.blocks();
            Ok(bf.tail.is_empty()
                && !bf.runs.is_empty()
                && bf
                    .runs
                    .iter()
                    .all(|(_, b)| b.pure() && n % b.cycle.len() as u64 == 0))
        }
        None => Ok(grid::periodic(s, tau)),
    }
}

/// Periodic, and equal to its tail from every `α₀ + ω^{ξ₁+1}·κ`.
pub fn is_strictly_periodic(s: &Skand, tau: &Ordinal) -> Result<bool, SkandError> {
    if !is_periodic(s, tau)? {
        return Ok(false);
    }
    match tau.as_finite() {
        Some(_) => {
            let bf = s.map.blocks();
            // One run of D equal blocks; dropping κ < D blocks keeps D iff
            // D is 1 or a power of ω.
            Ok(match bf.runs.as_slice() {
                [(d, _)] => d.is_additively_indecomposable(),
                _ => false,
            })
        }
        None => Ok(grid::strict_tails(s, tau)),
    }
}

/// Smallest finite `n` with [`is_weakly_periodic`]`(s, n)`.
pub fn min_finite_period(s: &Skand) -> Option<u64> {
    let bf = s.map.blocks();
    let bound = bf.runs.first()?.1.cycle.len() as u64;
    (1..=bound).find(|&n| is_weakly_periodic(s, &Ordinal::finite(n)).unwrap_or(false))
}

/// Literal checks for transfinite periods over a finite sample of positions.
mod grid {
    use super::*;

    /// Offsets `< bound` whose Cantor terms use small coefficients and
    /// exponents from a fixed set.
    fn offsets(bound: &Ordinal, tau: &Ordinal) -> Vec<Ordinal> {
        let mut exps: Vec<Ordinal> = (0..=3).map(Ordinal::finite).collect();
        exps.extend(bound.terms().iter().map(|(e, _)| e.clone()));
        exps.extend(tau.terms().iter().map(|(e, _)| e.clone()));
        exps.sort_by(|a, b| b.cmp(a));
        exps.dedup();
        exps.truncate(5);
        let mut out = vec![Ordinal::zero()];
        for e in &exps {
            let mut next = Vec::new();
            for base in &out {
                for c in 0..=2u64 {
                    let o = base.add(&Ordinal::monomial(e.clone(), c));
                    if o < *bound {
                        next.push(o);
                    }
                }
            }
            next.sort();
            next.dedup();
            out = next;
        }
        out
    }

    fn span(tau: &Ordinal) -> Ordinal {
        let xi = tau.leading_exponent().expect("tau > 0");
        Ordinal::omega_pow(xi.succ())
    }

    pub fn weakly(s: &Skand, tau: &Ordinal) -> bool {
        let w = span(tau);
        if s.length() < w {
            return false;
        }
        let end = s.end();
        offsets(&w, tau).iter().all(|d| {
            let a = s.start.add(d);
            let b = a.nat_add(tau);
            b < end
                && skand_equal(
                    &s.restrict(&a).expect("inside"),
                    &s.restrict(&b).expect("inside"),
                )
        })
    }

    pub fn periodic(s: &Skand, tau: &Ordinal) -> bool {
        let w = span(tau);
        let xi1 = tau.leading_exponent().expect("tau > 0").succ();
        if !s.length().div_omega_pow(&xi1).1.is_zero() {
            return false;
        }
        offsets(&s.length(), tau)
            .iter()
            .all(|d| weakly(&s.restrict(&s.start.add(d)).expect("inside"), tau))
            && s.length() >= w
    }

    pub fn strict_tails(s: &Skand, tau: &Ordinal) -> bool {
        let w = span(tau);
        let (kappa, _) = s
            .length()
            .div_omega_pow(&tau.leading_exponent().expect("tau > 0").succ());
        offsets(&kappa, tau)
            .iter()
            .filter(|k| !k.is_zero())
            .all(|k| skand_equal(&s.restrict(&s.start.add(&w.mul(k))).expect("inside"), s))
    }
}
