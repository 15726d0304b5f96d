//! Ordinals below ε₀ in hereditary Cantor normal form.
//!
//! An [`Ordinal`] is a finite list of `(exponent, coefficient)` terms with
//! strictly decreasing exponents and positive coefficients. The empty list is
//! zero. Both the usual (left-absorbing) arithmetic and the Hessenberg natural
//! operations are provided.
//!
//! Text syntax: terms `w^E*c` joined by `+`, e.g. `w^2*3 + w + 5`. Exponents
//! other than plain integers or `w` are parenthesised: `w^(w+1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("prefix {prefix} exceeds total {total}")]
    PrefixTooLarge { total: Ordinal, prefix: Ordinal },
    #[error("malformed term list: {0}")]
    Malformed(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An ordinal `< ε₀` in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Ordinal, u64)>", into = "Vec<(Ordinal, u64)>")]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

/// Structural classification of an ordinal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrdinalClass {
    pub is_zero: bool,
    pub is_limit: bool,
    pub is_successor: bool,
    pub is_additively_indecomposable: bool,
    pub is_main: bool,
}

impl TryFrom<Vec<(Ordinal, u64)>> for Ordinal {
    type Error = OrdinalError;

    fn try_from(terms: Vec<(Ordinal, u64)>) -> Result<Self, Self::Error> {
        Ordinal::from_terms(terms)
    }
}

impl From<Ordinal> for Vec<(Ordinal, u64)> {
    fn from(o: Ordinal) -> Self {
        o.terms
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::finite(1)
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal {
            terms: vec![(e, 1)],
        }
    }

    /// `ω^e · c`.
    pub fn monomial(e: Ordinal, c: u64) -> Self {
        if c == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(e, c)],
            }
        }
    }

    /// Builds an ordinal from already-normal terms, rejecting anything that
    /// is not strictly decreasing or has a zero coefficient.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        for (i, (e, c)) in terms.iter().enumerate() {
            if *c == 0 {
                return Err(OrdinalError::Malformed(format!(
                    "zero coefficient at term {i}"
                )));
            }
            if i > 0 && terms[i - 1].0 <= *e {
                return Err(OrdinalError::Malformed(format!(
                    "exponents not strictly decreasing at term {i}"
                )));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Coefficient of `ω^0`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.finite_part() == 0
    }

    pub fn is_successor(&self) -> bool {
        self.finite_part() > 0
    }

    /// `ω^μ` for some μ (including `1 = ω^0`).
    pub fn is_additively_indecomposable(&self) -> bool {
        matches!(self.terms.as_slice(), [(_, 1)])
    }

    pub fn classify(&self) -> OrdinalClass {
        let indec = self.is_additively_indecomposable();
        let is_main = indec
            && self
                .leading_exponent()
                .is_some_and(|e| !e.is_zero() && e.is_additively_indecomposable());
        OrdinalClass {
            is_zero: self.is_zero(),
            is_limit: self.is_limit(),
            is_successor: self.is_successor(),
            is_additively_indecomposable: indec,
            is_main,
        }
    }

    /// `self + 1`.
    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// The usual ordinal sum: terms of `self` below the leading exponent of
    /// `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lc)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => {
                    terms.push((e.clone(), checked(c.checked_add(*lc))));
                    terms.extend(other.terms[1..].iter().cloned());
                    return Ordinal { terms };
                }
                Ordering::Less => break,
            }
        }
        terms.extend(other.terms.iter().cloned());
        Ordinal { terms }
    }

    /// The usual (left-distributive) ordinal product.
    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        if self.is_zero() || other.is_zero() {
            return Ordinal::zero();
        }
        let (lead, lc) = &self.terms[0];
        let mut acc = Ordinal::zero();
        for (f, d) in &other.terms {
            let piece = if f.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 = checked(lc.checked_mul(*d));
                Ordinal { terms }
            } else {
                Ordinal::monomial(lead.add(f), *d)
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// Hessenberg natural sum: merge the term lists.
    pub fn nat_add(&self, other: &Ordinal) -> Ordinal {
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
                    terms.push((a[i].0.clone(), checked(a[i].1.checked_add(b[j].1))));
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(a[i..].iter().cloned());
        terms.extend(b[j..].iter().cloned());
        Ordinal { terms }
    }

    /// Hessenberg natural product: distribute, adding exponents naturally.
    pub fn nat_mul(&self, other: &Ordinal) -> Ordinal {
        let mut acc = Ordinal::zero();
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                acc = acc.nat_add(&Ordinal::monomial(e.nat_add(f), checked(c.checked_mul(*d))));
            }
        }
        acc
    }

    /// The unique `ρ` with `prefix + ρ = self`, i.e. the order type of
    /// `[prefix, self)`.
    pub fn sub_left(&self, prefix: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let too_large = || OrdinalError::PrefixTooLarge {
            total: self.clone(),
            prefix: prefix.clone(),
        };
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let Some((pe, pc)) = prefix.terms.get(i) else {
                return Ok(Ordinal {
                    terms: self.terms[i..].to_vec(),
                });
            };
            match e.cmp(pe) {
                Ordering::Greater => {
                    return Ok(Ordinal {
                        terms: self.terms[i..].to_vec(),
                    })
                }
                Ordering::Less => return Err(too_large()),
                Ordering::Equal => match c.cmp(pc) {
                    Ordering::Greater => {
                        let mut terms = vec![(e.clone(), c - pc)];
                        terms.extend(self.terms[i + 1..].iter().cloned());
                        return Ok(Ordinal { terms });
                    }
                    Ordering::Less => return Err(too_large()),
                    Ordering::Equal => {}
                },
            }
        }
        if prefix.terms.len() > self.terms.len() {
            Err(too_large())
        } else {
            Ok(Ordinal::zero())
        }
    }

    /// Splits `self = ω·q + k` with `k` finite.
    pub fn div_omega(&self) -> (Ordinal, u64) {
        let k = self.finite_part();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| !e.is_zero())
            .map(|(e, c)| {
                (
                    e.sub_left(&Ordinal::one()).expect("exponent is at least 1"),
                    *c,
                )
            })
            .collect();
        (Ordinal { terms }, k)
    }

    /// `ω · self`.
    pub fn omega_times(&self) -> Ordinal {
        Ordinal::omega().mul(self)
    }

    /// Splits `self = ω^ν · q + r` with `r < ω^ν`; returns `(q, r)`.
    pub fn div_omega_pow(&self, nu: &Ordinal) -> (Ordinal, Ordinal) {
        let mut q = Vec::new();
        let mut r = Vec::new();
        for (e, c) in &self.terms {
            if e >= nu {
                q.push((e.sub_left(nu).expect("e >= nu"), *c));
            } else {
                r.push((e.clone(), *c));
            }
        }
        (Ordinal { terms: q }, Ordinal { terms: r })
    }

    /// Depth of exponent nesting; zero has height 0, finite nonzero ordinals 1.
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| 1 + e.height())
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("ordinals always serialise")
    }
}

fn checked(v: Option<u64>) -> u64 {
    v.expect("ordinal coefficient overflowed u64")
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let o = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if *e == Ordinal::one() {
                write!(f, "w")?;
            } else if e.as_finite().is_some() || *e == Ordinal::omega() {
                write!(f, "w^{e}")?;
            } else {
                write!(f, "w^({e})")?;
            }
            if *c != 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = OrdParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let o = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(o)
    }
}

/// Recursive-descent parser for the CNF text syntax. Accepts `w` or `ω`.
/// Non-normal input such as `1 + w` is evaluated with ordinal addition.
struct OrdParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl OrdParser<'_> {
    fn err(&self, msg: &str) -> OrdinalError {
        OrdinalError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_omega(&mut self) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'w') {
            self.pos += 1;
            true
        } else if self.src[self.pos..].starts_with("ω".as_bytes()) {
            self.pos += "ω".len();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| OrdinalError::Parse {
                pos: start,
                msg: "natural number out of range".into(),
            })
    }

    fn sum(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        let base = if self.eat(b'(') {
            let inner = self.sum()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            inner
        } else if self.eat_omega() {
            let e = if self.eat(b'^') {
                self.exponent()?
            } else {
                Ordinal::one()
            };
            Ordinal::omega_pow(e)
        } else {
            Ordinal::finite(self.nat()?)
        };
        let mut acc = base;
        while self.eat(b'*') {
            let rhs = if self.eat(b'(') {
                let inner = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                inner
            } else if self.eat_omega() {
                let e = if self.eat(b'^') {
                    self.exponent()?
                } else {
                    Ordinal::one()
                };
                Ordinal::omega_pow(e)
            } else {
                Ordinal::finite(self.nat()?)
            };
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Ordinal, OrdinalError> {
        if self.eat(b'(') {
            let inner = self.sum()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            Ok(inner)
        } else if self.eat_omega() {
            let e = if self.eat(b'^') {
                self.exponent()?
            } else {
                Ordinal::one()
            };
            Ok(Ordinal::omega_pow(e))
        } else {
            Ok(Ordinal::finite(self.nat()?))
        }
    }
}
