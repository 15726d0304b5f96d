//! Hereditarily finite sets over named atoms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SkandError;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
enum Kind {
    Atom(String),
    Set(Vec<SetTerm>),
}

/// A finite founded set expression. Elements are kept sorted and
/// deduplicated, so structural equality is extensional equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SetTerm(Kind);

impl SetTerm {
    pub fn atom(name: impl Into<String>) -> Self {
        SetTerm(Kind::Atom(name.into()))
    }

    pub fn empty() -> Self {
        SetTerm(Kind::Set(Vec::new()))
    }

    pub fn set(elements: impl IntoIterator<Item = SetTerm>) -> Self {
        let mut v: Vec<SetTerm> = elements.into_iter().collect();
        v.sort();
        v.dedup();
        SetTerm(Kind::Set(v))
    }

    /// `{x}`.
    pub fn singleton(x: SetTerm) -> Self {
        SetTerm(Kind::Set(vec![x]))
    }

    /// Kuratowski pair `{{a}, {a, b}}`.
    pub fn pair(a: SetTerm, b: SetTerm) -> Self {
        SetTerm::set([SetTerm::singleton(a.clone()), SetTerm::set([a, b])])
    }

    pub fn as_atom(&self) -> Option<&str> {
        match &self.0 {
            Kind::Atom(n) => Some(n),
            Kind::Set(_) => None,
        }
    }

    /// Elements of a set; `None` for an atom.
    pub fn elements(&self) -> Option<&[SetTerm]> {
        match &self.0 {
            Kind::Atom(_) => None,
            Kind::Set(v) => Some(v),
        }
    }

    pub fn is_empty_set(&self) -> bool {
        matches!(&self.0, Kind::Set(v) if v.is_empty())
    }

    pub fn contains(&self, x: &SetTerm) -> bool {
        self.elements().is_some_and(|v| v.binary_search(x).is_ok())
    }

    /// `self ∪ other` for two sets.
    pub fn union(&self, other: &SetTerm) -> Option<SetTerm> {
        let a = self.elements()?;
        let b = other.elements()?;
        Some(SetTerm::set(a.iter().chain(b).cloned()))
    }

    /// `self ∪ {x}`.
    pub fn with(&self, x: SetTerm) -> Option<SetTerm> {
        let a = self.elements()?;
        Some(SetTerm::set(a.iter().cloned().chain(std::iter::once(x))))
    }

    pub fn depth(&self) -> usize {
        match &self.0 {
            Kind::Atom(_) => 0,
            Kind::Set(v) => 1 + v.iter().map(SetTerm::depth).max().unwrap_or(0),
        }
    }

    /// Decodes a Kuratowski pair.
    pub fn as_pair(&self) -> Option<(&SetTerm, &SetTerm)> {
        let v = self.elements()?;
        match v {
            [only] => {
                let a = single(only)?;
                Some((a, a))
            }
            [x, y] => {
                let (s, d) = if x.elements()?.len() == 1 {
                    (x, y)
                } else {
                    (y, x)
                };
                let a = single(s)?;
                let dv = d.elements()?;
                if dv.len() != 2 || !dv.contains(a) {
                    return None;
                }
                let b = if dv[0] == *a { &dv[1] } else { &dv[0] };
                Some((a, b))
            }
            _ => None,
        }
    }

    /// Comma-separated elements without the outer braces.
    pub(crate) fn fmt_elements(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if let Some(v) = self.elements() {
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    f.write_char(',')?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

fn single(s: &SetTerm) -> Option<&SetTerm> {
    match s.elements()? {
        [a] => Some(a),
        _ => None,
    }
}

impl fmt::Display for SetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Kind::Atom(n) => f.write_str(n),
            Kind::Set(_) => {
                f.write_str("{")?;
                self.fmt_elements(f)?;
                f.write_str("}")
            }
        }
    }
}

pub(crate) fn is_atom_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Parses `{a,{b},{}}`-style terms starting at byte `pos` of `src`.
pub(crate) struct TermParser<'a> {
    pub src: &'a str,
    pub pos: usize,
}

impl<'a> TermParser<'a> {
    pub fn new(src: &'a str) -> Self {
        TermParser { src, pos: 0 }
    }

    pub fn err(&self, msg: impl Into<String>) -> SkandError {
        SkandError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), SkandError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn ident(&mut self) -> Result<&'a str, SkandError> {
        self.skip_ws();
        let r = self.rest();
        let n = r.find(|c: char| !is_atom_char(c)).unwrap_or(r.len());
        if n == 0 {
            return Err(self.err("expected an atom or '{'"));
        }
        self.pos += n;
        Ok(&r[..n])
    }

    pub fn term(&mut self) -> Result<SetTerm, SkandError> {
        match self.peek() {
            Some('{') => {
                self.pos += 1;
                let mut items = Vec::new();
                if !self.eat('}') {
                    loop {
                        items.push(self.term()?);
                        if self.eat('}') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                Ok(SetTerm::set(items))
            }
            Some('∅') => {
                self.pos += '∅'.len_utf8();
                Ok(SetTerm::empty())
            }
            _ => Ok(SetTerm::atom(self.ident()?)),
        }
    }
}

impl FromStr for SetTerm {
    type Err = SkandError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = TermParser::new(s);
        let t = p.term()?;
        if p.peek().is_some() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(t)
    }
}
