//! Expression language for surreal numbers.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := integer | 'w' | 'ω' | ('eps' | 'ε') '[' expr ']'
//!          | ('exp' | 'ln' | 'leader') '(' expr ')' | '(' expr ')'
//!          | '{' [expr (',' expr)*] '|' [expr (',' expr)*] '}'
//! ```
//!
//! `w^x` is `ω^x` for any `x`; other bases take integer exponents only.
//! Braces build the simplest dyadic between finite dyadic options.
//! Everything printed by `Number`'s `Display` parses back to the same value.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::CliError;
use crate::explog;
use crate::surreal::{simplest_dyadic_game, Dyadic, Number, Rational};

/// An evaluated expression; `exact` is false once any step truncated a
/// series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Value {
    pub num: Number,
    pub exact: bool,
}

impl Value {
    fn exact(num: Number) -> Self {
        Value { num, exact: true }
    }

    fn with(self, num: Number, exact: bool) -> Self {
        Value {
            num,
            exact: self.exact && exact,
        }
    }
}

pub fn evaluate(src: &str, max_terms: usize) -> Result<Value, CliError> {
    let mut p = ExprParser {
        src,
        pos: 0,
        max_terms,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
    max_terms: usize,
}

impl ExprParser<'_> {
    fn err(&self, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Value, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let r = self.term()?;
                let n = acc.num.add(&r.num);
                acc = acc.with(n, r.exact);
            } else if self.eat('-') {
                let r = self.term()?;
                let n = acc.num.sub(&r.num);
                acc = acc.with(n, r.exact);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, CliError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let r = self.unary()?;
                let n = acc.num.mul(&r.num);
                acc = acc.with(n, r.exact);
            } else if self.eat('/') {
                let at = self.pos;
                let r = self.unary()?;
                let q = acc
                    .num
                    .divide(&r.num, self.max_terms)
                    .map_err(|e| CliError::Domain(format!("{e} (at {at})")))?;
                acc = acc.with(q.value, q.exact && r.exact);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, CliError> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(Value {
                num: v.num.neg(),
                exact: v.exact,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, CliError> {
        let start = self.pos;
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = self.unary()?;
        if base.num == Number::omega() {
            return Ok(base.with(Number::omega_pow(exp.num), exp.exact));
        }
        let n = exp
            .num
            .as_rational()
            .filter(|q| q.is_integer())
            .and_then(|q| q.to_integer().to_i64())
            .ok_or_else(|| CliError::Parse {
                pos: start,
                msg: "only w^x or integer powers are supported".into(),
            })?;
        let mut acc = Number::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base.num);
        }
        if n < 0 {
            let t = acc
                .invert(self.max_terms)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            return Ok(base.with(t.value, t.exact));
        }
        Ok(base.with(acc, exp.exact))
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let r = &self.src[self.pos..];
        let n = r
            .find(|c: char| !(c.is_ascii_alphabetic() || c == '_'))
            .unwrap_or(r.len());
        self.pos += n;
        &r[..n]
    }

    fn primary(&mut self) -> Result<Value, CliError> {
        let at = self.pos;
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('{') => self.game(),
            Some('ω') => {
                self.pos += 'ω'.len_utf8();
                Ok(Value::exact(Number::omega()))
            }
            Some('ε') => {
                self.pos += 'ε'.len_utf8();
                self.epsilon()
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rest();
                let n = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                let int: BigInt = r[..n].parse().expect("digits");
                self.pos += n;
                Ok(Value::exact(Number::from_rational(Rational::from_integer(
                    int,
                ))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let w = self.word().to_string();
                match w.as_str() {
                    "w" => Ok(Value::exact(Number::omega())),
                    "eps" => self.epsilon(),
                    "exp" | "ln" | "leader" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        self.apply(&w, arg)
                    }
                    _ => {
                        self.pos = at;
                        self.skip_ws();
                        Err(self.err(format!("unknown name '{w}'")))
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
        }
    }

    fn epsilon(&mut self) -> Result<Value, CliError> {
        self.expect('[')?;
        let idx = self.expr()?;
        self.expect(']')?;
        Ok(idx.clone().with(Number::epsilon(idx.num), true))
    }

    fn apply(&self, f: &str, arg: Value) -> Result<Value, CliError> {
        let domain = |e: explog::ExpLogError| CliError::Domain(format!("{f}: {e}"));
        match f {
            "exp" => {
                let t = explog::exp(&arg.num, self.max_terms).map_err(domain)?;
                Ok(arg.with(t.value, t.exact))
            }
            "ln" => {
                let t = explog::ln(&arg.num, self.max_terms).map_err(domain)?;
                Ok(arg.with(t.value, t.exact))
            }
            _ => {
                let l = explog::leader(&arg.num).map_err(domain)?;
                Ok(arg.with(l, true))
            }
        }
    }

    fn options(&mut self, close: char) -> Result<Vec<Dyadic>, CliError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            let at = self.pos;
            let v = self.expr()?;
            let q = v.num.as_rational().filter(|_| v.exact).ok_or_else(|| {
                CliError::Domain(format!("game option at {at} is not a dyadic rational"))
            })?;
            out.push(Dyadic::new(q).map_err(|e| CliError::Domain(e.to_string()))?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn game(&mut self) -> Result<Value, CliError> {
        self.expect('{')?;
        let left = self.options('|')?;
        let right = self.options('}')?;
        let d = simplest_dyadic_game(&left, &right).map_err(|e| CliError::Domain(e.to_string()))?;
        Ok(Value::exact(Number::from_rational(d.into())))
    }
}

/// The value as a count, if it is an exact non-negative integer.
pub fn as_count(v: &Value) -> Option<u64> {
    let q = v.num.as_rational().filter(|_| v.exact)?;
    (q.is_integer() && !q.is_negative()).then(|| q.to_integer().to_u64())?
}
