//! An injective founded-set code for skands.
//!
//! A skand over `[0, L)` becomes the set of pairs
//! `⟨pattern code, ⟨start code, end code⟩⟩`, one per canonical segment.
//! Pattern codes are `⟨0, v⟩` for a constant and `⟨1, {⟨i, vᵢ⟩}⟩` for a
//! cycle. An ordinal is coded as the set of pairs `⟨exponent code,
//! coefficient code⟩` of its Cantor terms; a natural number as the set of its
//! binary digit positions, each a Zermelo numeral.

use super::{Pattern, SetTerm, Skand, SkandError, TransfiniteMap};
use crate::ordinal::Ordinal;

fn zermelo(n: u64) -> SetTerm {
    (0..n).fold(SetTerm::empty(), |acc, _| SetTerm::singleton(acc))
}

fn nat_code(n: u64) -> SetTerm {
    SetTerm::set((0..64).filter(|i| n >> i & 1 == 1).map(zermelo))
}

fn ord_code(o: &Ordinal) -> SetTerm {
    SetTerm::set(
        o.terms()
            .iter()
            .map(|(e, c)| SetTerm::pair(ord_code(e), nat_code(*c))),
    )
}

fn pattern_code(p: &Pattern) -> SetTerm {
    match p {
        Pattern::Constant(v) => SetTerm::pair(nat_code(0), v.clone()),
        Pattern::Cycle(vs) => SetTerm::pair(
            nat_code(1),
            SetTerm::set(
                vs.iter()
                    .enumerate()
                    .map(|(i, v)| SetTerm::pair(nat_code(i as u64), v.clone())),
            ),
        ),
    }
}

/// The code of the skand moved to `[0, L)`; equal codes mean equal skands.
pub fn encode_skand(s: &Skand) -> SetTerm {
    let mut at = Ordinal::zero();
    let mut out = Vec::new();
    for (len, pat) in s.map().segments() {
        let next = at.add(len);
        out.push(SetTerm::pair(
            pattern_code(pat),
            SetTerm::pair(ord_code(&at), ord_code(&next)),
        ));
        at = next;
    }
    SetTerm::set(out)
}

fn bad(what: &str) -> SkandError {
    SkandError::Decode(what.to_string())
}

fn elements(t: &SetTerm) -> Result<&[SetTerm], SkandError> {
    t.elements()
        .ok_or_else(|| bad("expected a set, found an atom"))
}

fn pair(t: &SetTerm) -> Result<(&SetTerm, &SetTerm), SkandError> {
    t.as_pair().ok_or_else(|| bad("expected an ordered pair"))
}

fn zermelo_decode(t: &SetTerm) -> Result<u64, SkandError> {
    let mut n = 0;
    let mut cur = t;
    loop {
        match elements(cur)? {
            [] => return Ok(n),
            [x] => {
                n += 1;
                cur = x;
            }
            _ => return Err(bad("malformed numeral")),
        }
    }
}

fn nat_decode(t: &SetTerm) -> Result<u64, SkandError> {
    elements(t)?.iter().try_fold(0u64, |acc, bit| {
        let i = zermelo_decode(bit)?;
        if i >= 64 {
            return Err(bad("numeral too large"));
        }
        Ok(acc | 1 << i)
    })
}

fn ord_decode(t: &SetTerm) -> Result<Ordinal, SkandError> {
    let mut terms = elements(t)?
        .iter()
        .map(|p| {
            let (e, c) = pair(p)?;
            Ok((ord_decode(e)?, nat_decode(c)?))
        })
        .collect::<Result<Vec<_>, SkandError>>()?;
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    Ordinal::from_terms(terms).map_err(|e| SkandError::Decode(e.to_string()))
}

fn pattern_decode(t: &SetTerm) -> Result<Pattern, SkandError> {
    let (tag, payload) = pair(t)?;
    match nat_decode(tag)? {
        0 => Ok(Pattern::Constant(payload.clone())),
        1 => {
            let mut vs = elements(payload)?
                .iter()
                .map(|p| {
                    let (i, v) = pair(p)?;
                    Ok((nat_decode(i)?, v.clone()))
                })
                .collect::<Result<Vec<_>, SkandError>>()?;
            vs.sort_by_key(|(i, _)| *i);
            if vs.iter().enumerate().any(|(k, (i, _))| *i != k as u64) {
                return Err(bad("cycle indices are not 0..n"));
            }
            Pattern::cycle(vs.into_iter().map(|(_, v)| v).collect())
        }
        _ => Err(bad("unknown pattern tag")),
    }
}

/// Inverse of [`encode_skand`]; the result starts at 0.
pub fn decode_skand(t: &SetTerm) -> Result<Skand, SkandError> {
    let mut segs = elements(t)?
        .iter()
        .map(|seg| {
            let (p, iv) = pair(seg)?;
            let (a, b) = pair(iv)?;
            Ok((ord_decode(a)?, ord_decode(b)?, pattern_decode(p)?))
        })
        .collect::<Result<Vec<_>, SkandError>>()?;
    segs.sort_by(|x, y| x.0.cmp(&y.0));
    let mut at = Ordinal::zero();
    let mut out = Vec::new();
    for (a, b, p) in segs {
        if a != at {
            return Err(bad("segments do not tile the interval"));
        }
        let len = b
            .sub_left(&a)
            .map_err(|_| bad("segment ends before it starts"))?;
        out.push((len, p));
        at = b;
    }
    Ok(Skand::new(Ordinal::zero(), TransfiniteMap::new(out)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }
    fn t(s: &str) -> SetTerm {
        s.parse().unwrap()
    }

    #[test]
    fn numerals() {
        for n in [0, 1, 2, 5, 64, 1000, u64::MAX] {
            assert_eq!(nat_decode(&nat_code(n)).unwrap(), n);
        }
        for s in ["0", "1", "w", "w^2*3 + w + 5", "w^(w+1)*2 + 7"] {
            assert_eq!(ord_decode(&ord_code(&o(s))).unwrap(), o(s));
        }
    }

    #[test]
    fn round_trip_and_injectivity() {
        let e = Skand::trivial(o("w")).unwrap();
        let code = encode_skand(&e);
        let expected = SetTerm::singleton(SetTerm::pair(
            SetTerm::pair(SetTerm::empty(), SetTerm::empty()),
            SetTerm::pair(ord_code(&o("0")), ord_code(&o("w"))),
        ));
        assert_eq!(code, expected);
        assert_eq!(decode_skand(&code).unwrap(), e);
        let a = Skand::constant(t("{a}"), o("w")).unwrap();
        let b = Skand::constant(t("{b}"), o("w")).unwrap();
        assert_ne!(encode_skand(&a), encode_skand(&b));
        let c = Skand::cycle(vec![t("x"), t("{y}"), t("{}")], o("w^2+3")).unwrap();
        assert_eq!(decode_skand(&encode_skand(&c)).unwrap(), c);
        assert!(decode_skand(&t("{a}")).is_err());
    }
}
