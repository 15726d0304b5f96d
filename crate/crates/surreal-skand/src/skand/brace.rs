//! Brace notation for skands and coskands, and the map from braces to
//! surreal coordinates.
//!
//! Two text forms share one grammar:
//!
//! ```text
//! {1,{1,{1,{...}}}} @ [0, w)                 preview: nested levels, then `{...}`
//! {{{}}} @ [0, 3) coskand                     complete finite nesting
//! const({a}) for w; cycle(1,{2}) for w^2 @ [0, w^2 + w)
//! ```
//!
//! In a preview each level lists the component's elements followed by the
//! next level. After an ellipsis the shown components are read as the
//! shortest cycle that reproduces them, repeated over the whole interval.
//! The renderer emits a preview only when it parses back to the same value
//! and falls back to the segment form otherwise.

use std::fmt::Write;

use super::setterm::{is_atom_char, TermParser};
use super::{Coskand, Pattern, SetTerm, Skand, SkandError, TransfiniteMap};
use crate::ordinal::Ordinal;
use crate::surreal::Number;

/// A parsed brace expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Braced {
    Skand(Skand),
    Coskand(Coskand),
}

impl Braced {
    pub fn start(&self) -> &Ordinal {
        match self {
            Braced::Skand(s) => s.start(),
            Braced::Coskand(c) => c.start(),
        }
    }

    pub fn length(&self) -> Ordinal {
        self.map().length()
    }

    pub fn map(&self) -> &TransfiniteMap {
        match self {
            Braced::Skand(s) => s.map(),
            Braced::Coskand(c) => c.map(),
        }
    }

    fn is_coskand(&self) -> bool {
        matches!(self, Braced::Coskand(_))
    }

    fn build(start: Ordinal, map: TransfiniteMap, coskand: bool) -> Braced {
        if coskand {
            Braced::Coskand(Coskand::new(start, map))
        } else {
            Braced::Skand(Skand::new(start, map))
        }
    }
}

impl From<Skand> for Braced {
    fn from(s: Skand) -> Self {
        Braced::Skand(s)
    }
}

impl From<Coskand> for Braced {
    fn from(c: Coskand) -> Self {
        Braced::Coskand(c)
    }
}

fn write_level_open(out: &mut String, comp: &SetTerm) {
    out.push('{');
    comp.fmt_elements(out).expect("writing to a String");
}

fn preview(b: &Braced, depth: usize) -> Option<String> {
    let len = b.length();
    let shown = len
        .as_finite()
        .map_or(depth, |n| n.min(depth as u64) as usize);
    let complete = len.as_finite().is_some_and(|n| n as usize <= depth);
    if b.is_coskand() && !complete {
        return None;
    }
    let mut comps: Vec<&SetTerm> = (0..shown as u64)
        .map(|i| b.map().value_at(&Ordinal::finite(i)).expect("inside"))
        .collect();
    if comps.iter().any(|c| c.as_atom().is_some()) {
        return None;
    }
    if b.is_coskand() {
        comps.reverse();
    }
    let mut out = String::new();
    for (i, c) in comps.iter().enumerate() {
        write_level_open(&mut out, c);
        let last = i + 1 == comps.len();
        if !(last && complete) {
            if c.elements().is_some_and(|v| !v.is_empty()) {
                out.push(',');
            }
            if last {
                out.push_str("{...}");
            }
        }
    }
    out.push_str(&"}".repeat(comps.len()));
    Some(out)
}

fn segments_form(b: &Braced) -> String {
    let mut out = String::new();
    for (i, (len, pat)) in b.map().segments().iter().enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        match pat {
            Pattern::Constant(v) => write!(out, "const({v})"),
            Pattern::Cycle(vs) => {
                let items: Vec<String> = vs.iter().map(ToString::to_string).collect();
                write!(out, "cycle({})", items.join(","))
            }
        }
        .expect("writing to a String");
        write!(out, " for {len}").expect("writing to a String");
    }
    out
}

fn suffix(b: &Braced) -> String {
    let mut s = format!(" @ [{}, {})", b.start(), b.start().add(&b.length()));
    if b.is_coskand() {
        s.push_str(" coskand");
    }
    s
}

/// Text form of a skand or coskand showing at most `depth` nesting levels.
pub fn brace_render(b: &Braced, depth: usize) -> String {
    let depth = depth.max(1);
    if let Some(p) = preview(b, depth) {
        let text = p + &suffix(b);
        if brace_parse(&text).as_ref() == Ok(b) {
            return text;
        }
    }
    segments_form(b) + &suffix(b)
}

enum Raw {
    Term(SetTerm),
    Group(Vec<Raw>),
    Ellipsis,
}

fn raw(p: &mut TermParser) -> Result<Raw, SkandError> {
    if p.peek() != Some('{') {
        return p.term().map(Raw::Term);
    }
    p.pos += 1;
    if p.eat_str("...") || p.eat_str("…") {
        p.expect('}')?;
        return Ok(Raw::Ellipsis);
    }
    let mut items = Vec::new();
    if !p.eat('}') {
        loop {
            items.push(raw(p)?);
            if p.eat('}') {
                break;
            }
            p.expect(',')?;
        }
    }
    Ok(Raw::Group(items))
}

fn to_term(r: Raw, p: &TermParser) -> Result<SetTerm, SkandError> {
    match r {
        Raw::Term(t) => Ok(t),
        Raw::Group(v) => Ok(SetTerm::set(
            v.into_iter()
                .map(|x| to_term(x, p))
                .collect::<Result<Vec<_>, _>>()?,
        )),
        Raw::Ellipsis => Err(p.err("ellipsis inside a component")),
    }
}

/// Components of a preview, outermost level first, and whether it ended in
/// an ellipsis.
fn levels(
    top: Raw,
    finite: Option<u64>,
    p: &TermParser,
) -> Result<(Vec<SetTerm>, bool), SkandError> {
    let mut comps = Vec::new();
    let mut node = top;
    loop {
        let items = match node {
            Raw::Ellipsis => return Ok((comps, true)),
            Raw::Group(items) => items,
            Raw::Term(_) => return Err(p.err("expected a nested level")),
        };
        if finite == Some(comps.len() as u64 + 1) {
            comps.push(to_term(Raw::Group(items), p)?);
            return Ok((comps, false));
        }
        let mut items = items;
        let next = items
            .pop()
            .ok_or_else(|| p.err("level has no nested level"))?;
        comps.push(to_term(Raw::Group(items), p)?);
        node = next;
    }
}

fn ordinal_until(p: &mut TermParser, stops: &[char]) -> Result<Ordinal, SkandError> {
    p.skip_ws();
    let rest = p.rest();
    let n = rest.find(|c| stops.contains(&c)).unwrap_or(rest.len());
    let text = &rest[..n];
    let at = p.pos;
    let o = text
        .trim()
        .parse::<Ordinal>()
        .map_err(|e| SkandError::Parse {
            pos: at,
            msg: e.to_string(),
        })?;
    p.pos += n;
    Ok(o)
}

fn segment(p: &mut TermParser) -> Result<(Ordinal, Pattern), SkandError> {
    let kw = p.ident()?;
    p.expect('(')?;
    let mut vals = vec![p.term()?];
    while p.eat(',') {
        vals.push(p.term()?);
    }
    p.expect(')')?;
    let pat = match kw {
        "const" if vals.len() == 1 => Pattern::Constant(vals.pop().expect("one value")),
        "const" => return Err(p.err("const takes one value")),
        "cycle" => Pattern::cycle(vals)?,
        _ => return Err(p.err(format!("unknown segment kind '{kw}'"))),
    };
    if p.ident()? != "for" {
        return Err(p.err("expected 'for'"));
    }
    Ok((ordinal_until(p, &[';', '@'])?, pat))
}

/// Parses either text form; see the module docs.
pub fn brace_parse(text: &str) -> Result<Braced, SkandError> {
    let mut p = TermParser::new(text);
    enum Body {
        Preview(Raw),
        Segments(Vec<(Ordinal, Pattern)>),
    }
    let body = if p.peek() == Some('{') {
        Body::Preview(raw(&mut p)?)
    } else {
        let mut segs = vec![segment(&mut p)?];
        while p.eat(';') {
            segs.push(segment(&mut p)?);
        }
        Body::Segments(segs)
    };
    p.expect('@')?;
    p.expect('[')?;
    let start = ordinal_until(&mut p, &[','])?;
    p.expect(',')?;
    let end = ordinal_until(&mut p, &[')'])?;
    p.expect(')')?;
    let coskand = p.peek().is_some_and(is_atom_char) && {
        let at = p.pos;
        let kw = p.ident()?;
        if kw != "coskand" {
            p.pos = at;
            return Err(p.err("expected 'coskand' or end of input"));
        }
        true
    };
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    let len = end
        .sub_left(&start)
        .map_err(|_| p.err("interval end precedes start"))?;
    if len.is_zero() {
        return Err(SkandError::EmptyClutchRegion);
    }
    let map = match body {
        Body::Segments(segs) => {
            let map = TransfiniteMap::new(segs)?;
            if map.length() != len {
                return Err(p.err(format!(
                    "segments cover {} but the interval has length {len}",
                    map.length()
                )));
            }
            map
        }
        Body::Preview(top) => {
            let (mut comps, ellipsis) = levels(top, len.as_finite(), &p)?;
            if ellipsis {
                if coskand {
                    return Err(p.err("coskand previews must be complete"));
                }
                let k = comps.len();
                if k == 0 {
                    return Err(p.err("no components before the ellipsis"));
                }
                let period = (1..=k)
                    .find(|&q| (q..k).all(|i| comps[i] == comps[i - q]))
                    .expect("q = k works");
                comps.truncate(period);
                TransfiniteMap::new(vec![(len, Pattern::cycle(comps)?)])?
            } else {
                if coskand {
                    comps.reverse();
                }
                TransfiniteMap::new(
                    comps
                        .into_iter()
                        .map(|c| (Ordinal::one(), Pattern::Constant(c)))
                        .collect(),
                )?
            }
        }
    };
    Ok(Braced::build(start, map, coskand))
}

/// Surreal coordinates of the first `prefix` brace pairs. A skand's brace
/// at `α′` sits at `(-1/α′, 1/α′)`, a coskand's at `(-α′, α′)`; position 0
/// uses `(-2, 2)` and `(-1/2, 1/2)` respectively. Reciprocals of ordinals
/// that are not monomials are truncated to eight terms.
pub fn brace_coordinates(b: &Braced, prefix: usize) -> Vec<(Number, Number)> {
    let end = b.start().add(&b.length());
    let mut out = Vec::new();
    let mut pos = b.start().clone();
    while out.len() < prefix && pos < end {
        let x = Number::from_ordinal(&pos);
        let c = match (b.is_coskand(), pos.is_zero()) {
            (false, true) => Number::from_int(2),
            (true, true) => Number::from_rational(crate::surreal::rat(1, 2)),
            (false, false) => x.invert(8).expect("nonzero").value,
            (true, false) => x,
        };
        out.push((c.neg(), c));
        pos = pos.succ();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surreal::rat;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }
    fn t(s: &str) -> SetTerm {
        s.parse().unwrap()
    }

    #[test]
    fn previews() {
        let one = Braced::from(Skand::constant(t("{1}"), o("w")).unwrap());
        assert_eq!(brace_render(&one, 3), "{1,{1,{1,{...}}}} @ [0, w)");
        let e = Braced::from(Coskand::trivial(o("3")).unwrap());
        assert_eq!(brace_render(&e, 4), "{{{}}} @ [0, 3) coskand");
        let ex3 = brace_parse("{1,{2,{3,{1,{...}}}}} @ [0,w^2)").unwrap();
        assert_eq!(
            ex3,
            Braced::from(Skand::cycle(vec![t("{1}"), t("{2}"), t("{3}")], o("w^2")).unwrap())
        );
        assert_eq!(brace_parse("{1,{1,{1,{…}}}} @ [0,ω)").unwrap(), one);
        let fin = Braced::from(Skand::cycle(vec![t("{a}"), t("{}")], o("3")).unwrap());
        let text = brace_render(&fin, 4);
        assert_eq!(text, "{a,{{a}}} @ [0, 3)");
        assert_eq!(brace_parse(&text).unwrap(), fin);
    }

    #[test]
    fn segment_form() {
        let text = "const({a}) for w; cycle(x,{y}) for w^2 @ [w, w^2)";
        let b = brace_parse(text).unwrap();
        assert_eq!(
            brace_render(&b, 4),
            "const({a}) for w; cycle(x,{y}) for w^2 @ [w, w^2)"
        );
        let err = brace_parse("const(a) for w @ [0, w*2)").unwrap_err();
        assert!(matches!(err, SkandError::Parse { .. }));
        assert!(matches!(
            brace_parse("{a,{b} @ [0,w)"),
            Err(SkandError::Parse { .. })
        ));
        let c = brace_parse("const({}) for w @ [0, w) coskand").unwrap();
        assert_eq!(brace_render(&c, 4), "const({}) for w @ [0, w) coskand");
    }

    #[test]
    fn coordinates() {
        let n = |a, b| Number::from_rational(rat(a, b));
        let s = Braced::from(Skand::new(
            o("1"),
            TransfiniteMap::constant(t("{}"), o("w")).unwrap(),
        ));
        assert_eq!(
            brace_coordinates(&s, 2),
            vec![(n(-1, 1), n(1, 1)), (n(-1, 2), n(1, 2))]
        );
        let s0 = Braced::from(Skand::trivial(o("w")).unwrap());
        assert_eq!(brace_coordinates(&s0, 1), vec![(n(-2, 1), n(2, 1))]);
        let c = Braced::from(Coskand::trivial(o("w")).unwrap());
        assert_eq!(
            brace_coordinates(&c, 2),
            vec![(n(-1, 2), n(1, 2)), (n(-1, 1), n(1, 1))]
        );
        let fin = Braced::from(Skand::trivial(o("2")).unwrap());
        assert_eq!(brace_coordinates(&fin, 5).len(), 2);
    }
}
