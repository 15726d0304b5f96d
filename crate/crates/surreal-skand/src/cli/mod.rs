//! Line-oriented calculator over every module of the crate.
//!
//! Each line is `verb arguments [flags]`:
//!
//! | verb | arguments |
//! |------|-----------|
//! | `eval`, `nf` | an expression, see [`expr`] |
//! | `cmp` | `expr , expr` |
//! | `ord` | `add|mul|natadd|natmul|sub|cmp a , b` or `classify a` |
//! | `gap` | `ordinal λ`, `harmonic λ`, `add|dyadic|geometric|scaled b ±`, `classify x` |
//! | `jumps` | `λ [interior b]` |
//! | `leftright` | `steps` |
//! | `skand` | `brace [at p | from p | period τ | == brace | encode | coords [n] | unfold NAME]` |
//! | `coskand` | `brace [at p | == brace | coords [n]]` |
//! | `solve` | `X = {x, X}`, `X = {a, {b, X}}`, `X = {z, Y}, Y = {a, Y}` |
//!
//! Flags `--json`, `--max-terms N` and `--depth N` may also appear inline.
//! Output is deterministic and ASCII (`w`, `eps[..]`); input also accepts
//! `ω` and `ε`.

pub mod expr;

use std::cmp::Ordering;
use std::io::{BufRead, Write};

use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::gaps::{self, GapLabel, SeqDescriptor, Sign};
use crate::ordinal::Ordinal;
use crate::skand::{self, Braced, Coskand, MirimanoffEquation, SetTerm, Skand};
use crate::surreal::{nf_cmp, real_limit_from_sequences};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub json: bool,
    pub max_terms: usize,
    pub depth: usize,
    pub strict: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            max_terms: 8,
            depth: 4,
            strict: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error at column {}: {msg}", pos + 1)]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// 1 for domain and i/o errors, 2 for parse errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }

    fn shifted(self, by: usize) -> CliError {
        match self {
            CliError::Parse { pos, msg } => CliError::Parse { pos: pos + by, msg },
            e => e,
        }
    }

    /// The message, with a caret under `line` for parse errors.
    pub fn render(&self, line: &str) -> String {
        match self {
            CliError::Parse { pos, .. } => {
                let col = line[..(*pos).min(line.len())].chars().count();
                format!("{self}\n  {line}\n  {}^", " ".repeat(col))
            }
            _ => self.to_string(),
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn skand_err(e: skand::SkandError) -> CliError {
    match e {
        skand::SkandError::Parse { pos, msg } => CliError::Parse { pos, msg },
        e => domain(e),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmp_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "LT",
        Ordering::Equal => "EQ",
        Ordering::Greater => "GT",
    }
}

/// A slice of the input line with its byte offset.
#[derive(Clone, Copy)]
struct Arg<'a> {
    text: &'a str,
    at: usize,
}

impl<'a> Arg<'a> {
    fn trim(self) -> Arg<'a> {
        let lead = self.text.len() - self.text.trim_start().len();
        Arg {
            text: self.text.trim(),
            at: self.at + lead,
        }
    }

    fn split_at(self, i: usize, skip: usize) -> (Arg<'a>, Arg<'a>) {
        (
            Arg {
                text: &self.text[..i],
                at: self.at,
            },
            Arg {
                text: &self.text[i + skip..],
                at: self.at + i + skip,
            },
        )
    }

    /// First whitespace-separated word and the rest.
    fn word(self) -> (&'a str, Arg<'a>) {
        let t = self.trim();
        let n = t.text.find(char::is_whitespace).unwrap_or(t.text.len());
        let (w, rest) = t.split_at(n, 0);
        (w.text, rest.trim())
    }

    fn err(&self, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            pos: self.at,
            msg: msg.into(),
        }
    }

    /// Splits at top-level occurrences of `sep`.
    fn split_top(self, sep: char) -> Vec<Arg<'a>> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut last = 0;
        for (i, c) in self.text.char_indices() {
            match c {
                '(' | '[' | '{' => depth += 1,
                ')' | ']' | '}' => depth -= 1,
                c if c == sep && depth == 0 => {
                    out.push(
                        Arg {
                            text: &self.text[last..i],
                            at: self.at + last,
                        }
                        .trim(),
                    );
                    last = i + c.len_utf8();
                }
                _ => {}
            }
        }
        out.push(
            Arg {
                text: &self.text[last..],
                at: self.at + last,
            }
            .trim(),
        );
        out
    }

    fn two(self, sep: char) -> Result<(Arg<'a>, Arg<'a>), CliError> {
        match self.split_top(sep).as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(self.err(format!("expected two arguments separated by '{sep}'"))),
        }
    }

    fn ordinal(self) -> Result<Ordinal, CliError> {
        let t = self.trim();
        t.text.parse::<Ordinal>().map_err(|e| match e {
            crate::ordinal::OrdinalError::Parse { pos, msg } => CliError::Parse {
                pos: t.at + pos,
                msg,
            },
            e => domain(e),
        })
    }

    fn number(self, opts: &Options) -> Result<expr::Value, CliError> {
        let t = self.trim();
        expr::evaluate(t.text, opts.max_terms).map_err(|e| e.shifted(t.at))
    }

    fn count(self) -> Result<usize, CliError> {
        let t = self.trim();
        t.text
            .parse()
            .map_err(|_| t.err("expected a non-negative integer"))
    }
}

/// Output of one command in both modes.
struct Out {
    text: String,
    json: Json,
}

impl Out {
    fn new(text: impl Into<String>, json: Json) -> Self {
        Out {
            text: text.into(),
            json,
        }
    }
}

/// Removes inline flags, keeping byte positions of everything else.
fn strip_flags(line: &str, opts: &mut Options) -> Result<String, CliError> {
    let mut out = line.to_string();
    let mut words: Vec<(usize, &str)> = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                words.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        words.push((s, &line[s..]));
    }
    let blank = |out: &mut String, at: usize, w: &str| {
        out.replace_range(at..at + w.len(), &" ".repeat(w.len()));
    };
    let mut i = 0;
    while i < words.len() {
        let (at, w) = words[i];
        match w {
            "--json" => opts.json = true,
            "--strict" => opts.strict = true,
            "--max-terms" | "--depth" => {
                let (vat, v) = *words.get(i + 1).ok_or(CliError::Parse {
                    pos: at,
                    msg: format!("{w} needs a value"),
                })?;
                let n: usize = v.parse().ok().filter(|n| *n > 0).ok_or(CliError::Parse {
                    pos: vat,
                    msg: "expected a positive integer".into(),
                })?;
                if w == "--depth" {
                    opts.depth = n;
                } else {
                    opts.max_terms = n;
                }
                blank(&mut out, vat, v);
                i += 1;
            }
            _ => {
                i += 1;
                continue;
            }
        }
        blank(&mut out, at, w);
        i += 1;
    }
    Ok(out)
}

/// Runs one command line and returns its output.
pub fn run_line(input: &str, opts: &Options) -> Result<String, CliError> {
    let mut opts = opts.clone();
    let line = strip_flags(input, &mut opts)?;
    let whole = Arg { text: &line, at: 0 };
    let (verb, args) = whole.word();
    let out = match verb {
        "eval" => eval(args, &opts, false)?,
        "nf" => eval(args, &opts, true)?,
        "cmp" => cmp(args, &opts)?,
        "ord" => ord(args)?,
        "gap" => gap(args, &opts)?,
        "jumps" => jumps(args, &opts)?,
        "leftright" => leftright(args)?,
        "skand" => skand_cmd(args, &opts)?,
        "coskand" => coskand_cmd(args, &opts)?,
        "solve" => solve(args, &opts)?,
        "" => return Err(whole.err("empty command")),
        v => return Err(whole.trim().err(format!("unknown verb '{v}'"))),
    };
    Ok(if opts.json {
        out.json.to_string()
    } else {
        out.text
    })
}

fn eval(args: Arg, opts: &Options, nf_only: bool) -> Result<Out, CliError> {
    let v = args.number(opts)?;
    let s = v.num.to_string();
    let text = if v.exact {
        s.clone()
    } else {
        format!("{s} (truncated)")
    };
    let mut j = json!({ "value": s, "exact": v.exact, "terms": v.num.to_json() });
    if !nf_only {
        j["class"] = json!(gaps::classify(&v.num).to_string());
    }
    Ok(Out::new(text, j))
}

fn cmp(args: Arg, opts: &Options) -> Result<Out, CliError> {
    let (a, b) = args.two(',')?;
    let (a, b) = (a.number(opts)?, b.number(opts)?);
    let c = cmp_name(nf_cmp(&a.num, &b.num));
    let exact = a.exact && b.exact;
    let text = if exact {
        c.to_string()
    } else {
        format!("{c} (on truncated values)")
    };
    Ok(Out::new(text, json!({ "cmp": c, "exact": exact })))
}

fn ord(args: Arg) -> Result<Out, CliError> {
    let (op, rest) = args.word();
    let show = |o: Ordinal| {
        Out::new(
            o.to_string(),
            json!({ "result": o.to_string(), "cnf": o.to_json() }),
        )
    };
    if op == "classify" {
        let a = rest.ordinal()?;
        let c = a.classify();
        let mut names = Vec::new();
        for (flag, name) in [
            (c.is_zero, "zero"),
            (c.is_successor, "successor"),
            (c.is_limit, "limit"),
            (c.is_additively_indecomposable, "additively indecomposable"),
            (c.is_main, "main"),
        ] {
            if flag {
                names.push(name);
            }
        }
        return Ok(Out::new(
            names.join(", "),
            serde_json::to_value(c).expect("plain struct"),
        ));
    }
    let (a, b) = rest.two(',')?;
    let (a, b) = (a.ordinal()?, b.ordinal()?);
    match op {
        "add" => Ok(show(a.add(&b))),
        "mul" => Ok(show(a.mul(&b))),
        "natadd" => Ok(show(a.nat_add(&b))),
        "natmul" => Ok(show(a.nat_mul(&b))),
        "sub" => Ok(show(a.sub_left(&b).map_err(domain)?)),
        "cmp" => {
            let c = cmp_name(a.cmp(&b));
            Ok(Out::new(c, json!({ "cmp": c })))
        }
        _ => Err(args.trim().err(format!("unknown ordinal operation '{op}'"))),
    }
}

fn label_out(g: &GapLabel) -> Out {
    let sign = match g.sign {
        Sign::Plus => "+",
        Sign::Minus => "-",
    };
    Out::new(
        g.to_string(),
        json!({ "sign": sign, "index": g.index.to_string() }),
    )
}

fn gap(args: Arg, opts: &Options) -> Result<Out, CliError> {
    let (kind, rest) = args.word();
    let exact_number = |a: Arg| -> Result<crate::surreal::Number, CliError> {
        let v = a.number(opts)?;
        if !v.exact {
            return Err(domain("sequence base must be exact"));
        }
        Ok(v.num)
    };
    let with_dir = |a: Arg| -> Result<(crate::surreal::Number, Sign), CliError> {
        let t = a.trim();
        let dir = match t.text.chars().last() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => {
                return Err(Arg {
                    text: "",
                    at: t.at + t.text.len(),
                }
                .err("expected a direction '+' or '-'"))
            }
        };
        let (base, _) = t.split_at(t.text.len() - 1, 0);
        Ok((exact_number(base)?, dir))
    };
    let desc = match kind {
        "classify" => {
            let v = rest.number(opts)?;
            let c = gaps::classify(&v.num);
            return Ok(Out::new(c.to_string(), json!({ "class": c.to_string() })));
        }
        "ordinal" => SeqDescriptor::OrdinalRamp(rest.ordinal()?),
        "harmonic" => SeqDescriptor::HarmonicRamp(rest.ordinal()?),
        "add" => {
            let (base, direction) = with_dir(rest)?;
            SeqDescriptor::AddRamp {
                base,
                direction,
                length: Ordinal::omega(),
            }
        }
        "dyadic" => {
            let (base, direction) = with_dir(rest)?;
            SeqDescriptor::DyadicRamp { base, direction }
        }
        "geometric" => {
            let (base, direction) = with_dir(rest)?;
            SeqDescriptor::GeometricRamp { base, direction }
        }
        "scaled" => {
            let (base, direction) = with_dir(rest)?;
            SeqDescriptor::ScaledHarmonic { base, direction }
        }
        _ => return Err(args.trim().err(format!("unknown sequence kind '{kind}'"))),
    };
    Ok(label_out(&gaps::gap_of(&desc).map_err(domain)?))
}

fn jumps(args: Arg, opts: &Options) -> Result<Out, CliError> {
    let t = args.trim();
    if let Some(i) = t.text.find(" interior ") {
        let (l, b) = t.split_at(i, " interior ".len());
        let lambda = l.ordinal()?;
        let b = b.number(opts)?;
        let inside = gaps::in_jump_interior(&b.num, &lambda).map_err(domain)?;
        let rep = gaps::is_band_representative(&b.num, &lambda).map_err(domain)?;
        let text = format!(
            "interior: {}\nband representative: {}",
            yes(inside),
            yes(rep)
        );
        return Ok(Out::new(
            text,
            json!({ "interior": inside, "band_representative": rep }),
        ));
    }
    let lambda = t.ordinal()?;
    let r = gaps::jump_report(&lambda).map_err(domain)?;
    let mut text = format!(
        "lambda: {}\nembeddable: {}\ntranslation invariant: {}\ntails of the same type: {}",
        r.lambda,
        yes(r.embeddable),
        yes(r.translation_invariant),
        yes(r.tails_same_type)
    );
    let census = match &r.census {
        Some(c) => {
            let mut m = serde_json::Map::new();
            for e in c {
                text.push_str(&format!("\njumps of size {}: {}", e.jump_size, e.count));
                m.insert(e.jump_size.to_string(), json!(e.count.to_string()));
            }
            Json::Object(m)
        }
        None => {
            text.push_str("\ncensus: infinitely many jump sizes");
            Json::Null
        }
    };
    let j = json!({
        "lambda": r.lambda.to_string(),
        "embeddable": r.embeddable,
        "translation_invariant": r.translation_invariant,
        "tails_same_type": r.tails_same_type,
        "census": census,
    });
    Ok(Out::new(text, j))
}

fn leftright(args: Arg) -> Result<Out, CliError> {
    let steps = args.count()?;
    let (l, r) = gaps::left_right_construct(steps);
    let (ll, rr) = gaps::left_right_construct(64);
    let limit = real_limit_from_sequences(ll, rr, 64).map_err(domain)?;
    let list = |v: &[crate::surreal::Dyadic]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>();
    let text = format!(
        "L: {}\nR: {}\nlimit: {limit}",
        list(&l).join(", "),
        list(&r).join(", ")
    );
    Ok(Out::new(
        text,
        json!({ "left": list(&l), "right": list(&r), "limit": limit.to_string() }),
    ))
}

/// Splits `brace @ [a, b) [coskand]` from whatever follows it.
fn split_braced(args: Arg) -> Result<(Arg, Arg), CliError> {
    let t = args.trim();
    let mut depth = 0i32;
    let mut at = None;
    for (i, c) in t.text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            '@' if depth == 0 => {
                at = Some(i);
                break;
            }
            _ => {}
        }
    }
    let at = at.ok_or_else(|| t.err("expected '@ [start, end)' after the brace expression"))?;
    let close = t.text[at..].find(')').map(|j| at + j + 1).ok_or_else(|| {
        Arg {
            text: "",
            at: t.at + at,
        }
        .err("unterminated interval")
    })?;
    let mut end = close;
    let after = &t.text[close..];
    let trimmed = after.trim_start();
    if trimmed.starts_with("coskand") {
        end = close + (after.len() - trimmed.len()) + "coskand".len();
    }
    let (b, rest) = t.split_at(end, 0);
    Ok((b, rest.trim()))
}

fn parse_braced(a: Arg) -> Result<Braced, CliError> {
    skand::brace_parse(a.text).map_err(|e| skand_err(e).shifted(a.at))
}

fn coords_out(b: &Braced, n: usize) -> Out {
    let pairs: Vec<(String, String)> = skand::brace_coordinates(b, n)
        .into_iter()
        .map(|(o, c)| (o.to_string(), c.to_string()))
        .collect();
    let text = pairs
        .iter()
        .map(|(o, c)| format!("({o}, {c})"))
        .collect::<Vec<_>>()
        .join("\n");
    Out::new(text, json!(pairs))
}

fn skand_cmd(args: Arg, opts: &Options) -> Result<Out, CliError> {
    let (b, rest) = split_braced(args)?;
    let s = match parse_braced(b)? {
        Braced::Skand(s) => s,
        Braced::Coskand(_) => return Err(b.err("this is a coskand; use the coskand verb")),
    };
    let render = |s: &Skand| skand::brace_render(&Braced::Skand(s.clone()), opts.depth);
    let (op, arg) = rest.word();
    match op {
        "" => {
            let p = skand::min_finite_period(&s);
            let (periodic, strict) = match p {
                Some(n) => {
                    let n = Ordinal::finite(n);
                    (
                        skand::is_periodic(&s, &n).expect("n > 0"),
                        skand::is_strictly_periodic(&s, &n).expect("n > 0"),
                    )
                }
                None => (false, false),
            };
            let refl = skand::is_reflexive(&s);
            let ss = skand::is_self_similar(&s);
            let period = p.map_or("none".to_string(), |n| n.to_string());
            let text = format!(
                "{}\nlength: {}\nreflexive: {}\nself-similar: {}\nmin finite period: {period}\nperiodic: {}\nstrictly periodic: {}",
                render(&s),
                s.length(),
                yes(refl),
                yes(ss),
                yes(periodic),
                yes(strict)
            );
            let j = json!({
                "skand": render(&s),
                "length": s.length().to_string(),
                "reflexive": refl,
                "self_similar": ss,
                "min_finite_period": p,
                "periodic": periodic,
                "strictly_periodic": strict,
            });
            Ok(Out::new(text, j))
        }
        "at" => {
            let v = s.value_at(&arg.ordinal()?).map_err(domain)?;
            Ok(Out::new(v.to_string(), json!({ "value": v.to_string() })))
        }
        "from" => {
            let r = s.restrict(&arg.ordinal()?).map_err(domain)?;
            Ok(Out::new(render(&r), json!({ "skand": render(&r) })))
        }
        "period" => {
            let tau = arg.ordinal()?;
            let w = skand::is_weakly_periodic(&s, &tau).map_err(domain)?;
            let p = skand::is_periodic(&s, &tau).map_err(domain)?;
            let st = skand::is_strictly_periodic(&s, &tau).map_err(domain)?;
            let text = format!(
                "weakly periodic: {}\nperiodic: {}\nstrictly periodic: {}",
                yes(w),
                yes(p),
                yes(st)
            );
            Ok(Out::new(
                text,
                json!({ "weakly_periodic": w, "periodic": p, "strictly_periodic": st }),
            ))
        }
        "==" => {
            let other = match parse_braced(split_braced(arg)?.0)? {
                Braced::Skand(o) => o,
                Braced::Coskand(_) => return Err(arg.err("cannot compare a skand with a coskand")),
            };
            let eq = skand::skand_equal(&s, &other);
            Ok(Out::new(eq.to_string(), json!({ "equal": eq })))
        }
        "encode" => {
            let code = skand::encode_skand(&s).to_string();
            Ok(Out::new(code.clone(), json!({ "code": code })))
        }
        "coords" => {
            let n = if arg.text.is_empty() {
                opts.depth
            } else {
                arg.count()?
            };
            Ok(coords_out(&Braced::Skand(s), n))
        }
        "unfold" => {
            let name = arg.text;
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(arg.err("expected a name for the skand"));
            }
            let t = skand::unfold_once(&s, name).ok_or_else(|| {
                domain("the skand is not reflexive, so it cannot name its own tail")
            })?;
            Ok(Out::new(
                format!("{name} = {t}"),
                json!({ "name": name, "set": t.to_string() }),
            ))
        }
        _ => Err(rest.err(format!("unknown skand operation '{op}'"))),
    }
}

fn coskand_cmd(args: Arg, opts: &Options) -> Result<Out, CliError> {
    let (b, rest) = split_braced(args)?;
    let c = match parse_braced(b)? {
        Braced::Coskand(c) => c,
        Braced::Skand(s) => Coskand::new(s.start().clone(), s.map().clone()),
    };
    let render = |c: &Coskand| skand::brace_render(&Braced::Coskand(c.clone()), opts.depth);
    let (op, arg) = rest.word();
    match op {
        "" => {
            let kind = match skand::coskand_kind(&c) {
                skand::CoskandKind::Individual => "individual",
                skand::CoskandKind::FoundedSet => "founded set",
            };
            let set = skand::coskand_to_setterm(&c).ok().map(|t| t.to_string());
            let mut text = format!("{}\nlength: {}\nkind: {kind}", render(&c), c.length());
            if let Some(s) = &set {
                text.push_str(&format!("\nset: {s}"));
            }
            let j = json!({ "coskand": render(&c), "length": c.length().to_string(), "kind": kind, "set": set });
            Ok(Out::new(text, j))
        }
        "at" => {
            let v = c.value_at(&arg.ordinal()?).map_err(domain)?;
            Ok(Out::new(v.to_string(), json!({ "value": v.to_string() })))
        }
        "==" => {
            let other = match parse_braced(split_braced(arg)?.0)? {
                Braced::Coskand(o) => o,
                Braced::Skand(s) => Coskand::new(s.start().clone(), s.map().clone()),
            };
            let eq = skand::coskand_equal(&c, &other);
            Ok(Out::new(eq.to_string(), json!({ "equal": eq })))
        }
        "coords" => {
            let n = if arg.text.is_empty() {
                opts.depth
            } else {
                arg.count()?
            };
            Ok(coords_out(&Braced::Coskand(c), n))
        }
        _ => Err(rest.err(format!("unknown coskand operation '{op}'"))),
    }
}

/// Element lists of the nesting levels of `t` down to the occurrence of
/// the atom `var`.
fn levels_to(t: &SetTerm, var: &str, a: Arg) -> Result<Vec<Vec<SetTerm>>, CliError> {
    let target = SetTerm::atom(var);
    let mentions = |x: &SetTerm| -> bool {
        fn go(x: &SetTerm, v: &SetTerm) -> bool {
            x == v || x.elements().is_some_and(|es| es.iter().any(|e| go(e, v)))
        }
        go(x, &target)
    };
    let mut out = Vec::new();
    let mut cur = t;
    loop {
        let elems = cur
            .elements()
            .ok_or_else(|| a.err(format!("right-hand side must be a set mentioning {var}")))?;
        let nested: Vec<&SetTerm> = elems.iter().filter(|e| mentions(e)).collect();
        let [next] = nested.as_slice() else {
            return Err(a.err(format!("each level must mention {var} exactly once")));
        };
        out.push(elems.iter().filter(|e| !mentions(e)).cloned().collect());
        if **next == target {
            return Ok(out);
        }
        cur = next;
    }
}

fn equation(a: Arg) -> Result<(String, SetTerm, Arg), CliError> {
    let (lhs, rhs) = a.two('=')?;
    let name = lhs.text.to_string();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(lhs.err("expected a variable name"));
    }
    let t: SetTerm = rhs.text.parse().map_err(|e| skand_err(e).shifted(rhs.at))?;
    Ok((name, t, rhs))
}

fn solve(args: Arg, opts: &Options) -> Result<Out, CliError> {
    let eqs = args.split_top(',');
    let (var, eq) = match eqs.as_slice() {
        [one] => {
            let (v, t, at) = equation(*one)?;
            let levels = levels_to(&t, &v, at)?;
            let eq = if levels.len() == 1 {
                MirimanoffEquation::Reflexive(levels.into_iter().next().expect("one level"))
            } else {
                MirimanoffEquation::Periodic(levels)
            };
            (v, eq)
        }
        [first, second] => {
            let (x, t1, at1) = equation(*first)?;
            let (y, t2, at2) = equation(*second)?;
            let prefix = levels_to(&t1, &y, at1)?;
            let cycle = levels_to(&t2, &y, at2)?;
            (x, MirimanoffEquation::Extraordinary { prefix, cycle })
        }
        _ => return Err(args.err("expected one equation, or two joined by ','")),
    };
    let s = skand::solve_mirimanoff(&eq);
    debug_assert!(skand::is_solution(&s, &eq));
    let r = skand::brace_render(&Braced::Skand(s.clone()), opts.depth);
    let mut text = format!("{var} = {r}");
    let unfolded = skand::unfold_once(&s, &var).map(|t| t.to_string());
    if let Some(u) = &unfolded {
        text.push_str(&format!("\n{var} = {u}"));
    }
    let kind = match eq {
        MirimanoffEquation::Reflexive(_) => "reflexive",
        MirimanoffEquation::Periodic(_) => "periodic",
        MirimanoffEquation::Extraordinary { .. } => "extraordinary",
    };
    Ok(Out::new(
        text,
        json!({ "variable": var, "kind": kind, "skand": r, "unfolded": unfolded }),
    ))
}

/// Runs every line of `input`, writing results to `out` and errors to
/// `err`. Blank lines and `#` comments are skipped. Returns the exit status:
/// the first failing line's code in strict mode, otherwise the largest code
/// seen.
pub fn run_lines(
    input: impl BufRead,
    out: &mut impl Write,
    err: &mut impl Write,
    opts: &Options,
    prompt: bool,
) -> i32 {
    let mut status = 0;
    if prompt {
        let _ = write!(out, "> ");
        let _ = out.flush();
    }
    for (n, line) in input.lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                let _ = writeln!(err, "{}", CliError::Io(e.to_string()));
                return 1;
            }
        };
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            match run_line(&line, opts) {
                Ok(s) => {
                    let _ = writeln!(out, "{s}");
                }
                Err(e) => {
                    let _ = writeln!(err, "line {}: {}", n + 1, e.render(&line));
                    status = status.max(e.exit_code());
                    if opts.strict {
                        return e.exit_code();
                    }
                }
            }
        }
        if prompt {
            let _ = write!(out, "> ");
            let _ = out.flush();
        }
    }
    status
}

/// Runs a script file; see [`run_lines`].
pub fn run_script(path: &str, opts: &Options) -> i32 {
    match std::fs::File::open(path) {
        Ok(f) => run_lines(
            std::io::BufReader::new(f),
            &mut std::io::stdout().lock(),
            &mut std::io::stderr().lock(),
            opts,
            false,
        ),
        Err(e) => {
            eprintln!("{}", CliError::Io(format!("{path}: {e}")));
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: &str) -> String {
        run_line(s, &Options::default()).unwrap()
    }

    #[test]
    fn numbers() {
        assert_eq!(run("nf (w+1)*(w-1)"), "w^2*1 + -1");
        assert_eq!(run("eval exp(w*eps[0])"), "eps[0]");
        assert_eq!(
            run("eval 1/(w+1) --max-terms 2"),
            "w^(-1)*1 + w^(-2)*-1 (truncated)"
        );
        assert_eq!(run("cmp exp(eps[0]), eps[0]"), "LT");
        let j: Json = serde_json::from_str(&run("eval ω^(1/2) --json")).unwrap();
        assert_eq!(j["value"], "w^(1/2)*1");
        assert_eq!(j["class"], "positive infinite");
    }

    #[test]
    fn ordinals_and_gaps() {
        assert_eq!(run("ord natadd w+1, w+1"), "w*2 + 2");
        assert_eq!(run("ord add 1, w"), "w");
        assert_eq!(run("ord sub w^2, w+3"), "w^2");
        assert_eq!(
            run("ord classify w^w"),
            "limit, additively indecomposable, main"
        );
        assert_eq!(run("gap ordinal w"), "+inf[w*1]");
        assert_eq!(run("gap add w -"), "+inf[w*1/2]");
        assert_eq!(run("gap dyadic 3 -"), "+inf[3 + w^(-1)*-1]");
        assert_eq!(run("gap classify -1/w"), "negative infinitesimal");
        assert_eq!(
            run("jumps w^2 --json"),
            r#"{"census":{"w":"w","w^2":"1"},"embeddable":true,"lambda":"w^2","tails_same_type":true,"translation_invariant":true}"#
        );
        assert_eq!(
            run("jumps w^2 interior w^(3/2)"),
            "interior: yes\nband representative: yes"
        );
        assert_eq!(
            run("leftright 3"),
            "L: 0, 1/2, 5/8\nR: 1, 3/4, 11/16\nlimit: 2/3"
        );
    }

    #[test]
    fn skands() {
        let out = run("skand {1,{2,{3,{1,{...}}}}} @ [0, w^2)");
        assert!(
            out.contains("min finite period: 3\nperiodic: yes\nstrictly periodic: yes"),
            "{out}"
        );
        assert_eq!(run("skand {1,{2,{3,{...}}}} @ [0, w^2) at w+4"), "{2}");
        assert_eq!(
            run("skand {1,{1,{...}}} @ [0, w) == {1,{...}} @ [5, w)"),
            "true"
        );
        assert_eq!(run("skand {1,{1,{...}}} @ [0, w) unfold Y"), "Y = {1,Y}");
        assert_eq!(
            run("skand {{...}} @ [1, w) coords 2"),
            "(-1, 1)\n(-1/2, 1/2)"
        );
        assert!(run("coskand {{{}}} @ [0, 3)").contains("kind: founded set\nset: {{{}}}"));
        assert!(run("coskand const({}) for w @ [0, w)").contains("kind: individual"));
        assert_eq!(run("solve X = {X}"), "X = {{{{{...}}}}} @ [0, w)\nX = {X}");
        assert_eq!(
            run("solve Y = {1, Y}"),
            "Y = {1,{1,{1,{1,{...}}}}} @ [0, w)\nY = {1,Y}"
        );
        assert_eq!(
            run("solve X = {a, {b, X}}"),
            "X = {a,{b,{a,{b,{...}}}}} @ [0, w)"
        );
        assert!(run("solve X = {z, Y}, Y = {a, {b, Y}}")
            .starts_with("X = const({z}) for 1; cycle({a},{b}) for w @ [0, w)"));
    }

    #[test]
    fn errors() {
        let e = run_line("eval 1 + * 2", &Options::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert_eq!(
            e.render("eval 1 + * 2"),
            "parse error at column 10: unexpected '*'\n  eval 1 + * 2\n           ^"
        );
        let e = run_line("eval ln(-w)", &Options::default()).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(matches!(
            run_line("frobnicate 1", &Options::default()),
            Err(CliError::Parse { pos: 0, .. })
        ));
        let e = run_line("skand {1,{...}} @ [0, w) at w", &Options::default()).unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn scripts() {
        let opts = Options::default();
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(
            run_lines("".as_bytes(), &mut out, &mut err, &opts, false),
            0
        );
        assert!(out.is_empty());
        let script = "# comment\nnf w+1\neval (\nnf 2\n";
        assert_eq!(
            run_lines(script.as_bytes(), &mut out, &mut err, &opts, false),
            2
        );
        assert_eq!(String::from_utf8(out.clone()).unwrap(), "w*1 + 1\n2\n");
        let strict = Options {
            strict: true,
            ..Options::default()
        };
        let mut out = Vec::new();
        assert_eq!(
            run_lines(script.as_bytes(), &mut out, &mut err, &strict, false),
            2
        );
        assert_eq!(String::from_utf8(out).unwrap(), "w*1 + 1\n");
        assert!(String::from_utf8(err).unwrap().contains("line 3:"));
    }
}
