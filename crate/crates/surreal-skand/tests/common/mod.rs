//! Independent oracles and seeded generators shared by the integration
//! tests and the acceptance harness. Nothing here calls the library's
//! decision procedures; it only builds values and reads them back.

#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use surreal_skand::skand::{Pattern, SetTerm, Skand, TransfiniteMap};
use surreal_skand::surreal::{rat, Exponent};
use surreal_skand::{Number, Ordinal, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

pub fn t(s: &str) -> SetTerm {
    s.parse().unwrap()
}

pub fn num(n: i64, d: i64) -> Number {
    Number::from_rational(rat(n, d))
}

// ---------------------------------------------------------------------------
// Conway games

/// Games stored by index; options refer to earlier games.
#[derive(Default)]
pub struct Games {
    games: Vec<(Vec<usize>, Vec<usize>)>,
    memo: HashMap<(usize, usize), bool>,
}

impl Games {
    pub fn add(&mut self, left: Vec<usize>, right: Vec<usize>) -> usize {
        self.games.push((left, right));
        self.games.len() - 1
    }

    /// `x ≤ y` iff no `xᴸ ≥ y` and no `yᴿ ≤ x`.
    pub fn le(&mut self, x: usize, y: usize) -> bool {
        if let Some(&v) = self.memo.get(&(x, y)) {
            return v;
        }
        let (xl, _) = self.games[x].clone();
        let (_, yr) = self.games[y].clone();
        let v = !xl.iter().any(|&a| self.le(y, a)) && !yr.iter().any(|&b| self.le(b, x));
        self.memo.insert((x, y), v);
        v
    }

    pub fn eq(&mut self, x: usize, y: usize) -> bool {
        self.le(x, y) && self.le(y, x)
    }

    pub fn lt(&mut self, x: usize, y: usize) -> bool {
        self.le(x, y) && !self.le(y, x)
    }
}

/// Canonical games of every dyadic born by `day`, with the textbook value
/// of each: midpoints between neighbours, one beyond the extremes.
pub fn canonical_numbers(g: &mut Games, day: u32) -> Vec<(Rational, usize, u32)> {
    let zero = g.add(vec![], vec![]);
    let mut born = vec![(Rational::from_integer(0.into()), zero, 0u32)];
    for d in 1..=day {
        let mut sorted = born.clone();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let (lo, hi) = (sorted[0].clone(), sorted[sorted.len() - 1].clone());
        let mut new = vec![
            (
                &lo.0 - Rational::from_integer(1.into()),
                g.add(vec![], vec![lo.1]),
                d,
            ),
            (
                &hi.0 + Rational::from_integer(1.into()),
                g.add(vec![hi.1], vec![]),
                d,
            ),
        ];
        for w in sorted.windows(2) {
            let mid = (&w[0].0 + &w[1].0) / Rational::from_integer(2.into());
            new.push((mid, g.add(vec![w[0].1], vec![w[1].1]), d));
        }
        born.extend(new);
    }
    born
}

// ---------------------------------------------------------------------------
// Random numbers and ordinals

fn small_rat(r: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let n = r.gen_range(-4i64..=4);
        let d = *[1i64, 2, 3, 4].choose(r).unwrap();
        if !(nonzero && n == 0) {
            return rat(n, d);
        }
    }
}

/// A normal form with at most `terms` terms whose exponents nest at most
/// `depth` levels.
pub fn rand_number(r: &mut ChaCha8Rng, depth: u32, terms: usize) -> Number {
    let n = r.gen_range(0..=terms);
    Number::from_terms((0..n).map(|_| {
        let e = if depth > 0 && r.gen_bool(0.3) {
            rand_number(r, depth - 1, 2)
        } else {
            Number::from_rational(small_rat(r, false))
        };
        (Exponent::Num(e), small_rat(r, true))
    }))
}

/// A purely infinite normal form: every exponent positive.
pub fn rand_purely_infinite(r: &mut ChaCha8Rng, terms: usize) -> Number {
    let n = r.gen_range(1..=terms);
    Number::from_terms((0..n).map(|_| {
        let e = if r.gen_bool(0.25) {
            Number::omega().add(&Number::from_int(r.gen_range(-2..=2)))
        } else {
            num(r.gen_range(1..=8), *[1i64, 2, 4].choose(r).unwrap())
        };
        (Exponent::Num(e), small_rat(r, true))
    }))
}

pub fn ordinal_from(mut terms: Vec<(Ordinal, u64)>) -> Ordinal {
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out: Vec<(Ordinal, u64)> = Vec::new();
    for (e, c) in terms {
        if c == 0 {
            continue;
        }
        match out.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => out.push((e, c)),
        }
    }
    Ordinal::from_terms(out).unwrap()
}

/// `ω²·a + ω·b + f`.
pub fn poly(a: u64, b: u64, f: u64) -> Ordinal {
    ordinal_from(vec![
        (Ordinal::finite(2), a),
        (Ordinal::one(), b),
        (Ordinal::zero(), f),
    ])
}

pub fn rand_ordinal(r: &mut ChaCha8Rng, depth: u32) -> Ordinal {
    let n = r.gen_range(0..=3);
    ordinal_from(
        (0..n)
            .map(|_| {
                let e = if depth > 0 && r.gen_bool(0.3) {
                    rand_ordinal(r, depth - 1)
                } else {
                    Ordinal::finite(r.gen_range(0..4))
                };
                (e, r.gen_range(1..4))
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Skands as raw segment lists

/// A skand exactly as generated, before any canonicalization.
#[derive(Debug, Clone)]
pub struct RawSkand {
    pub start: Ordinal,
    pub segs: Vec<(Ordinal, Pattern)>,
}

impl RawSkand {
    pub fn build(&self) -> Skand {
        Skand::new(
            self.start.clone(),
            TransfiniteMap::new(self.segs.clone()).unwrap(),
        )
    }

    pub fn length(&self) -> Ordinal {
        self.segs
            .iter()
            .fold(Ordinal::zero(), |acc, (l, _)| acc.add(l))
    }

    pub fn end(&self) -> Ordinal {
        self.start.add(&self.length())
    }

    /// The component at absolute position `p`, read straight off the
    /// segment list: each segment indexes its pattern by the finite part of
    /// the offset inside it.
    pub fn at(&self, p: &Ordinal) -> Option<SetTerm> {
        let mut off = p.sub_left(&self.start).ok()?;
        for (len, pat) in &self.segs {
            if off < *len {
                let vs = pat.values();
                return Some(vs[(off.finite_part() % vs.len() as u64) as usize].clone());
            }
            off = off.sub_left(len).ok()?;
        }
        None
    }

    /// The same function described with some segments split in two.
    pub fn resplit(&self, r: &mut ChaCha8Rng) -> RawSkand {
        let mut segs = Vec::new();
        for (len, pat) in &self.segs {
            let single = len.terms().len() == 1;
            match pat {
                Pattern::Constant(_) if *len > Ordinal::one() && r.gen_bool(0.5) => {
                    segs.push((Ordinal::one(), pat.clone()));
                    segs.push((len.sub_left(&Ordinal::one()).unwrap(), pat.clone()));
                }
                Pattern::Cycle(_)
                    if single && len.terms()[0].1 > 1 && !len.is_finite() && r.gen_bool(0.5) =>
                {
                    let (e, c) = len.terms()[0].clone();
                    segs.push((Ordinal::omega_pow(e.clone()), pat.clone()));
                    segs.push((Ordinal::monomial(e, c - 1), pat.clone()));
                }
                Pattern::Cycle(vs) if r.gen_bool(0.3) => {
                    let doubled = vs.iter().chain(vs.iter()).cloned().collect();
                    segs.push((len.clone(), Pattern::cycle(doubled).unwrap()));
                }
                _ => segs.push((len.clone(), pat.clone())),
            }
        }
        RawSkand {
            start: self.start.clone(),
            segs,
        }
    }
}

const ALPHABET: [&str; 4] = ["{}", "{a}", "{b}", "{{}}"];

fn rand_value(r: &mut ChaCha8Rng) -> SetTerm {
    t(ALPHABET.choose(r).unwrap())
}

fn rand_pattern(r: &mut ChaCha8Rng) -> Pattern {
    if r.gen_bool(0.35) {
        Pattern::Constant(rand_value(r))
    } else {
        let n = r.gen_range(2..=3);
        Pattern::cycle((0..n).map(|_| rand_value(r)).collect()).unwrap()
    }
}

fn rand_length(r: &mut ChaCha8Rng) -> Ordinal {
    match r.gen_range(0..4) {
        0 => Ordinal::finite(r.gen_range(1..=3)),
        1 => poly(0, r.gen_range(1..=2), r.gen_range(0..=2)),
        2 => poly(0, r.gen_range(1..=3), 0),
        _ => poly(r.gen_range(1..=2), r.gen_range(0..=1), 0),
    }
}

/// A random skand of length at most `ω³`. A third are single-pattern
/// skands over `ω^k·c`, which is where the periodicity predicates hold.
pub fn rand_raw_skand(r: &mut ChaCha8Rng) -> RawSkand {
    let start = [o("0"), o("1"), o("3"), o("w"), o("w+2"), o("w^2")]
        .choose(r)
        .unwrap()
        .clone();
    let segs = match r.gen_range(0..6) {
        0 | 1 => {
            let k = r.gen_range(1..=2);
            let c = *[1u64, 1, 2, 3].choose(r).unwrap();
            vec![(Ordinal::monomial(Ordinal::finite(k), c), rand_pattern(r))]
        }
        2 => {
            let mut v: Vec<_> = (0..r.gen_range(1..=2))
                .map(|_| (Ordinal::one(), Pattern::Constant(rand_value(r))))
                .collect();
            v.push((poly(0, r.gen_range(1..=3), 0), rand_pattern(r)));
            v
        }
        _ => (0..r.gen_range(1..=4))
            .map(|_| (rand_length(r), rand_pattern(r)))
            .collect(),
    };
    RawSkand { start, segs }
}

// ---------------------------------------------------------------------------
// Literal definitional checks on a raw skand

/// Offsets `ω²·a + ω·b + f < bound` with `a, b ≤ coef` and `f ≤ fin`, plus
/// landmarks taken from the Cantor form of `bound` itself (every partial
/// sum, followed by up to `fin` more positions), so that tails are sampled.
pub fn grid(bound: &Ordinal, coef: u64, fin: u64) -> Vec<Ordinal> {
    let mut out = Vec::new();
    for a in 0..=coef {
        for b in 0..=coef {
            for f in 0..=fin {
                out.push(poly(a, b, f));
            }
        }
    }
    let mut head = Ordinal::zero();
    for (e, c) in bound.terms() {
        for k in 0..=*c {
            let base = head.add(&Ordinal::monomial(e.clone(), k));
            out.extend((0..=fin).map(|f| base.add(&Ordinal::finite(f))));
        }
        head = head.add(&Ordinal::monomial(e.clone(), *c));
    }
    out.retain(|x| x < bound);
    out.sort();
    out.dedup();
    out
}

/// A positive number commensurate with 1: a positive rational plus an
/// infinitesimal.
pub fn rand_unit(r: &mut ChaCha8Rng) -> Number {
    let n = r.gen_range(0..=2);
    num(r.gen_range(1..=9), r.gen_range(1..=4)).add(&Number::from_terms((0..n).map(|_| {
        (
            Exponent::Num(num(-r.gen_range(1..=6), *[1i64, 2, 3].choose(r).unwrap())),
            small_rat(r, true),
        )
    })))
}

type GridKey = (Ordinal, u64, u64);

/// Definitions checked by sampling positions of the raw description: a
/// coarse grid, plus positions just after every raw segment boundary.
pub struct Literal<'a> {
    pub raw: &'a RawSkand,
    end: Ordinal,
    boundaries: Vec<Ordinal>,
    near: Vec<Ordinal>,
    grids: RefCell<HashMap<GridKey, Rc<Vec<Ordinal>>>>,
    values: RefCell<HashMap<Ordinal, Option<SetTerm>>>,
    tails: RefCell<HashMap<(Ordinal, Ordinal), bool>>,
}

impl<'a> Literal<'a> {
    pub fn new(raw: &'a RawSkand) -> Self {
        let mut at = raw.start.clone();
        let mut boundaries = vec![at.clone()];
        for (len, _) in &raw.segs {
            at = at.add(len);
            boundaries.push(at.clone());
        }
        // Also the start of the ω-block holding each boundary.
        let limits: Vec<Ordinal> = boundaries
            .iter()
            .map(|b| {
                ordinal_from(
                    b.terms()
                        .iter()
                        .filter(|(e, _)| !e.is_zero())
                        .cloned()
                        .collect(),
                )
            })
            .collect();
        boundaries.extend(limits);
        boundaries.sort();
        boundaries.dedup();
        Literal {
            end: raw.end(),
            raw,
            boundaries,
            near: grid(&o("w*2"), 0, 4),
            grids: RefCell::default(),
            values: RefCell::default(),
            tails: RefCell::default(),
        }
    }

    fn grid(&self, bound: &Ordinal, coef: u64, fin: u64) -> Rc<Vec<Ordinal>> {
        let key = (bound.clone(), coef, fin);
        self.grids
            .borrow_mut()
            .entry(key)
            .or_insert_with(|| Rc::new(grid(bound, coef, fin)))
            .clone()
    }

    fn at(&self, p: &Ordinal) -> Option<SetTerm> {
        self.values
            .borrow_mut()
            .entry(p.clone())
            .or_insert_with(|| self.raw.at(p))
            .clone()
    }

    /// Offsets below `bound` to sample from each of the positions `from`;
    /// may repeat.
    fn offsets(&self, from: &[&Ordinal], bound: &Ordinal, coef: u64, fin: u64) -> Vec<Ordinal> {
        let mut out = self.grid(bound, coef, fin).to_vec();
        for p in from {
            for b in &self.boundaries {
                if let Ok(rel) = b.sub_left(p) {
                    out.extend(self.near.iter().map(|d| rel.add(d)).filter(|x| x < bound));
                }
            }
        }
        out
    }

    fn len_from(&self, p: &Ordinal) -> Option<Ordinal> {
        (*p < self.end).then(|| self.end.sub_left(p).unwrap())
    }

    /// `X|[p, α) = X|[q, α)` on sampled offsets.
    pub fn tails_equal(&self, p: &Ordinal, q: &Ordinal) -> bool {
        let key = (p.clone(), q.clone());
        if let Some(&v) = self.tails.borrow().get(&key) {
            return v;
        }
        let v = self.tails_equal_uncached(p, q);
        self.tails.borrow_mut().insert(key, v);
        v
    }

    fn tails_equal_uncached(&self, p: &Ordinal, q: &Ordinal) -> bool {
        let (Some(lp), Some(lq)) = (self.len_from(p), self.len_from(q)) else {
            return false;
        };
        lp == lq
            && self
                .offsets(&[p, q], &lp, 2, 5)
                .iter()
                .all(|d| self.at(&p.add(d)) == self.at(&q.add(d)))
    }

    pub fn reflexive(&self) -> bool {
        self.tails_equal(&self.raw.start, &self.raw.start.succ())
    }

    pub fn self_similar(&self) -> bool {
        let len = self.raw.length();
        !len.is_finite()
            && self
                .offsets(&[&self.raw.start], &len, 3, 7)
                .iter()
                .filter(|d| !d.is_zero())
                .all(|d| self.tails_equal(&self.raw.start, &self.raw.start.add(d)))
    }

    fn span(tau: &Ordinal) -> Ordinal {
        Ordinal::omega_pow(tau.leading_exponent().unwrap().succ())
    }

    fn weakly_from(&self, a0: &Ordinal, tau: &Ordinal) -> bool {
        let span = Self::span(tau);
        self.len_from(a0).is_some_and(|l| l >= span)
            && self.offsets(&[a0], &span, 3, 7).iter().all(|d| {
                let a = a0.add(d);
                let b = a.nat_add(tau);
                b < self.end && self.tails_equal(&a, &b)
            })
    }

    pub fn weakly(&self, tau: &Ordinal) -> bool {
        self.weakly_from(&self.raw.start, tau)
    }

    /// Weakly periodic from every sampled position. Position 0 is always
    /// sampled, so this implies [`Literal::weakly`].
    pub fn periodic(&self, tau: &Ordinal) -> bool {
        self.offsets(&[&self.raw.start], &self.raw.length(), 2, 3)
            .iter()
            .all(|d| self.weakly_from(&self.raw.start.add(d), tau))
    }

    /// The extra condition of strict periodicity, to be combined with
    /// [`Literal::periodic`].
    pub fn strict_tails(&self, tau: &Ordinal) -> bool {
        let span = Self::span(tau);
        grid(&self.raw.length(), 3, 4)
            .iter()
            .filter(|k| !k.is_zero())
            .all(|k| {
                let l = self.raw.start.add(&span.mul(k));
                l >= self.end || self.tails_equal(&self.raw.start, &l)
            })
    }
}

/// `α + α′ < λ` for all sampled `α, α′ < λ`.
pub fn sums_stay_below(lambda: &Ordinal) -> bool {
    let below = grid(lambda, 4, 2);
    below
        .iter()
        .all(|a| below.iter().all(|b| a.add(b) < *lambda))
}

// ---------------------------------------------------------------------------
// Proptest strategies

pub mod arb {
    use proptest::prelude::*;

    use super::{ordinal_from, rng, RawSkand};
    use surreal_skand::surreal::{rat, Exponent};
    use surreal_skand::{Number, Ordinal, Rational};

    /// Ordinals with Cantor exponents nested up to three levels.
    pub fn ordinal() -> impl Strategy<Value = Ordinal> {
        let leaf = (0u64..5).prop_map(Ordinal::finite);
        leaf.prop_recursive(3, 24, 4, |inner| {
            prop::collection::vec((inner, 1u64..4), 0..4).prop_map(ordinal_from)
        })
    }

    pub fn rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        rational().prop_filter("nonzero", |r| *r != rat(0, 1))
    }

    /// Normal forms with at most three terms and exponents nested at most
    /// two levels.
    pub fn number() -> impl Strategy<Value = Number> {
        let leaf = rational().prop_map(Number::from_rational);
        leaf.prop_recursive(2, 12, 3, |inner| {
            prop::collection::vec((inner, nonzero_rational()), 0..=3).prop_map(|ts| {
                Number::from_terms(ts.into_iter().map(|(e, r)| (Exponent::Num(e), r)))
            })
        })
    }

    /// Purely infinite normal forms with at most two terms.
    pub fn purely_infinite() -> impl Strategy<Value = Number> {
        let exponent = prop_oneof![
            (1i64..=8, 1i64..=4).prop_map(|(n, d)| Number::from_rational(rat(n, d))),
            (-2i64..=2).prop_map(|k| Number::omega().add(&Number::from_int(k))),
        ];
        prop::collection::vec((exponent, nonzero_rational()), 1..=2)
            .prop_map(|ts| Number::from_terms(ts.into_iter().map(|(e, r)| (Exponent::Num(e), r))))
    }

    /// Random skand descriptions; shrinking is by seed only.
    pub fn raw_skand() -> impl Strategy<Value = RawSkand> {
        any::<u64>().prop_map(|seed| super::rand_raw_skand(&mut rng(seed)))
    }
}
