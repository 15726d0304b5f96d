//! Dyadic rationals, the simplicity rule for finite games, birthdays, and
//! detection of the rational pinned between two converging sequences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, SurrealError};

/// A rational whose denominator is a power of two.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dyadic(Rational);

impl Dyadic {
    pub fn new(q: Rational) -> Result<Self, SurrealError> {
        let d = q.denom();
        if (d & (d - BigInt::one())).is_zero() {
            Ok(Dyadic(q))
        } else {
            Err(SurrealError::NotDyadic(q.to_string()))
        }
    }

    /// `m / 2^k`.
    pub fn from_parts(m: i64, k: u32) -> Self {
        Dyadic(Rational::new(BigInt::from(m), BigInt::one() << k))
    }

    pub fn integer(n: i64) -> Self {
        Dyadic(Rational::from_integer(BigInt::from(n)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// The `k` in the reduced form `m / 2^k`.
    pub fn exponent(&self) -> u64 {
        self.0.denom().bits() - 1
    }
}

impl From<Dyadic> for Rational {
    fn from(d: Dyadic) -> Self {
        d.0
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The simplest dyadic strictly between every member of `left` and every
/// member of `right`.
pub fn simplest_dyadic_game(left: &[Dyadic], right: &[Dyadic]) -> Result<Dyadic, SurrealError> {
    let lo = left.iter().max().map(|d| d.0.clone());
    let hi = right.iter().min().map(|d| d.0.clone());
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l >= h {
            return Err(SurrealError::IllFormedGame);
        }
    }
    Ok(Dyadic(simplest_between(lo.as_ref(), hi.as_ref())))
}

/// The simplest rational of the form `m/2^k` in the open interval `(lo, hi)`,
/// where a missing bound is unbounded.
pub(crate) fn simplest_between(lo: Option<&Rational>, hi: Option<&Rational>) -> Rational {
    let above = |x: &Rational| lo.is_none_or(|l| x > l);
    let below = |x: &Rational| hi.is_none_or(|h| x < h);
    let zero = Rational::zero();
    if above(&zero) && below(&zero) {
        return zero;
    }
    // The interval lies on one side of 0; walk integers outward first.
    if let Some(l) = lo.filter(|l| !l.is_negative()) {
        let n = Rational::from_integer(l.floor().to_integer() + 1);
        if below(&n) {
            return n;
        }
    }
    if let Some(h) = hi.filter(|h| !h.is_positive()) {
        let n = Rational::from_integer(h.ceil().to_integer() - 1);
        if above(&n) {
            return n;
        }
    }
    // Both bounds exist and no integer fits: least denominator wins.
    let (l, h) = (lo.expect("bounded"), hi.expect("bounded"));
    let mut k: u32 = 1;
    loop {
        let scale = Rational::from_integer(BigInt::one() << k);
        let m = (l * &scale).floor().to_integer() + 1;
        let cand = Rational::new(m, BigInt::one() << k);
        if &cand < h {
            return cand;
        }
        k += 1;
    }
}

/// Day on which a dyadic is born: `|n|` for integers, and
/// `⌊|d|⌋ + 1 + k` for `d = m/2^k` with `m` odd and `k ≥ 1`.
pub fn birthday(d: &Dyadic) -> u64 {
    let a = d.0.abs();
    let k = d.exponent();
    let whole: u64 = a
        .floor()
        .to_integer()
        .try_into()
        .expect("birthday fits in u64");
    if k == 0 {
        whole
    } else {
        whole + 1 + k
    }
}

/// The rational pinned by an increasing left sequence and a decreasing
/// right sequence.
///
/// At step `i`, with `r_i - l_i <= 2^-k`, the first `k` binary digits of
/// `l_i` approximate the lower binary expansion of the limit. Once that
/// digit string shows an eventually periodic tail repeated at least three
/// times, the implied rational is a candidate; it is accepted when it lies
/// inside every bracket seen so far and three consecutive steps agree on it.
pub fn real_limit_from_sequences<L, R>(
    left: L,
    right: R,
    max_iter: usize,
) -> Result<Rational, SurrealError>
where
    L: IntoIterator<Item = Dyadic>,
    R: IntoIterator<Item = Dyadic>,
{
    const STABLE: usize = 3;
    let mut seen: Vec<(Rational, Rational)> = Vec::new();
    let mut last: Option<(Rational, usize)> = None;
    for (l, r) in left.into_iter().zip(right).take(max_iter) {
        let (l, r) = (l.0, r.0);
        if l >= r {
            return Err(SurrealError::IllFormedGame);
        }
        seen.push((l.clone(), r.clone()));
        let (int_part, bits) = lower_digits(&l, &r);
        let cand = periodic_candidate(&int_part, &bits, &seen);
        last = match (cand, last) {
            (Some(c), Some((prev, n))) if c == prev => Some((c, n + 1)),
            (Some(c), _) => Some((c, 1)),
            (None, _) => None,
        };
        if let Some((c, n)) = &last {
            if *n >= STABLE && seen.iter().all(|(l, r)| l < c && c < r) {
                return Ok(c.clone());
            }
        }
    }
    Err(SurrealError::NoConvergenceDetected(max_iter))
}

/// Integer part and the first `k` fractional binary digits of `l`, where
/// `k` is the largest integer with `r - l <= 2^-k`.
fn lower_digits(l: &Rational, r: &Rational) -> (BigInt, Vec<u8>) {
    let width = r - l;
    let mut k: u32 = 0;
    while k < 4096 && &width * Rational::from_integer(BigInt::one() << (k + 1)) <= Rational::one() {
        k += 1;
    }
    let a = (l * Rational::from_integer(BigInt::one() << k))
        .floor()
        .to_integer();
    let (int_part, frac) = a.div_mod_floor(&(BigInt::one() << k));
    let bits = (0..k)
        .rev()
        .map(|i| if frac.bit(i as u64) { 1 } else { 0 })
        .collect();
    (int_part, bits)
}

fn periodic_candidate(
    int_part: &BigInt,
    bits: &[u8],
    seen: &[(Rational, Rational)],
) -> Option<Rational> {
    let n = bits.len();
    for total in 1..=n {
        for q in 1..=total {
            let p = total - q;
            if n < p + 3 * q {
                continue;
            }
            let cycle = &bits[p..p + q];
            if !bits[p..]
                .iter()
                .enumerate()
                .all(|(i, b)| *b == cycle[i % q])
            {
                continue;
            }
            let to_int = |bs: &[u8]| {
                bs.iter()
                    .fold(BigInt::zero(), |acc, b| (acc << 1) + BigInt::from(*b))
            };
            let pre = Rational::from_integer(to_int(&bits[..p]));
            let cyc = Rational::new(to_int(cycle), (BigInt::one() << q) - 1);
            let c = Rational::from_integer(int_part.clone())
                + (pre + cyc) / Rational::from_integer(BigInt::one() << p);
            if seen.iter().all(|(l, r)| *l < c && c < *r) {
                return Some(c);
            }
        }
    }
    None
}
