//! Finitely described maps from an ordinal interval `[0, L)` to set terms.
//!
//! A [`TransfiniteMap`] is a list of segments, each a length and a
//! [`Pattern`]. Inside a segment the value at offset `ξ + m` (`ξ` zero or a
//! limit, `m` finite) depends only on `m`, so the cycle restarts at every
//! limit. Internally every map has a block form: position `ω·ζ + m` lies in
//! block `ζ`, each block is an eventually periodic ω-sequence, and blocks are
//! grouped into runs of equal blocks. Maps are stored in the unique segment
//! list rebuilt from that block form, so derived equality is equality of
//! functions.

use serde::Serialize;

use super::{SetTerm, SkandError};
use crate::ordinal::Ordinal;

/// Values repeated along a segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Pattern {
    Constant(SetTerm),
    Cycle(Vec<SetTerm>),
}

impl Pattern {
    pub fn constant(v: SetTerm) -> Self {
        Pattern::Constant(v)
    }

    /// A cycle reduced to its primitive root; a one-value cycle is a constant.
    pub fn cycle(values: Vec<SetTerm>) -> Result<Self, SkandError> {
        if values.is_empty() {
            return Err(SkandError::EmptyCycle);
        }
        Ok(Pattern::from_values(primitive(values)))
    }

    fn from_values(mut v: Vec<SetTerm>) -> Self {
        if v.len() == 1 {
            Pattern::Constant(v.pop().expect("one value"))
        } else {
            Pattern::Cycle(v)
        }
    }

    pub fn values(&self) -> &[SetTerm] {
        match self {
            Pattern::Constant(v) => std::slice::from_ref(v),
            Pattern::Cycle(v) => v,
        }
    }

    /// Value at a finite offset from the start of the current ω-block.
    pub fn at(&self, m: u64) -> &SetTerm {
        let v = self.values();
        &v[(m % v.len() as u64) as usize]
    }

    fn normalized(&self) -> Pattern {
        Pattern::from_values(primitive(self.values().to_vec()))
    }
}

/// Shortest `p` dividing `len` with `v` being `p`-periodic.
fn primitive(mut v: Vec<SetTerm>) -> Vec<SetTerm> {
    let n = v.len();
    let p = (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| v[i] == v[i - p]))
        .expect("p = n always works");
    v.truncate(p);
    v
}

/// An eventually periodic ω-sequence: `prefix` then `cycle` forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Block {
    pub prefix: Vec<SetTerm>,
    pub cycle: Vec<SetTerm>,
}

impl Block {
    fn new(prefix: Vec<SetTerm>, cycle: Vec<SetTerm>) -> Self {
        let mut b = Block {
            prefix,
            cycle: primitive(cycle),
        };
        // Fold trailing prefix values that already belong to the cycle.
        while b
            .prefix
            .last()
            .is_some_and(|x| x == b.cycle.last().expect("nonempty"))
        {
            b.prefix.pop();
            b.cycle.rotate_right(1);
        }
        b
    }

    pub fn pure(&self) -> bool {
        self.prefix.is_empty()
    }

    /// The block with its first `k` values removed.
    pub fn drop_front(&self, k: u64) -> Block {
        let p = self.prefix.len() as u64;
        if k <= p {
            Block::new(self.prefix[k as usize..].to_vec(), self.cycle.clone())
        } else {
            let mut c = self.cycle.clone();
            let r = ((k - p) % c.len() as u64) as usize;
            c.rotate_left(r);
            Block::new(Vec::new(), c)
        }
    }
}

/// Runs of equal blocks (counts are ordinals, adjacent runs differ) and the
/// final partial block.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct BlockForm {
    pub runs: Vec<(Ordinal, Block)>,
    pub tail: Vec<SetTerm>,
}

impl BlockForm {
    fn push_run(&mut self, count: Ordinal, block: Block) {
        if count.is_zero() {
            return;
        }
        if let Some((c, b)) = self.runs.last_mut() {
            if *b == block {
                *c = c.add(&count);
                return;
            }
        }
        self.runs.push((count, block));
    }

    fn from_segments(segments: &[(Ordinal, Pattern)]) -> BlockForm {
        let mut bf = BlockForm::default();
        let mut partial: Vec<SetTerm> = Vec::new();
        for (len, pat) in segments {
            let (c, m) = len.div_omega();
            if c.is_zero() {
                partial.extend((0..m).map(|i| pat.at(i).clone()));
                continue;
            }
            let cyc = pat.values().to_vec();
            bf.push_run(
                Ordinal::one(),
                Block::new(std::mem::take(&mut partial), cyc.clone()),
            );
            let rest = c.sub_left(&Ordinal::one()).expect("c >= 1");
            bf.push_run(rest, Block::new(Vec::new(), cyc));
            partial = (0..m).map(|i| pat.at(i).clone()).collect();
        }
        bf.tail = partial;
        bf
    }

    fn to_segments(&self) -> Vec<(Ordinal, Pattern)> {
        let mut segs: Vec<(Ordinal, Pattern)> = Vec::new();
        let mut push = |len: Ordinal, pat: Pattern| {
            if let Some((l, p)) = segs.last_mut() {
                let mergeable = match (&*p, &pat) {
                    (Pattern::Constant(a), Pattern::Constant(b)) => a == b,
                    // A cycle may continue only across a limit boundary.
                    (Pattern::Cycle(a), Pattern::Cycle(b)) => a == b && l.finite_part() == 0,
                    _ => false,
                };
                if mergeable {
                    *l = l.add(&len);
                    return;
                }
            }
            segs.push((len, pat));
        };
        for (count, block) in &self.runs {
            let pat = Pattern::from_values(block.cycle.clone());
            if block.pure() {
                push(count.omega_times(), pat);
            } else {
                let n = count
                    .as_finite()
                    .expect("blocks with a prefix come in finite runs");
                for _ in 0..n {
                    for v in &block.prefix {
                        push(Ordinal::one(), Pattern::Constant(v.clone()));
                    }
                    push(Ordinal::omega(), pat.clone());
                }
            }
        }
        for v in &self.tail {
            push(Ordinal::one(), Pattern::Constant(v.clone()));
        }
        segs
    }

    /// Drops the first `ω·q + m` positions.
    fn drop_front(&self, q: &Ordinal, m: u64) -> BlockForm {
        let mut out = BlockForm::default();
        let mut z = q.clone();
        let mut runs = self.runs.iter();
        for (c, b) in runs.by_ref() {
            if z < *c {
                // Block z of this run is entered at offset m.
                let remaining = c.sub_left(&z).expect("z < c");
                out.push_run(Ordinal::one(), b.drop_front(m));
                out.push_run(
                    remaining.sub_left(&Ordinal::one()).expect("remaining >= 1"),
                    b.clone(),
                );
                for (c, b) in runs {
                    out.push_run(c.clone(), b.clone());
                }
                out.tail = self.tail.clone();
                return out;
            }
            z = z.sub_left(c).expect("z >= c");
        }
        debug_assert!(z.is_zero(), "position beyond the full blocks");
        out.tail = self.tail[(m as usize).min(self.tail.len())..].to_vec();
        out
    }
}

/// A canonical segment list; see the module docs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TransfiniteMap {
    segments: Vec<(Ordinal, Pattern)>,
}

impl TransfiniteMap {
    pub fn new(segments: Vec<(Ordinal, Pattern)>) -> Result<Self, SkandError> {
        let segments: Vec<_> = segments
            .into_iter()
            .filter(|(l, _)| !l.is_zero())
            .map(|(l, p)| (l, p.normalized()))
            .collect();
        if segments.is_empty() {
            return Err(SkandError::EmptyClutchRegion);
        }
        if segments.iter().any(|(_, p)| p.values().is_empty()) {
            return Err(SkandError::EmptyCycle);
        }
        Ok(Self::from_blocks(&BlockForm::from_segments(&segments)))
    }

    pub fn constant(v: SetTerm, length: Ordinal) -> Result<Self, SkandError> {
        TransfiniteMap::new(vec![(length, Pattern::Constant(v))])
    }

    pub(crate) fn from_blocks(bf: &BlockForm) -> Self {
        TransfiniteMap {
            segments: bf.to_segments(),
        }
    }

    pub fn segments(&self) -> &[(Ordinal, Pattern)] {
        &self.segments
    }

    pub fn length(&self) -> Ordinal {
        self.segments
            .iter()
            .fold(Ordinal::zero(), |acc, (l, _)| acc.add(l))
    }

    pub(crate) fn blocks(&self) -> BlockForm {
        BlockForm::from_segments(&self.segments)
    }

    /// Value at `offset`, or `None` past the end.
    pub fn value_at(&self, offset: &Ordinal) -> Option<&SetTerm> {
        let mut rho = offset.clone();
        for (len, pat) in &self.segments {
            if rho < *len {
                return Some(pat.at(rho.finite_part()));
            }
            rho = rho.sub_left(len).expect("rho >= len");
        }
        None
    }

    /// The map on `[offset, L)`, re-indexed from zero. `None` unless
    /// `offset < L`.
    pub fn drop_front(&self, offset: &Ordinal) -> Option<TransfiniteMap> {
        if *offset >= self.length() {
            return None;
        }
        let (q, m) = offset.div_omega();
        Some(Self::from_blocks(&self.blocks().drop_front(&q, m)))
    }

    /// The map on `[0, len)`. `None` unless `0 < len <= L`.
    pub fn take_front(&self, len: &Ordinal) -> Option<TransfiniteMap> {
        if len.is_zero() || *len > self.length() {
            return None;
        }
        let mut out = Vec::new();
        let mut left = len.clone();
        for (l, p) in &self.segments {
            if left.is_zero() {
                break;
            }
            if *l <= left {
                left = left.sub_left(l).expect("l <= left");
                out.push((l.clone(), p.clone()));
            } else {
                out.push((left.clone(), p.clone()));
                left = Ordinal::zero();
            }
        }
        TransfiniteMap::new(out).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }
    fn a(s: &str) -> SetTerm {
        SetTerm::atom(s)
    }
    fn cyc(v: &[&str]) -> Pattern {
        Pattern::cycle(v.iter().map(|s| a(s)).collect()).unwrap()
    }

    #[test]
    fn patterns_reduce() {
        assert_eq!(cyc(&["x", "x"]), Pattern::Constant(a("x")));
        assert_eq!(cyc(&["x", "y", "x", "y"]), cyc(&["x", "y"]));
        assert_eq!(Pattern::cycle(vec![]), Err(SkandError::EmptyCycle));
    }

    #[test]
    fn canonical_segments() {
        let m = TransfiniteMap::new(vec![
            (o("w"), Pattern::Constant(a("x"))),
            (o("3"), Pattern::Constant(a("x"))),
        ])
        .unwrap();
        assert_eq!(m.segments(), &[(o("w+3"), Pattern::Constant(a("x")))]);
        // A finite prefix matching the cycle's rotation is absorbed.
        let m1 = TransfiniteMap::new(vec![
            (o("1"), Pattern::Constant(a("y"))),
            (o("w"), cyc(&["x", "y"])),
        ])
        .unwrap();
        let m2 = TransfiniteMap::new(vec![(o("w"), cyc(&["y", "x"]))]).unwrap();
        assert_eq!(m1, m2);
        // Cycles glue across limits but not across a finite offset.
        let m = TransfiniteMap::new(vec![
            (o("w"), cyc(&["x", "y"])),
            (o("w^2"), cyc(&["x", "y"])),
        ])
        .unwrap();
        assert_eq!(m.segments(), &[(o("w^2"), cyc(&["x", "y"]))]);
        let m =
            TransfiniteMap::new(vec![(o("1"), cyc(&["z"])), (o("w*2"), cyc(&["x", "y"]))]).unwrap();
        assert_eq!(m.length(), o("w*2"));
        assert_eq!(m.segments().len(), 2);
    }

    #[test]
    fn values_and_drops() {
        let m = TransfiniteMap::new(vec![(o("w^2"), cyc(&["1", "2", "3"]))]).unwrap();
        assert_eq!(m.value_at(&o("w+4")), Some(&a("2")));
        assert_eq!(m.value_at(&o("w^2")), None);
        assert_eq!(m.drop_front(&o("w")).unwrap(), m);
        let d = m.drop_front(&o("2")).unwrap();
        assert_eq!(d.value_at(&o("0")), Some(&a("3")));
        assert_eq!(d.value_at(&o("1")), Some(&a("1")));
        assert_eq!(d.length(), o("w^2"));
        assert_eq!(m.take_front(&o("w*2+1")).unwrap().length(), o("w*2+1"));
    }
}
